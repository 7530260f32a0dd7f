"""Exact packing and scheduling of cuboid items in space-time.

Items are cuboids that must stay in a cuboid container for a continuous bake
time; they may be moved or rotated whenever the set of items inside changes.
The library decides packing feasibility exactly, builds the earliest-start
schedule for a fixed order, and minimises makespan over all orders.
"""

from .geometry import (
    Box,
    Container,
    Dims3,
    Layout,
    Placement,
    format_scalar,
    is_valid,
    oriented_extents,
    pair_overlap_volume,
    potential_energy,
    protrusion_volume,
    to_scalar,
    total_overlap,
)
from .optimizer import Instance, SolveResult, lower_bound, permutation_stream, solve
from .packer import (
    ItemCannotFit,
    PackItem,
    axis_candidates,
    normalize_layout,
    orientation_classes,
    pack_decision,
    pack_with_orientations,
)
from .scheduler import (
    BakeItem,
    Beat,
    Schedule,
    ValidationReport,
    greedy_schedule,
    makespan_of,
    max_prefix_fit,
    validate_schedule,
)

__all__ = [
    "BakeItem", "Beat", "Box", "Container", "Dims3", "Instance", "ItemCannotFit",
    "Layout", "PackItem", "Placement", "Schedule", "SolveResult", "ValidationReport",
    "axis_candidates", "format_scalar", "greedy_schedule", "is_valid", "lower_bound",
    "makespan_of", "max_prefix_fit", "normalize_layout", "orientation_classes",
    "oriented_extents", "pack_decision", "pack_with_orientations", "pair_overlap_volume",
    "permutation_stream", "potential_energy", "protrusion_volume", "solve", "to_scalar",
    "total_overlap", "validate_schedule",
]
