"""Exact cuboid packing decision procedure.

For a fixed orientation of every item, some feasible layout (if any exists)
has every item pushed into a lower-left-near corner, so each coordinate is a
sum of other items' extents along that axis. Enumerating those subset sums
gives a finite candidate grid per item and axis; a depth-first search over the
grid is a complete decision procedure. :func:`pack_decision` wraps that search
in a loop over the distinct orientations of every item.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Mapping, Sequence

from .geometry import (
    AXES,
    ORIENTATIONS,
    Box,
    Container,
    Dims3,
    Layout,
    Placement,
    boxes_intersect,
    is_valid,
    oriented_extents,
    potential_energy,
)

WARN_ITEM_COUNT = 8


class ItemCannotFit(ValueError):
    """An item exceeds the container in every orientation considered."""

    def __init__(self, item_id: str, detail: str = ""):
        self.item_id = item_id
        msg = f"item {item_id} cannot fit in the container"
        super().__init__(f"{msg}: {detail}" if detail else msg)


@dataclass(frozen=True)
class PackItem:
    id: str
    dims: Dims3


def orientation_classes(d: Dims3) -> list[int]:
    """One orientation code per distinct extent triple, lowest code first."""
    seen = set()
    codes = []
    for code in sorted(ORIENTATIONS):
        ext = oriented_extents(d, code)
        if ext not in seen:
            seen.add(ext)
            codes.append(code)
    return codes


def fits(d: Dims3, orient: int, c: Container) -> bool:
    return all(e <= s for e, s in zip(oriented_extents(d, orient), c.as_tuple()))


def subset_sums(values: Iterable[Fraction]) -> set[Fraction]:
    sums = {Fraction(0)}
    for v in values:
        sums |= {s + v for s in sums}
    return sums


def axis_candidates(
    items: Sequence, oa: Mapping[str, int], axis: int, c: Container
) -> dict[str, list[Fraction]]:
    """Admissible coordinates along ``axis`` for every item.

    Each list holds the subset sums of the other items' extents on that axis,
    restricted to positions where the item stays inside the container.
    """
    ext = {it.id: oriented_extents(it.dims, oa[it.id])[axis] for it in items}
    bound = c.as_tuple()[axis]
    out = {}
    for it in items:
        others = [ext[o.id] for o in items if o.id != it.id]
        limit = bound - ext[it.id]
        out[it.id] = sorted(s for s in subset_sums(others) if s <= limit)
    return out


def candidate_grid(items: Sequence, oa: Mapping[str, int], c: Container):
    """Per item, the (xs, ys, zs) candidate lists."""
    per_axis = [axis_candidates(items, oa, axis, c) for axis in AXES]
    return {it.id: tuple(per_axis[axis][it.id] for axis in AXES) for it in items}


def _check_fit(c: Container, items: Sequence, oa: Mapping[str, int]) -> None:
    for it in items:
        if not fits(it.dims, oa[it.id], c):
            ext = oriented_extents(it.dims, oa[it.id])
            raise ItemCannotFit(
                it.id, f"orientation {oa[it.id]} gives extents {tuple(map(str, ext))}"
            )


def pack_with_orientations(
    c: Container, items: Sequence, oa: Mapping[str, int]
) -> Layout | None:
    """Search the candidate grid for a valid layout with fixed orientations.

    Items are placed in input order; each item tries its candidate positions
    in ascending (x, y, z) order and the branch is cut as soon as it overlaps
    an item already placed. Items with equal dimensions and orientation are
    interchangeable, so their positions are forced into increasing order.
    """
    items = list(items)
    _check_fit(c, items, oa)
    dims = {it.id: it.dims for it in items}
    if not items:
        return Layout(c, dims, {})

    grid = candidate_grid(items, oa, c)
    extents = [oriented_extents(it.dims, oa[it.id]) for it in items]
    candidates = [
        [Box.at(pos, ext) for pos in product(*grid[it.id])]
        for it, ext in zip(items, extents)
    ]
    # index of the previous interchangeable item, for symmetry breaking
    twin_of = [None] * len(items)
    for k, it in enumerate(items):
        for j in range(k - 1, -1, -1):
            if items[j].dims == it.dims and oa[items[j].id] == oa[it.id]:
                twin_of[k] = j
                break

    chosen: list[Box] = []

    def place(k: int) -> bool:
        if k == len(items):
            return True
        floor = chosen[twin_of[k]].lo if twin_of[k] is not None else None
        for box in candidates[k]:
            if floor is not None and box.lo <= floor:
                continue
            if any(boxes_intersect(box, other) for other in chosen):
                continue
            chosen.append(box)
            if place(k + 1):
                return True
            chosen.pop()
        return False

    if not place(0):
        return None
    entries = {
        it.id: Placement(*box.lo, oa[it.id]) for it, box in zip(items, chosen)
    }
    layout = Layout(c, dims, entries)
    assert is_valid(layout), "packer produced an invalid layout"
    return layout


def fitting_orientations(c: Container, items: Sequence) -> list[list[int]]:
    options = []
    for it in items:
        codes = [o for o in orientation_classes(it.dims) if fits(it.dims, o, c)]
        if not codes:
            raise ItemCannotFit(it.id, "no orientation fits")
        options.append(codes)
    return options


def orientation_assignments(c: Container, items: Sequence):
    """Yield orientation maps in deterministic order, skipping orientations
    that cannot fit and symmetric repeats among identical items."""
    items = list(items)
    options = fitting_orientations(c, items)
    for combo in product(*options):
        ok = True
        for k in range(1, len(items)):
            for j in range(k):
                if items[j].dims == items[k].dims and combo[j] > combo[k]:
                    ok = False
        if ok:
            yield {it.id: code for it, code in zip(items, combo)}


def pack_decision(c: Container, items: Sequence) -> Layout | None:
    """Decide whether all ``items`` pack into ``c``; return a layout if so.

    Raises :class:`ItemCannotFit` if some item fits in no orientation.
    """
    items = list(items)
    if len(items) > WARN_ITEM_COUNT:
        warnings.warn(
            f"exact packing of {len(items)} items may take very long", stacklevel=2
        )
    fitting_orientations(c, items)
    if sum((it.dims.volume for it in items), Fraction(0)) > c.volume:
        return None
    for oa in orientation_assignments(c, items):
        layout = pack_with_orientations(c, items, oa)
        if layout is not None:
            return layout
    return None


@lru_cache(maxsize=65536)
def _packable(c: Container, dims: tuple[Dims3, ...]) -> bool:
    items = [PackItem(str(k), d) for k, d in enumerate(dims)]
    return pack_decision(c, items) is not None


def packable(c: Container, dims: Iterable[Dims3]) -> bool:
    """Order-independent, memoised feasibility verdict for a multiset of items."""
    key = tuple(sorted(dims, key=lambda d: d.as_tuple()))
    return _packable(c, key)


def _slide_target(boxes: dict[str, Box], item_id: str, axis: int) -> Fraction:
    me = boxes[item_id]
    others = [a for a in AXES if a != axis]
    target = Fraction(0)
    for j, b in boxes.items():
        if j == item_id:
            continue
        if not all(me.lo[a] < b.hi[a] and b.lo[a] < me.hi[a] for a in others):
            continue
        if b.hi[axis] <= me.lo[axis]:
            target = max(target, b.hi[axis])
    return target


def normalize_layout(layout: Layout) -> Layout:
    """Slide every item towards the origin until each one rests in a corner.

    Passes run axis by axis (z, then y, then x) over items sorted by id, each
    item dropping to the highest blocking face below it (or to 0). Passes
    repeat until nothing moves.
    """
    if not is_valid(layout):
        raise ValueError("cannot normalize an invalid layout")
    entries = dict(layout.entries)
    current = layout.with_entries(entries)
    while True:
        moved = False
        for axis in (2, 1, 0):
            for item_id in sorted(entries):
                boxes = current.boxes()
                target = _slide_target(boxes, item_id, axis)
                if target != entries[item_id].position[axis]:
                    entries[item_id] = entries[item_id].moved(axis, target)
                    current = layout.with_entries(entries)
                    moved = True
        if not moved:
            break
    # restore the caller's entry order
    result = layout.with_entries({i: entries[i] for i in layout.entries})
    assert is_valid(result) and potential_energy(result) <= potential_energy(layout)
    return result


def is_corner_supported(layout: Layout) -> bool:
    """True iff on every axis every item sits at 0 or on another item's far face."""
    boxes = layout.boxes()
    for i, me in boxes.items():
        for axis in AXES:
            if me.lo[axis] == 0:
                continue
            others = [a for a in AXES if a != axis]
            touching = any(
                b.hi[axis] == me.lo[axis]
                and all(me.lo[a] < b.hi[a] and b.lo[a] < me.hi[a] for a in others)
                for j, b in boxes.items()
                if j != i
            )
            if not touching:
                return False
    return True
