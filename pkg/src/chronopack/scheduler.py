"""Greedy beat-wise scheduling for a fixed baking order, and validation.

A beat is an interval during which the set of items in the container and
their layout stay fixed. At each beat boundary the scheduler admits as many
of the next items in the order as can be packed together with the items
already baking, repacks everything from scratch, and bakes until the first
item finishes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .geometry import (
    ORIENTATIONS,
    Container,
    Dims3,
    Layout,
    Placement,
    boxes_intersect,
    format_scalar,
    pair_overlap_volume,
    protrusion_volume,
    to_scalar,
)
from .packer import ItemCannotFit, fits, orientation_classes, pack_decision, packable


@dataclass(frozen=True)
class BakeItem:
    id: str
    dims: Dims3
    bake_time: Fraction

    def __post_init__(self):
        t = to_scalar(self.bake_time)
        if t <= 0:
            raise ValueError(f"bake time of {self.id} must be positive")
        object.__setattr__(self, "bake_time", t)


@dataclass
class Beat:
    index: int
    start: Fraction
    duration: Fraction
    placements: dict[str, Placement] = field(default_factory=dict)

    @property
    def end(self) -> Fraction:
        return self.start + self.duration


@dataclass
class Schedule:
    order: tuple[str, ...]
    starts: dict[str, Fraction]
    beats: list[Beat]
    makespan: Fraction

    def layout(self, j: int, container: Container, dims: Mapping[str, Dims3]) -> Layout:
        """Layout of beat ``j`` (0-based position in ``beats``)."""
        return Layout(container, dims, dict(self.beats[j].placements))


@dataclass(frozen=True)
class Violation:
    kind: str
    where: str
    detail: str = ""

    def __str__(self):
        return f"{self.kind} [{self.where}] {self.detail}".rstrip()


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}


def fits_somehow(d: Dims3, c: Container) -> bool:
    return any(fits(d, o, c) for o in orientation_classes(d))


def split_oversize(c: Container, items: Sequence[BakeItem]):
    """Partition ``items`` into (fitting, oversize) preserving order."""
    keep = [it for it in items if fits_somehow(it.dims, c)]
    drop = [it for it in items if not fits_somehow(it.dims, c)]
    return keep, drop


def max_prefix_fit(
    c: Container, resident: Sequence[BakeItem], queue: Sequence[BakeItem]
) -> tuple[list[BakeItem], Layout, int]:
    """Admit queue items one by one while everything still packs.

    Returns the enlarged survivor set (residents first, then admitted items in
    queue order), a layout for it, and the number of queue items admitted.
    """
    taken = list(resident)
    k = 0
    for it in queue:
        if not packable(c, [x.dims for x in taken] + [it.dims]):
            break
        taken.append(it)
        k += 1
    layout = pack_decision(c, taken)
    if layout is None:
        raise RuntimeError("resident items no longer pack; scheduler invariant broken")
    return taken, layout, k


def greedy_schedule(c: Container, items: Sequence[BakeItem]) -> Schedule:
    """Schedule ``items`` in the given order, each as early as possible.

    Raises :class:`ItemCannotFit` for the first item that fits the container
    in no orientation.
    """
    items = list(items)
    for it in items:
        if not fits_somehow(it.dims, c):
            raise ItemCannotFit(it.id, "no orientation fits")
    ids = [it.id for it in items]
    if len(set(ids)) != len(ids):
        raise ValueError("item ids must be unique")

    t = Fraction(0)
    remaining: dict[str, Fraction] = {}
    starts: dict[str, Fraction] = {}
    beats: list[Beat] = []
    resident: list[BakeItem] = []
    queue = items
    while resident or queue:
        resident, layout, k = max_prefix_fit(c, resident, queue)
        for it in queue[:k]:
            starts[it.id] = t
            remaining[it.id] = it.bake_time
        queue = queue[k:]
        dt = min(remaining[it.id] for it in resident)
        beats.append(Beat(len(beats) + 1, t, dt, dict(layout.entries)))
        t += dt
        for it in resident:
            remaining[it.id] -= dt
        # items finishing together leave together
        resident = [it for it in resident if remaining[it.id] > 0]
    return Schedule(tuple(ids), starts, beats, t)


def makespan_of(s: Schedule, items: Sequence[BakeItem]) -> Fraction:
    """``max(S_i + T_i) - min(S_i)`` over the scheduled items."""
    if not items:
        return Fraction(0)
    ends = [s.starts[it.id] + it.bake_time for it in items]
    return max(ends) - min(s.starts[it.id] for it in items)


def validate_schedule(
    c: Container,
    items: Sequence[BakeItem],
    s: Schedule,
    order_constrained: bool = False,
) -> ValidationReport:
    """Check an arbitrary schedule against the instance; never raises."""
    report = ValidationReport()
    bad = report.violations.append
    by_id = {it.id: it for it in items}

    for it in items:
        if it.id not in s.starts:
            bad(Violation("missing-start", it.id))
    for i in s.starts:
        if i not in by_id:
            bad(Violation("unknown-item", i, "start given for unknown item"))
    if sorted(s.order) != sorted(by_id):
        bad(Violation("bad-order", "order", "order is not a permutation of the items"))

    # beats must tile [0, makespan)
    t = Fraction(0)
    for j, beat in enumerate(s.beats):
        where = f"beat {beat.index}"
        if beat.index != j + 1:
            bad(Violation("beat-index", where, f"expected index {j + 1}"))
        if beat.duration <= 0:
            bad(Violation("nonpositive-duration", where))
        if beat.start > t:
            bad(Violation("beat-gap", where, f"gap [{format_scalar(t)}, {format_scalar(beat.start)})"))
        elif beat.start < t:
            bad(Violation("beat-overlap", where, f"starts at {format_scalar(beat.start)} before {format_scalar(t)}"))
        t = beat.end
    if t != s.makespan:
        bad(Violation("makespan-mismatch", "beats", f"beats end at {format_scalar(t)}, makespan is {format_scalar(s.makespan)}"))

    known = [it for it in items if it.id in s.starts]
    if known:
        if min(s.starts[it.id] for it in known) != 0:
            bad(Violation("nonzero-origin", "starts", "earliest start is not 0"))
        if len(known) == len(items) and makespan_of(s, items) != s.makespan:
            bad(Violation("makespan-mismatch", "starts", f"max(S+T)-min(S) is {format_scalar(makespan_of(s, items))}"))

    # geometry of every beat
    dims = {i: it.dims for i, it in by_id.items()}
    for beat in s.beats:
        where = f"beat {beat.index}"
        boxes = {}
        for i, p in beat.placements.items():
            if i not in by_id:
                bad(Violation("unknown-item", where, f"{i} placed but not in instance"))
                continue
            if p.orient not in ORIENTATIONS:
                bad(Violation("bad-orientation", where, f"{i} has code {p.orient}"))
                continue
            boxes[i] = Layout(c, dims, {i: p}).box(i)
        for i, b in boxes.items():
            if protrusion_volume(b, c) != 0:
                bad(Violation("protrusion", where, f"{i} protrudes by {format_scalar(protrusion_volume(b, c))}"))
        ids = list(boxes)
        for a in range(len(ids)):
            for b in range(a + 1, len(ids)):
                if boxes_intersect(boxes[ids[a]], boxes[ids[b]]):
                    v = pair_overlap_volume(boxes[ids[a]], boxes[ids[b]])
                    bad(Violation("overlap", where, f"{ids[a]} and {ids[b]} share volume {format_scalar(v)}"))

    # presence must match the survival period exactly
    for it in known:
        lo = s.starts[it.id]
        hi = lo + it.bake_time
        present = Fraction(0)
        for beat in s.beats:
            inside = beat.start >= lo and beat.end <= hi
            crosses = beat.start < hi and beat.end > lo and not inside
            here = it.id in beat.placements
            if here:
                present += beat.duration
            if crosses:
                bad(Violation("misaligned", it.id, f"beat {beat.index} straddles the survival period boundary"))
            elif inside and not here:
                bad(Violation("discontinuous-bake", it.id, f"absent from beat {beat.index}"))
            elif here and not inside:
                bad(Violation("outside-survival", it.id, f"present in beat {beat.index}"))
        if present != it.bake_time:
            bad(Violation("duration-mismatch", it.id, f"present for {format_scalar(present)}, needs {format_scalar(it.bake_time)}"))

    if order_constrained and not report.kinds() & {"bad-order", "missing-start"}:
        seq = [s.starts[i] for i in s.order if i in s.starts]
        for a, b, ia in zip(seq, seq[1:], s.order):
            if a > b:
                bad(Violation("order-violation", ia, "starts after its successor"))
    return report
