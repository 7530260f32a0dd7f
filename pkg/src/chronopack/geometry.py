"""Exact scalars, oriented cuboids and the intersection-volume functional.

All quantities are :class:`fractions.Fraction` values. Nothing in this module
rounds; comparisons against zero are exact.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Mapping, NamedTuple, Union

Scalar = Fraction
ScalarLike = Union[int, str, Fraction]

_NUMBER_RE = re.compile(r"^[+-]?(\d+(\.\d+)?|\d+/\d+)$")

# Axis permutation for each orientation code: index into (l, w, h).
ORIENTATIONS: dict[int, tuple[int, int, int]] = {
    1: (0, 1, 2),  # (l, w, h)
    2: (0, 2, 1),  # (l, h, w)
    3: (1, 0, 2),  # (w, l, h)
    4: (1, 2, 0),  # (w, h, l)
    5: (2, 0, 1),  # (h, l, w)
    6: (2, 1, 0),  # (h, w, l)
}
AXES = (0, 1, 2)


def to_scalar(value: ScalarLike | float) -> Fraction:
    """Convert ``value`` to an exact Fraction.

    Strings may be integers, finite decimals (``"2.5"``) or fractions
    (``"7/2"``). Floats are read through their shortest ``repr`` so that
    ``0.9`` means nine tenths rather than its binary approximation.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    if isinstance(value, str):
        text = value.strip()
        if not _NUMBER_RE.match(text):
            raise ValueError(f"not an exact number: {value!r}")
        q = Fraction(text)
        return q
    raise TypeError(f"cannot convert {type(value).__name__} to a scalar")


def format_scalar(q: Fraction) -> str:
    """Lowest-terms text form: ``p`` when the denominator is 1, else ``p/q``."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _positive(name: str, value) -> Fraction:
    q = to_scalar(value)
    if q <= 0:
        raise ValueError(f"{name} must be positive, got {format_scalar(q)}")
    return q


@dataclass(frozen=True)
class Dims3:
    l: Fraction
    w: Fraction
    h: Fraction

    def __post_init__(self):
        for name in ("l", "w", "h"):
            object.__setattr__(self, name, _positive(name, getattr(self, name)))

    def as_tuple(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.l, self.w, self.h)

    @property
    def volume(self) -> Fraction:
        return self.l * self.w * self.h


@dataclass(frozen=True)
class Container:
    L: Fraction
    W: Fraction
    H: Fraction

    def __post_init__(self):
        for name in ("L", "W", "H"):
            object.__setattr__(self, name, _positive(name, getattr(self, name)))

    def as_tuple(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.L, self.W, self.H)

    @property
    def volume(self) -> Fraction:
        return self.L * self.W * self.H


@dataclass(frozen=True)
class Placement:
    """Lower-left-near vertex of an item plus its orientation code."""

    x: Fraction
    y: Fraction
    z: Fraction
    orient: int = 1

    def __post_init__(self):
        for name in ("x", "y", "z"):
            object.__setattr__(self, name, to_scalar(getattr(self, name)))
        if self.orient not in ORIENTATIONS:
            raise ValueError(f"orientation code must be 1..6, got {self.orient}")

    @property
    def position(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.x, self.y, self.z)

    def moved(self, axis: int, value: Fraction) -> "Placement":
        pos = list(self.position)
        pos[axis] = value
        return Placement(pos[0], pos[1], pos[2], self.orient)


class Box(NamedTuple):
    """Axis-aligned box given by its low and high corners."""

    lo: tuple[Fraction, Fraction, Fraction]
    hi: tuple[Fraction, Fraction, Fraction]

    @classmethod
    def at(cls, position, extents) -> "Box":
        position = tuple(to_scalar(v) for v in position)
        extents = tuple(to_scalar(v) for v in extents)
        return cls(position, tuple(p + e for p, e in zip(position, extents)))

    @property
    def volume(self) -> Fraction:
        v = Fraction(1)
        for a, b in zip(self.lo, self.hi):
            v *= b - a
        return v


@dataclass
class Layout:
    """A configuration: placements for a set of items inside a container.

    ``dims`` holds the unrotated dimensions of every placed item; ``entries``
    keeps insertion order, which is the order items were placed in.
    """

    container: Container
    dims: Mapping[str, Dims3]
    entries: dict[str, Placement] = field(default_factory=dict)

    def box(self, item_id: str) -> Box:
        p = self.entries[item_id]
        return Box.at(p.position, oriented_extents(self.dims[item_id], p.orient))

    def boxes(self) -> dict[str, Box]:
        return {i: self.box(i) for i in self.entries}

    def with_entries(self, entries: Mapping[str, Placement]) -> "Layout":
        return Layout(self.container, self.dims, dict(entries))


def oriented_extents(d: Dims3, orient: int) -> tuple[Fraction, Fraction, Fraction]:
    """Axis extents (x, y, z) of ``d`` under orientation code ``orient``."""
    perm = ORIENTATIONS[orient]
    base = d.as_tuple()
    return (base[perm[0]], base[perm[1]], base[perm[2]])


def interval_overlap(a_lo, a_hi, b_lo, b_hi) -> Fraction:
    return max(Fraction(0), min(a_hi, b_hi) - max(a_lo, b_lo))


def pair_overlap_volume(a: Box, b: Box) -> Fraction:
    """Volume of the intersection of two boxes; face contact counts as zero."""
    v = Fraction(1)
    for axis in AXES:
        d = interval_overlap(a.lo[axis], a.hi[axis], b.lo[axis], b.hi[axis])
        if d == 0:
            return Fraction(0)
        v *= d
    return v


def boxes_intersect(a: Box, b: Box) -> bool:
    """True iff the open interiors of ``a`` and ``b`` intersect."""
    return all(a.lo[k] < b.hi[k] and b.lo[k] < a.hi[k] for k in AXES)


def protrusion_volume(p: Box, c: Container) -> Fraction:
    """Part of ``p`` lying outside ``[0,L] x [0,W] x [0,H]``."""
    inside = pair_overlap_volume(p, Box((Fraction(0),) * 3, c.as_tuple()))
    return p.volume - inside


def total_overlap(layout: Layout) -> Fraction:
    """The functional V: protrusions plus all pairwise intersection volumes."""
    boxes = list(layout.boxes().values())
    v = sum((protrusion_volume(b, layout.container) for b in boxes), Fraction(0))
    for a, b in combinations(boxes, 2):
        v += pair_overlap_volume(a, b)
    return v


def is_valid(layout: Layout) -> bool:
    return total_overlap(layout) == 0


def potential_energy(layout: Layout) -> Fraction:
    return sum((sum(p.position) for p in layout.entries.values()), Fraction(0))
