"""Brute-force ground truth for small all-integer instances.

These functions are deliberately naive and do not reuse the packer or the
scheduler. Packing is checked by scanning every integer position of every
item over a unit-cell occupancy bitmask; schedules are checked by enumerating
integer start times and testing every unit time cell separately.

The time oracle only searches integer start times. It is exact for comparing
against the greedy scheduler (whose event times are integers on integer
instances) but says nothing about schedules with fractional starts.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations, product
from typing import Iterator, Sequence

from .geometry import Container, Dims3
from .optimizer import Instance

DEFAULT_TIME_CAP = 8
DEFAULT_ITEM_CAP = 4


class OracleCapExceeded(ValueError):
    pass


def _as_int(q: Fraction, what: str) -> int:
    q = Fraction(q)
    if q.denominator != 1:
        raise ValueError(f"{what} must be an integer, got {q}")
    return q.numerator


class IntegerInstance(Instance):
    """An :class:`Instance` whose dimensions and bake times are all integers."""

    def __post_init__(self):
        super().__post_init__()
        for v in self.container.as_tuple():
            _as_int(v, "container dimension")
        for it in self.items:
            for v in it.dims.as_tuple():
                _as_int(v, f"dimension of {it.id}")
            _as_int(it.bake_time, f"bake time of {it.id}")

    @classmethod
    def of(cls, inst: Instance) -> "IntegerInstance":
        if isinstance(inst, IntegerInstance):
            return inst
        return cls(inst.container, list(inst.items))


def _dims_of(item) -> Dims3:
    return item if isinstance(item, Dims3) else item.dims


def _placements(size: tuple[int, int, int], ext: tuple[int, int, int]) -> list[int]:
    L, W, H = size
    a, b, c = ext
    masks = []
    for x in range(L - a + 1):
        for y in range(W - b + 1):
            for z in range(H - c + 1):
                m = 0
                for i in range(x, x + a):
                    for j in range(y, y + b):
                        for k in range(z, z + c):
                            m |= 1 << ((i * W + j) * H + k)
                masks.append(m)
    return masks


def grid_pack_oracle(c: Container, items: Sequence, with_rotations: bool = True) -> bool:
    """Exhaustive feasibility check over all integer positions.

    ``items`` may be :class:`Dims3` values or anything with a ``dims``
    attribute. With ``with_rotations`` every axis permutation of each item is
    tried, otherwise items keep their (l, w, h) alignment.
    """
    size = tuple(_as_int(v, "container dimension") for v in c.as_tuple())
    shapes = []
    for it in items:
        d = tuple(_as_int(v, "item dimension") for v in _dims_of(it).as_tuple())
        exts = set(permutations(d)) if with_rotations else {d}
        masks = []
        for ext in sorted(exts):
            masks.extend(_placements(size, ext))
        if not masks:
            return False
        shapes.append(masks)

    def search(k: int, occupied: int) -> bool:
        if k == len(shapes):
            return True
        for m in shapes[k]:
            if not m & occupied and search(k + 1, occupied | m):
                return True
        return False

    return search(0, 0)


def _check_caps(inst: IntegerInstance, time_cap: int, item_cap: int) -> list[int]:
    times = [_as_int(it.bake_time, "bake time") for it in inst.items]
    if sum(times) > time_cap:
        raise OracleCapExceeded(f"total bake time {sum(times)} exceeds cap {time_cap}")
    if len(times) > item_cap:
        raise OracleCapExceeded(f"{len(times)} items exceed cap {item_cap}")
    return times


def feasible_start_assignments(
    inst: Instance,
    order: Sequence[str] | None = None,
    time_cap: int = DEFAULT_TIME_CAP,
    item_cap: int = DEFAULT_ITEM_CAP,
) -> Iterator[tuple[int, ...]]:
    """Yield every feasible integer start vector (indexed like ``inst.items``).

    Starts range over ``0..sum(T)``. With ``order`` given, starts must be
    non-decreasing along it. An assignment is feasible when, in every unit
    time cell, the items present can be packed together.
    """
    inst = IntegerInstance.of(inst)
    times = _check_caps(inst, time_cap, item_cap)
    n = len(times)
    horizon = sum(times)
    dims = [it.dims for it in inst.items]
    pos = {it.id: k for k, it in enumerate(inst.items)}
    chain = [pos[i] for i in order] if order is not None else None
    cell_ok: dict[frozenset, bool] = {}
    if n == 0:
        yield ()
        return

    def packs(present: frozenset) -> bool:
        if present not in cell_ok:
            cell_ok[present] = grid_pack_oracle(
                inst.container, [dims[i] for i in sorted(present)]
            )
        return cell_ok[present]

    for starts in product(range(horizon + 1), repeat=n):
        if chain is not None and any(
            starts[a] > starts[b] for a, b in zip(chain, chain[1:])
        ):
            continue
        end = max(s + t for s, t in zip(starts, times))
        ok = True
        for cell in range(min(starts), end):
            present = frozenset(
                i for i in range(n) if starts[i] <= cell < starts[i] + times[i]
            )
            if not packs(present):
                ok = False
                break
        if ok:
            yield starts


def time_grid_schedule_oracle(
    inst: Instance,
    order: Sequence[str] | None = None,
    time_cap: int = DEFAULT_TIME_CAP,
    item_cap: int = DEFAULT_ITEM_CAP,
) -> int | None:
    """Minimum makespan over integer start assignments (``None`` if none is
    feasible, which only happens when some item fits nowhere)."""
    inst = IntegerInstance.of(inst)
    times = [_as_int(it.bake_time, "bake time") for it in inst.items]
    if not inst.items:
        return 0
    best = None
    for starts in feasible_start_assignments(inst, order, time_cap, item_cap):
        span = max(s + t for s, t in zip(starts, times)) - min(starts)
        if best is None or span < best:
            best = span
    return best
