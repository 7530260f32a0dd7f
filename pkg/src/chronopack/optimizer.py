"""Exact makespan minimisation over all baking orders.

Every distinct order is scheduled greedily and the shortest schedule wins.
Items that agree in dimensions and bake time are interchangeable, so only one
order per arrangement of such classes is evaluated.
"""

from __future__ import annotations

import math
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import islice
from typing import Iterator, Sequence

from .geometry import Container
from .scheduler import BakeItem, Schedule, greedy_schedule

DEFAULT_GUARD_N = 10
GUARD_ENV = "CHRONOPACK_GUARD_N"


class SolveGuardError(ValueError):
    pass


@dataclass
class Instance:
    container: Container
    items: list[BakeItem] = field(default_factory=list)

    def __post_init__(self):
        ids = [it.id for it in self.items]
        dup = [i for i, k in Counter(ids).items() if k > 1]
        if dup:
            raise ValueError(f"duplicate item id {dup[0]}")


@dataclass
class SolveResult:
    best: Schedule
    best_order: tuple[str, ...]
    permutations_evaluated: int
    permutations_pruned: int
    lower_bound: Fraction


def lower_bound(inst: Instance) -> Fraction:
    """Admissible makespan bound: longest bake time vs. space-time volume."""
    if not inst.items:
        return Fraction(0)
    longest = max(it.bake_time for it in inst.items)
    demand = sum((it.dims.volume * it.bake_time for it in inst.items), Fraction(0))
    return max(longest, demand / inst.container.volume)


def _class_key(it: BakeItem):
    return (it.dims.as_tuple(), it.bake_time)


def _classes(items: Sequence[BakeItem]) -> list[int]:
    first: dict = {}
    return [first.setdefault(_class_key(it), k) for k, it in enumerate(items)]


def _next_permutation(seq: list[int]) -> bool:
    i = len(seq) - 2
    while i >= 0 and seq[i] >= seq[i + 1]:
        i -= 1
    if i < 0:
        return False
    j = len(seq) - 1
    while seq[j] <= seq[i]:
        j -= 1
    seq[i], seq[j] = seq[j], seq[i]
    seq[i + 1 :] = reversed(seq[i + 1 :])
    return True


def _index_orders(items: Sequence[BakeItem]) -> Iterator[tuple[int, ...]]:
    """Distinct orders as tuples of input indices, in lexicographic order."""
    classes = _classes(items)
    members: dict[int, list[int]] = {}
    for k, cls in enumerate(classes):
        members.setdefault(cls, []).append(k)
    seq = sorted(classes)
    if not seq:
        return
    while True:
        used = {cls: 0 for cls in members}
        order = []
        for cls in seq:
            order.append(members[cls][used[cls]])
            used[cls] += 1
        yield tuple(order)
        if not _next_permutation(seq):
            return


def permutation_stream(items: Sequence[BakeItem]) -> Iterator[tuple[str, ...]]:
    """Yield one order of item ids per arrangement of interchangeable items."""
    for order in _index_orders(items):
        yield tuple(items[k].id for k in order)


def count_orders(items: Sequence[BakeItem]) -> int:
    counts = Counter(_classes(items))
    total = math.factorial(len(items))
    for k in counts.values():
        total //= math.factorial(k)
    return total


def _guard_limit(guard_n: int | None) -> int:
    if guard_n is not None:
        return guard_n
    return int(os.environ.get(GUARD_ENV, DEFAULT_GUARD_N))


def _evaluate(args) -> list[tuple[Fraction, tuple[int, ...]]]:
    container, items, orders = args
    return [
        (greedy_schedule(container, [items[k] for k in order]).makespan, order)
        for order in orders
    ]


def _chunks(it: Iterator, size: int):
    while True:
        chunk = list(islice(it, size))
        if not chunk:
            return
        yield chunk


def solve(
    inst: Instance,
    prune: bool = False,
    workers: int = 1,
    force: bool = False,
    guard_n: int | None = None,
    chunk_size: int = 64,
) -> SolveResult:
    """Return the minimum-makespan greedy schedule over all distinct orders.

    Ties go to the lexicographically smallest order of input positions. With
    ``prune`` the enumeration stops at the first order whose makespan meets
    :func:`lower_bound`; counters always describe that sequential enumeration,
    so results do not depend on ``workers``.
    """
    items = list(inst.items)
    c = inst.container
    limit = _guard_limit(guard_n)
    if len(items) > limit and not force:
        raise SolveGuardError(
            f"{len(items)} items exceed the exhaustive-solve guard of {limit}; use force"
        )
    bound = lower_bound(inst)
    total = count_orders(items) if items else 1

    best: tuple[Fraction, tuple[int, ...]] | None = None
    evaluated = 0

    def consume(results) -> bool:
        nonlocal best, evaluated
        for span, order in results:
            evaluated += 1
            if best is None or (span, order) < best:
                best = (span, order)
            if prune and span == bound:
                return True
        return False

    orders = _index_orders(items) if items else iter([()])
    if workers <= 1:
        for chunk in _chunks(orders, chunk_size):
            if consume(_evaluate((c, items, chunk))):
                break
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            stop = False
            for batch in _chunks(_chunks(orders, chunk_size), workers):
                outs = pool.map(_evaluate, [(c, items, ch) for ch in batch])
                for res in outs:
                    if consume(res):
                        stop = True
                        break
                if stop:
                    break

    span, order = best
    schedule = greedy_schedule(c, [items[k] for k in order])
    assert schedule.makespan == span
    return SolveResult(
        best=schedule,
        best_order=tuple(items[k].id for k in order),
        permutations_evaluated=evaluated,
        permutations_pruned=total - evaluated,
        lower_bound=bound,
    )
