"""Plain-text instance and schedule formats, CSV exports, and instance generation.

Instance file::

    # comment
    container 4 1 1
    item X 2 1 1 2
    item Y 1 1 1 1/2

Schedule file::

    makespan 2
    order Y X
    item Y start 0 end 1/2
    beat 1 start 0 duration 1/2
    place 1 Y 0 0 0 1

Every number is written as a lowest-terms integer or fraction.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .geometry import Container, Dims3, Placement, format_scalar, oriented_extents
from .optimizer import Instance
from .scheduler import BakeItem, Beat, Schedule

_NUM = re.compile(r"^(\d+(\.\d+)?|\d+/\d+)$")


class ParseError(ValueError):
    def __init__(self, line: int, message: str):
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}")


def _number(token: str, line: int, positive: bool = True) -> Fraction:
    neg = token.startswith("-")
    body = token[1:] if neg else token
    if not _NUM.match(body):
        raise ParseError(line, f"malformed number {token!r}")
    q = Fraction(body)
    if neg:
        q = -q
    if positive and q <= 0:
        raise ParseError(line, f"non-positive number {token!r}")
    if not positive and q < 0:
        raise ParseError(line, f"negative number {token!r}")
    return q


def _lines(text: str):
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield n, line.split()


def parse_instance(text: str) -> Instance:
    container = None
    items: list[BakeItem] = []
    seen: set[str] = set()
    for n, tok in _lines(text):
        if tok[0] == "container":
            if container is not None:
                raise ParseError(n, "duplicate container line")
            if items:
                raise ParseError(n, "container line must come first")
            if len(tok) != 4:
                raise ParseError(n, "expected: container L W H")
            container = Container(*(_number(t, n) for t in tok[1:]))
        elif tok[0] == "item":
            if container is None:
                raise ParseError(n, "missing container")
            if len(tok) != 6:
                raise ParseError(n, "expected: item <id> <l> <w> <h> <T>")
            item_id = tok[1]
            if item_id in seen:
                raise ParseError(n, f"duplicate id {item_id!r}")
            seen.add(item_id)
            l, w, h, t = (_number(x, n) for x in tok[2:])
            items.append(BakeItem(item_id, Dims3(l, w, h), t))
        else:
            raise ParseError(n, f"unknown directive {tok[0]!r}")
    if container is None:
        raise ParseError(1, "missing container")
    return Instance(container, items)


def emit_instance(inst: Instance) -> str:
    c = inst.container
    out = ["container " + " ".join(format_scalar(v) for v in c.as_tuple())]
    for it in inst.items:
        nums = [*it.dims.as_tuple(), it.bake_time]
        out.append(f"item {it.id} " + " ".join(format_scalar(v) for v in nums))
    return "\n".join(out) + "\n"


def emit_schedule(s: Schedule) -> str:
    f = format_scalar
    ends: dict[str, Fraction] = {}
    for beat in s.beats:
        for i in beat.placements:
            ends[i] = beat.end
    out = [f"makespan {f(s.makespan)}", "order " + " ".join(s.order)]
    for i in s.order:
        if i in s.starts:
            out.append(f"item {i} start {f(s.starts[i])} end {f(ends.get(i, s.starts[i]))}")
    for beat in s.beats:
        out.append(f"beat {beat.index} start {f(beat.start)} duration {f(beat.duration)}")
        for i, p in beat.placements.items():
            out.append(f"place {beat.index} {i} {f(p.x)} {f(p.y)} {f(p.z)} {p.orient}")
    return "\n".join(out) + "\n"


def parse_schedule(text: str) -> Schedule:
    """Parse a schedule file. Item end times are informational and ignored;
    structural consistency is left to ``validate_schedule``."""
    makespan = None
    order: tuple[str, ...] | None = None
    starts: dict[str, Fraction] = {}
    beats: list[Beat] = []
    by_index: dict[int, Beat] = {}
    for n, tok in _lines(text):
        key = tok[0]
        try:
            if key == "makespan" and len(tok) == 2:
                makespan = _number(tok[1], n, positive=False)
            elif key == "order":
                order = tuple(tok[1:])
            elif key == "item" and len(tok) == 6 and tok[2] == "start" and tok[4] == "end":
                starts[tok[1]] = _number(tok[3], n, positive=False)
            elif key == "beat" and len(tok) == 6 and tok[2] == "start" and tok[4] == "duration":
                j = int(tok[1])
                if j in by_index:
                    raise ParseError(n, f"duplicate beat {j}")
                beat = Beat(j, _number(tok[3], n, positive=False), _number(tok[5], n, positive=False))
                by_index[j] = beat
                beats.append(beat)
            elif key == "place" and len(tok) == 7:
                j = int(tok[1])
                if j not in by_index:
                    raise ParseError(n, f"placement for undeclared beat {j}")
                x, y, z = (_number(t, n, positive=False) for t in tok[3:6])
                by_index[j].placements[tok[2]] = Placement(x, y, z, int(tok[6]))
            else:
                raise ParseError(n, f"malformed line: {' '.join(tok)}")
        except ParseError:
            raise
        except ValueError as exc:
            raise ParseError(n, str(exc)) from None
    if makespan is None:
        raise ParseError(1, "missing makespan line")
    if order is None:
        raise ParseError(1, "missing order line")
    return Schedule(order, starts, beats, makespan)


def emit_gantt_csv(s: Schedule, items: Sequence[BakeItem]) -> str:
    """``id,start,end`` rows in schedule order."""
    by_id = {it.id: it for it in items}
    rows = ["id,start,end"]
    for i in s.order:
        if i in s.starts and i in by_id:
            a = s.starts[i]
            rows.append(f"{i},{format_scalar(a)},{format_scalar(a + by_id[i].bake_time)}")
    return "\n".join(rows) + "\n"


def emit_boxes_csv(s: Schedule, items: Sequence[BakeItem]) -> str:
    """One row per placement with its oriented extents, for 3D plotting."""
    by_id = {it.id: it for it in items}
    f = format_scalar
    rows = ["beat,id,x,y,z,ex,ey,ez"]
    for beat in s.beats:
        for i, p in beat.placements.items():
            ex, ey, ez = oriented_extents(by_id[i].dims, p.orient)
            rows.append(f"{beat.index},{i},{f(p.x)},{f(p.y)},{f(p.z)},{f(ex)},{f(ey)},{f(ez)}")
    return "\n".join(rows) + "\n"


@dataclass(frozen=True)
class GenParams:
    seed: int
    n: int
    container: tuple[int, int, int] = (4, 4, 4)
    dims: tuple[int, int] = (1, 3)
    times: tuple[int, int] = (1, 3)
    mode: str = "random"

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.n < 1:
            raise ValueError("item count must be at least 1")
        if any(v < 1 for v in self.container):
            raise ValueError("container dimensions must be positive")
        for name in ("dims", "times"):
            lo, hi = getattr(self, name)
            if lo < 1 or hi < lo:
                raise ValueError(f"{name} range must satisfy 1 <= lo <= hi")
        if self.mode not in ("random", "feasible-by-cuts"):
            raise ValueError(f"unknown mode {self.mode!r}")


def _guillotine(rng: random.Random, size: tuple[int, int, int], n: int):
    pieces = [size]
    while len(pieces) < n:
        cuttable = [k for k, p in enumerate(pieces) if max(p) > 1]
        if not cuttable:
            raise ValueError(f"container cannot be cut into {n} integer pieces")
        k = rng.choice(cuttable)
        piece = pieces.pop(k)
        axis = rng.choice([a for a in range(3) if piece[a] > 1])
        cut = rng.randint(1, piece[axis] - 1)
        a, b = list(piece), list(piece)
        a[axis], b[axis] = cut, piece[axis] - cut
        pieces += [tuple(a), tuple(b)]
    return pieces


def generate_instance(p: GenParams) -> Instance:
    """Seeded instance. ``feasible-by-cuts`` splits the container by random
    guillotine cuts, so the full item set packs at once; its ``dims`` range is
    not used."""
    rng = random.Random(p.seed)
    if p.mode == "random":
        shapes = [tuple(rng.randint(*p.dims) for _ in range(3)) for _ in range(p.n)]
    else:
        shapes = _guillotine(rng, p.container, p.n)
        rng.shuffle(shapes)
        shapes = [tuple(rng.sample(s, 3)) for s in shapes]
    items = [
        BakeItem(f"i{k + 1}", Dims3(*s), rng.randint(*p.times))
        for k, s in enumerate(shapes)
    ]
    return Instance(Container(*p.container), items)
