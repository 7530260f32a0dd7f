"""
Exact packing decisions
=======================

Decide whether a set of cuboids fits in a container, with every
coordinate computed exactly, and push a found layout into its corner.
"""

# %%
# A unit cube in three ovens: a snug fit, one a tenth too short, and a
# roomy one with infinitely many valid positions.
from chronopack import Container, Dims3, ItemCannotFit, PackItem, normalize_layout, pack_decision

unit = [PackItem("a", Dims3(1, 1, 1))]
for box in [(1, 1, 1), ("0.9", 1, 1), ("1.5", "1.5", 1)]:
    try:
        layout = pack_decision(Container(*box), unit)
        print(box, "->", normalize_layout(layout).entries["a"].position)
    except ItemCannotFit as exc:
        print(box, "->", exc)

# %%
# Rotations matter: a 1x2x1 bar only fits a 2x1x1 slot after turning it.
layout = pack_decision(Container(2, 1, 1), [PackItem("bar", Dims3(1, 2, 1))])
print(layout.entries["bar"])

# %%
# Candidate coordinates along an axis are subset sums of the other items'
# extents. Here item p0 (extent 1) may start at 0 or 2, item p1 (extent 2)
# at 0 or 1.
from chronopack import axis_candidates

items = [PackItem("p0", Dims3(1, 1, 1)), PackItem("p1", Dims3(2, 1, 1))]
print(axis_candidates(items, {"p0": 1, "p1": 1}, 0, Container(3, 1, 1)))

# %%
# Fractions stay exact: 1/2 + 3/2 fills a 2-long box, 19/10 does not.
from fractions import Fraction

halves = [PackItem("s", Dims3(Fraction(1, 2), 1, 1)), PackItem("l", Dims3(Fraction(3, 2), 1, 1))]
print(pack_decision(Container(2, 1, 1), halves) is not None)
print(pack_decision(Container("1.9", 1, 1), halves) is not None)
