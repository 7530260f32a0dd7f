"""
Greedy scheduling with repacking
================================

Bake items in a fixed order, each as early as possible. Between beats the
whole oven is repacked, so items can move.
"""

# %%
from chronopack import BakeItem, Container, Dims3, greedy_schedule, validate_schedule
from chronopack.formats import emit_gantt_csv, emit_schedule

oven = Container(4, 1, 1)
X = BakeItem("X", Dims3(2, 1, 1), 2)
Y = BakeItem("Y", Dims3(1, 1, 1), 1)
W = BakeItem("W", Dims3(1, 1, 1), 1)
Z = BakeItem("Z", Dims3(2, 1, 1), 1)

schedule = greedy_schedule(oven, [Y, X, W, Z])
print(emit_schedule(schedule))

# %%
# X sits in the middle during the first beat and slides to the wall in the
# second, which is what lets Z in at t = 1.
for beat in schedule.beats:
    print(beat.index, beat.start, beat.placements["X"].position)

# %%
# The validator re-checks geometry, beat tiling and continuity of baking.
print(validate_schedule(oven, [X, Y, W, Z], schedule, order_constrained=True))

# %%
# Gantt rows for any external plotting tool.
print(emit_gantt_csv(schedule, [X, Y, W, Z]))
