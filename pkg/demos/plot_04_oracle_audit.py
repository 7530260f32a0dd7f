"""
Auditing against brute force
============================

On small integer instances the exact solvers can be checked against
exhaustive searches that share no code with them.
"""

# %%
import random

from chronopack import BakeItem, Container, Dims3, Instance, greedy_schedule, solve
from chronopack.oracles import grid_pack_oracle, time_grid_schedule_oracle

rng = random.Random(0)
agree = 0
for _ in range(30):
    items = [
        BakeItem(f"i{k}", Dims3(*(rng.randint(1, 2) for _ in range(3))), rng.randint(1, 2))
        for k in range(3)
    ]
    inst = Instance(Container(*(rng.randint(2, 3) for _ in range(3))), items)
    order = [it.id for it in items]
    greedy = greedy_schedule(inst.container, items).makespan
    best = solve(inst).best.makespan
    agree += greedy == time_grid_schedule_oracle(inst, order)
    agree += best == time_grid_schedule_oracle(inst)
print(f"{agree} of 60 comparisons agree")

# %%
# The packing oracle scans every integer position of every rotation.
print(grid_pack_oracle(Container(3, 3, 3), [Dims3(2, 2, 2), Dims3(2, 2, 2)]))
print(grid_pack_oracle(Container(2, 2, 1), [Dims3(1, 2, 1), Dims3(2, 1, 1)]))
