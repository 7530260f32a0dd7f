"""
Minimum makespan over all orders
================================

Enumerate distinct baking orders, schedule each greedily and keep the best.
"""

# %%
from chronopack import BakeItem, Container, Dims3, Instance, lower_bound, permutation_stream, solve

cubes = [BakeItem(str(k), Dims3(1, 1, 1), t) for k, t in enumerate([1, 1, 2], start=1)]
inst = Instance(Container(2, 1, 1), cubes)

# %%
# Cubes 1 and 2 are interchangeable, so only 3 of the 6 orders are distinct.
print(list(permutation_stream(cubes)))

# %%
result = solve(inst)
print("makespan", result.best.makespan, "order", result.best_order)
print("evaluated", result.permutations_evaluated, "lower bound", lower_bound(inst))

# %%
# Stop as soon as an order reaches the lower bound.
pruned = solve(inst, prune=True)
print(pruned.permutations_evaluated, pruned.permutations_pruned)
