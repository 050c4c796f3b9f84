# %% [markdown]
# # Powers of a forest
#
# The m-th power joins two vertices when their forest distance is between 1
# and m.  Here we build a small caterpillar and watch its power grow.

# %%
from markgame import Forest, build_power, distance

caterpillar = Forest(9, [(0, 1), (1, 2), (2, 3), (3, 4), (3, 6), (3, 8), (2, 7), (1, 5)])
print(caterpillar)
print("max degree:", caterpillar.max_degree)
print("distance 0 -> 8:", distance(caterpillar, 0, 8))

# %%
for m in range(5):
    pv = build_power(caterpillar, m)
    print(f"m={m}: {len(pv.edges()):2d} edges, max degree {pv.max_degree}")

# %% [markdown]
# Neighbour lists are stored sorted in CSR form, so a vertex's
# m-neighbourhood is a slice.

# %%
square = build_power(caterpillar, 2)
for v in range(caterpillar.n):
    print(v, square.neighbours(v).tolist())
