# %% [markdown]
# # Exact game colouring numbers of small forest powers
#
# The solver decides the threshold game for s = 1, 2, ... and stops at the
# first s Alice wins.  Paths and complete trees are natural families.

# %%
from markgame import bob_exhaustive, build_power, exact_colg, generate, make_strategy

print("paths:")
for m in (1, 2, 3):
    values = [exact_colg(build_power(generate("path", n), m)).value for n in range(1, 15)]
    print(f"  m={m}: {values}")

# %%
print("complete trees, root degree 3:")
for n in (4, 7, 10, 13, 16):
    tree = generate("complete_dary", n, 3)
    for m in (1, 2):
        p = build_power(tree, m)
        exact = exact_colg(p)
        refined = bob_exhaustive(p, make_strategy("refined")) if n <= 12 else None
        worst = refined.worst_score if refined else "-"
        print(f"  n={n:2d} m={m}: col_g={exact.value} refined-vs-best-Bob={worst} "
              f"nodes={exact.nodes_expanded}")
