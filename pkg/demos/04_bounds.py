# %% [markdown]
# # The two upper bounds side by side

# %%
from markgame import bound_mm, bound_thm1, bound_thm2

print(" Δ  m   thm1   thm2  ratio")
for delta in (3, 5, 10, 20):
    for m in (1, 2, 3, 5):
        a, b = bound_thm1(delta, m), bound_thm2(delta, m)
        print(f"{delta:2d} {m:2d} {a:6d} {b:6d}  {a / b:.2f}")

# %% [markdown]
# For squares the new bound is Δ + 5, and the invariant ceiling is always
# two less than the score bound.

# %%
print([bound_thm2(d, 2) - d for d in range(3, 12)])
print(all(bound_thm2(d, m) - bound_mm(d, m) == 2 for d in range(3, 12) for m in range(1, 8)))
