# %% [markdown]
# # Alice's activation strategies step by step
#
# Alice opens at vertex 0.  Every mark activates the path back to the
# component root.  After each Bob move Alice applies rule A1, A2 or B.

# %%
from markgame import Forest, GameState, alice_basic, alice_refined, apply_move, build_power

tree = Forest(9, [(0, 1), (1, 2), (2, 3), (3, 4), (3, 6), (3, 8), (2, 7), (1, 5)])
state = GameState(build_power(tree, 1))

v, rule = alice_refined(state)
apply_move(state, "A", v, rule)
for bob in (4, 6, 8):
    rec = apply_move(state, "B", bob)
    print(f"Bob marks {bob}, activating {list(rec.activated)}")
    v, rule = alice_refined(state)
    print(f"  refined Alice answers {v} by rule {rule}; basic Alice would play {alice_basic(state)}")
    apply_move(state, "A", v, rule)

# %% [markdown]
# ## Full games with runtime monitors
#
# The monitors check after each Alice move that no unmarked vertex has two
# children with marked subtrees, and that no unmarked vertex has more than
# M_m marked m-neighbours.

# %%
from markgame import InvariantMonitor, bound_thm2, generate, make_strategy, play

forest = generate("random_tree", 200, 4, seed=2024)
for m in (1, 2, 3):
    power = build_power(forest, m)
    for bob in ("random", "greedy"):
        rep = play(power, make_strategy("refined"), make_strategy(bob), seed=7,
                   monitors=[InvariantMonitor(power)])
        print(f"m={m} bob={bob:6s} score={rep.score:2d} bound={bound_thm2(4, m):2d} "
              f"violations={len(rep.violations)}")
