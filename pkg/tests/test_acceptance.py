"""Exit criteria, one test per criterion, each with a zero-violation tolerance.

Campaigns over "every labelled tree" walk one level-ordered representative
per class of relabellings Alice cannot distinguish and weight it by the
class size; ``test_level_ordered_classes_partition_labelled_trees`` and
``test_labelled_campaign_agrees_with_level_ordered`` check that reduction
against direct labelled enumeration.
"""
import numpy as np

from markgame import (
    ancestor_bound,
    bob_exhaustive,
    bound_mm,
    bound_thm1,
    bound_thm2,
    build_power,
    canonical_form,
    child_bound,
    enumerate_forests,
    enumerate_level_ordered_trees,
    exact_colg,
    generate,
    make_strategy,
    InvariantMonitor,
)
from markgame.verifier import verify_exhaustive, verify_random
from oracles import naive_colg, power_edges_by_distance

LABELLED_TREES_DELTA3_UP_TO_9 = sum([1, 1, 3, 16, 120, 1170, 14070, 201600, 3356640])


def _campaign(n_max, delta, m):
    reps = list(verify_exhaustive(n_max, delta, m))
    covered = sum(r.multiplicity for r in reps)
    worst = max(r.score for r in reps)
    bad = [r for r in reps if not r.passed]
    return covered, worst, bad


def test_faigle_bound_m1(acceptance):
    covered, worst, bad = _campaign(9, 3, 1)
    ok = covered == LABELLED_TREES_DELTA3_UP_TO_9 and worst <= 4 and not bad

    # 500 random labelled trees with n <= 9 and maximum degree <= 5, played directly
    rng = np.random.default_rng(20150101)
    refined = make_strategy("refined")
    sample_worst, sample_bad = 0, 0
    for _ in range(500):
        n = int(rng.integers(1, 10))
        t = generate("random_tree", n, 5, int(rng.integers(2**63)))
        t = t.relabel(rng.permutation(n).tolist())
        p = build_power(t, 1)
        res = bob_exhaustive(p, refined, bound=4, monitors=[InvariantMonitor(p, delta=5)])
        sample_worst = max(sample_worst, res.worst_score)
        sample_bad += res.exceeded or bool(res.violations)
    ok &= sample_worst <= 4 and sample_bad == 0
    acceptance("m=1 Faigle bound", ok,
               f"{covered} labelled trees worst={worst}, fails={len(bad)}; "
               f"500 random Δ<=5 worst={sample_worst}, fails={sample_bad}")
    assert ok


def test_theorem_bound_delta3_m2(acceptance):
    covered, worst, bad = _campaign(9, 3, 2)
    ok = covered == LABELLED_TREES_DELTA3_UP_TO_9 and worst <= bound_thm2(3, 2) == 8 and not bad
    acceptance("Theorem bound at (Δ=3, m=2)", ok, f"{covered} labelled trees worst={worst} <= 8, fails={len(bad)}")
    assert ok


def test_invariant_suite(acceptance):
    # 36 configurations x 278 games = 10008 seeded games
    games, violations, over = 0, 0, 0
    for delta in (3, 4, 5):
        for m in (1, 2, 3):
            for bob in ("random", "greedy"):
                for kind, n in (("random_tree", 200), ("random_forest", 150)):
                    seed = 1000 * delta + 100 * m + 10 * (bob == "greedy") + (kind == "random_forest")
                    for r in verify_random(278, n, delta, m, bob, seed, kind=kind):
                        games += 1
                        violations += len(r.monitor_violations)
                        over += r.score > r.bound_thm2
    ok = games >= 10_000 and violations == 0 and over == 0
    acceptance("Invariant suite (child-subtree and M_m monitors)", ok,
               f"{games} games, {violations} monitor violations, {over} scores over bound")
    assert ok


def test_exact_solver_matches_naive_minimax(acceptance):
    checked, mismatches = 0, 0
    for n in range(0, 7):
        for f in enumerate_forests(n):
            for m in (1, 2):
                checked += 1
                mismatches += exact_colg(build_power(f, m)).value != naive_colg(f, m)
    ok = checked == 2 * 3272 and mismatches == 0
    acceptance("Exact solver vs naive minimax (all forests n<=6, m in {1,2})", ok,
               f"{checked} instances, {mismatches} mismatches")
    assert ok


def test_sandwich(acceptance):
    refined = make_strategy("refined")
    exact_cache = {}
    covered, violations = 0, 0
    for m in (1, 2):
        for n in range(1, 9):
            for t, mult in enumerate_level_ordered_trees(n, 3):
                p = build_power(t, m)
                key = (canonical_form(t), m)
                if key not in exact_cache:
                    exact_cache[key] = exact_colg(p).value
                worst = bob_exhaustive(p, refined).worst_score
                covered += mult
                violations += not (exact_cache[key] <= worst <= bound_thm2(3, m))
    ok = violations == 0
    acceptance("Sandwich exact <= exhaustive(refined) <= bound", ok,
               f"{covered} labelled (tree, m) pairs, {violations} violations")
    assert ok


def test_bound_algebra(acceptance):
    bad = 0
    for delta in range(3, 13):
        for m in range(1, 9):
            bad += not bound_thm2(delta, m) <= bound_thm1(delta, m)
            bad += bound_thm2(delta, m) - bound_mm(delta, m) != 2
            bad += ancestor_bound(delta, m) + child_bound(m) != bound_mm(delta, m)
    acceptance("Bound algebra grid 3<=Δ<=12, 1<=m<=8", bad == 0, f"{bad} failures")
    assert bad == 0


def test_power_graph_oracle(acceptance):
    rng = np.random.default_rng(64)
    mismatches = 0
    for i in range(100):
        n = int(rng.integers(1, 65))
        delta = int(rng.integers(2, 6))
        kind = "random_tree" if i % 2 else "random_forest"
        f = generate(kind, n, delta, int(rng.integers(2**63)))
        for m in range(7):
            mismatches += set(build_power(f, m).edges()) != power_edges_by_distance(f, m)
    acceptance("Power graph vs all-pairs distance oracle", mismatches == 0,
               f"100 forests x 7 powers, {mismatches} mismatches")
    assert mismatches == 0
