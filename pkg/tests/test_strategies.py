import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from markgame import (
    CapacityError,
    Forest,
    GameState,
    InputError,
    InvariantMonitor,
    StateError,
    alice_basic,
    alice_refined,
    apply_move,
    bob_exhaustive,
    bob_greedy,
    bob_random,
    build_power,
    bound_for_forest,
    enumerate_level_ordered_trees,
    enumerate_trees,
    generate,
    make_strategy,
    play,
)
from oracles import naive_worst_against


def _state(forest, m, moves):
    s = GameState(build_power(forest, m))
    for v in moves:
        apply_move(s, s.turn, v)
    return s


def test_refined_hand_trace(spec_tree):
    s = GameState(build_power(spec_tree, 1))
    assert alice_refined(s) == (0, "first")
    apply_move(s, "A", 0, "first")
    apply_move(s, "B", 4)
    assert set(s.moves[-1].activated) == {1, 2, 3, 4}
    assert alice_refined(s) == (1, "B")
    apply_move(s, "A", 1, "B")
    apply_move(s, "B", 6)
    assert alice_refined(s) == (3, "A1")
    assert alice_basic(s) == (3, "A1")
    apply_move(s, "A", 3, "A1")
    apply_move(s, "B", 8)
    assert alice_refined(s) == (2, "A2")
    assert alice_basic(s) == (2, "B")


def test_basic_and_refined_diverge_on_p6():
    # found by searching level-ordered trees n <= 9: Bob 4 then 5 on P_6 opened at 0
    s = _state(generate("path", 6), 1, [0, 4, 1, 5])
    assert alice_refined(s) == (3, "A2")
    assert alice_basic(s) == (2, "B")


def test_first_move_and_opening():
    s = GameState(build_power(Forest(1), 1))
    assert alice_basic(s) == (0, "first")
    s = GameState(build_power(generate("path", 5), 1))
    assert alice_refined(s, opening=2) == (2, "first")
    with pytest.raises(InputError):
        alice_refined(s, opening=9)


def test_alice_refuses_bob_turn():
    s = _state(generate("path", 3), 1, [0])
    with pytest.raises(StateError):
        alice_refined(s)


def test_rule_b_component_policy():
    # components {0,1,2}, {3,4}, {5}
    f = Forest(6, [(0, 1), (1, 2), (3, 4)])
    s = _state(f, 1, [0, 4])
    # Bob's component has unmarked vertex 3; Bob's own mark is its root
    assert alice_refined(s) == (3, "B")
    s = _state(f, 1, [0, 5])
    # Bob's component is finished: lowest component with an unmarked vertex
    assert alice_refined(s) == (1, "B")
    s = _state(f, 1, [0, 1, 2, 5])
    # component {3,4} has no root yet: its lowest vertex opens it
    assert alice_refined(s) == (3, "B")


def test_rule_b_tie_break_lowest_index():
    star = Forest(4, [(0, 3), (0, 2), (0, 1)])
    s = _state(star, 1, [0, 2])
    # Bob marked an active-path vertex with w = root, which is marked: rule B
    assert alice_refined(s) == (1, "B")


def test_bob_random_reproducible_and_forced():
    p5 = build_power(generate("path", 5), 1)
    runs = {}
    for seed in (1, 2, 3):
        a = play(p5, make_strategy("refined"), make_strategy("random"), seed=seed).ordering
        b = play(p5, make_strategy("refined"), make_strategy("random"), seed=seed).ordering
        assert a == b
        runs[seed] = a
    assert len(set(runs.values())) > 1
    s = _state(generate("path", 2), 1, [0])
    assert bob_random(s, np.random.default_rng(0)) == 1
    s = _state(generate("path", 2), 1, [0, 1])
    with pytest.raises(StateError):
        bob_random(s, np.random.default_rng(0))
    with pytest.raises(InputError):
        bob_random(_state(generate("path", 2), 1, [0]), None)


def _greedy_oracle(s):
    best, arg = None, None
    for v in s.unmarked().tolist():
        counts = s.counts.copy()
        counts[list(s.power.power_adjacency[v])] += 1
        vals = [counts[u] for u in s.unmarked().tolist() if u != v]
        obj = max(vals, default=-1)
        if best is None or obj > best:
            best, arg = obj, v
    return arg


def test_bob_greedy_examples():
    assert bob_greedy(_state(generate("path", 3), 1, [0])) == 2
    assert bob_greedy(_state(generate("path", 4), 1, [1])) == 3
    assert bob_greedy(_state(Forest(5), 1, [2])) == 0


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32), m=st.integers(1, 3), k=st.integers(0, 25))
def test_bob_greedy_matches_direct_objective(seed, m, k):
    f = generate("random_forest", 30, 4, seed)
    order = np.random.default_rng(seed).permutation(30)[: 2 * k + 1].tolist()
    s = _state(f, m, order)
    if s.finished:
        return
    assert bob_greedy(s) == _greedy_oracle(s)


def test_exhaustive_examples():
    refined = make_strategy("refined")
    assert bob_exhaustive(build_power(generate("path", 4), 1), refined).worst_score == 3
    assert bob_exhaustive(build_power(Forest(1), 1), refined).worst_score == 1
    worst, witness = bob_exhaustive(build_power(generate("path", 4), 1), refined)
    assert worst == 3 and sorted(witness) == [0, 1, 2, 3]


def test_exhaustive_rejects_random_alice_and_large_instances():
    with pytest.raises(InputError):
        bob_exhaustive(build_power(generate("path", 4), 1), make_strategy("random"))
    with pytest.raises(CapacityError):
        bob_exhaustive(build_power(generate("path", 13), 1), make_strategy("refined"))


@pytest.mark.parametrize("m", [1, 2])
def test_exhaustive_matches_unmemoised_search(m):
    refined = make_strategy("refined")
    for n in range(1, 8):
        for t, _ in enumerate_level_ordered_trees(n, 3):
            got = bob_exhaustive(build_power(t, m), refined)
            want = naive_worst_against(t, m, lambda s: alice_refined(s))
            assert got.worst_score == want, t


def test_exhaustive_witness_replays_to_worst_score(spec_tree):
    from markgame import score

    p = build_power(spec_tree, 2)
    res = bob_exhaustive(p, make_strategy("refined"))
    assert score(p, res.witness).score == res.worst_score


def test_exhaustive_bound_early_exit():
    p = build_power(generate("path", 6), 1)
    res = bob_exhaustive(p, make_strategy("greedy-alice"), bound=2)
    assert res.exceeded and res.worst_score > 2
    from markgame import score

    assert score(p, res.witness).score == res.worst_score


def test_exhaustive_dominates_heuristic_bobs():
    refined = make_strategy("refined")
    for seed in range(15):
        f = generate("random_tree", 10, 3, seed)
        for m in (1, 2):
            p = build_power(f, m)
            worst = bob_exhaustive(p, refined).worst_score
            assert play(p, refined, make_strategy("greedy")).score <= worst
            for s2 in range(3):
                assert play(p, refined, make_strategy("random"), seed=s2).score <= worst


@pytest.mark.parametrize("n", range(1, 10))
def test_faigle_bound_small_trees(n):
    refined = make_strategy("refined")
    for t, _ in enumerate_level_ordered_trees(n, 3):
        assert bob_exhaustive(build_power(t, 1), refined).worst_score <= 4


def _monitored_game(f, m, bob, seed):
    p = build_power(f, m)
    return play(p, make_strategy("refined"), make_strategy(bob), seed=seed,
                monitors=[InvariantMonitor(p)], validate=True)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32), delta=st.integers(3, 5), m=st.integers(1, 3),
       bob=st.sampled_from(["random", "greedy"]))
def test_refined_monitors_never_fire(seed, delta, m, bob):
    f = generate("random_forest", 60, delta, seed)
    rep = _monitored_game(f, m, bob, seed)
    assert not rep.violations
    assert rep.score <= bound_for_forest(f.max_degree, m)


@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**32), m=st.integers(1, 3))
def test_bob_raises_counts_by_at_most_one(seed, m):
    f = generate("random_tree", 40, 4, seed)
    p = build_power(f, m)
    s = GameState(p)
    alice, bob = make_strategy("refined"), make_strategy("random")
    rng = np.random.default_rng(seed)
    while not s.finished:
        v, rule = alice.choose(s, rng)
        apply_move(s, "A", v, rule)
        if s.finished:
            break
        before = s.counts.copy()
        apply_move(s, "B", bob.choose(s, rng)[0])
        assert np.all(s.counts[~s.marked] - before[~s.marked] <= 1)


def test_monitor_catches_planted_violation():
    # marking both leaves of a cherry leaves the centre with two marked child subtrees
    f = Forest(4, [(0, 1), (1, 2), (1, 3)])
    s = _state(f, 1, [0, 2, 3])
    assert InvariantMonitor(s.power)(s)


def test_labelled_exhaustive_equals_level_ordered_class_value():
    refined = make_strategy("refined")
    from markgame import level_order_relabel

    for n in (5, 6):
        reps = {t: bob_exhaustive(build_power(t, 2), refined).worst_score
                for t, _ in enumerate_level_ordered_trees(n, 3)}
        for t in enumerate_trees(n, 3):
            rep = t.relabel(level_order_relabel(t))
            assert bob_exhaustive(build_power(t, 2), refined).worst_score == reps[rep]
