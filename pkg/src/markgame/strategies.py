"""Alice's activation strategies, Bob adversaries, and the exhaustive Bob search."""
from __future__ import annotations

import sys
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import CapacityError, InputError, StateError
from .forest import PowerView
from .game import GameState, Player, apply_move

EXHAUSTIVE_CAP = 12

Choice = tuple[int, "str | None"]


@dataclass(frozen=True)
class Strategy:
    """A named move chooser ``choose(state, rng) -> (vertex, rule tag or None)``."""

    name: str
    choose: Callable[[GameState, "np.random.Generator | None"], Choice] = field(repr=False)
    deterministic: bool = True


# ---------------------------------------------------------------------------
# Alice


def _rule_b(s: GameState) -> int:
    f = s.forest
    c = None
    if s.last_bob_move is not None:
        c = f.component_id[s.last_bob_move]
        if s.comp_unmarked[c] == 0:
            c = None
    if c is None:
        c = next(i for i, left in enumerate(s.comp_unmarked) if left)
    if s.root[c] is None:
        return f.components[c][0]
    return s.level_order[c][s.cursor[c]]


def _activation(s: GameState, opening: int | None, refined: bool) -> Choice:
    if s.turn is not Player.ALICE:
        raise StateError("Alice strategy called on Bob's turn")
    if s.finished:
        raise StateError("no unmarked vertex left")
    if not s.order:
        v = 0 if opening is None else opening
        if not 0 <= v < s.n:
            raise InputError(f"opening vertex {v} out of range for n={s.n}")
        return v, "first"
    v, w = s.last_bob_move, s.last_bob_w
    if v is not None and v != w:
        if not s.marked[w]:
            return w, "A1"
        if refined:
            x = s.parent[w]
            while x >= 0:
                if not s.marked[x]:
                    return x, "A2"
                x = s.parent[x]
    return _rule_b(s), "B"


def alice_refined(s: GameState, opening: int | None = None) -> Choice:
    """Refined activation strategy (rules A1, A2, B)."""
    return _activation(s, opening, refined=True)


def alice_basic(s: GameState, opening: int | None = None) -> Choice:
    """Basic activation strategy (rules A1 and B only)."""
    return _activation(s, opening, refined=False)


def alice_greedy(s: GameState, opening: int | None = None) -> Choice:
    # mark the most threatened unmarked vertex; lowest index on ties
    if not s.order and opening is not None:
        return opening, "first"
    return int(np.where(s.marked, -1, s.counts).argmax()), None


# ---------------------------------------------------------------------------
# Bob


def bob_random(s: GameState, rng: np.random.Generator | None) -> int:
    if rng is None:
        raise InputError("bob_random needs a seeded generator")
    unmarked = s.unmarked()
    if not len(unmarked):
        raise StateError("no unmarked vertex left")
    return int(unmarked[rng.integers(len(unmarked))])


def _row_ids(p: PowerView) -> np.ndarray:
    rows = p.__dict__.get("_row_ids")
    if rows is None:
        rows = np.repeat(np.arange(p.n), p.degrees)
        p.__dict__["_row_ids"] = rows
    return rows


def bob_greedy(s: GameState) -> int:
    """Mark the vertex that maximises the largest marked-neighbour count left on an unmarked vertex.

    Ties go to the lowest index.
    """
    if s.finished:
        raise StateError("no unmarked vertex left")
    p = s.power
    c = np.where(s.marked, -1, s.counts)
    # best count among other unmarked vertices, via the top two values
    top = int(c.argmax())
    rest = c.copy()
    rest[top] = -1
    others = np.full(s.n, c[top])
    others[top] = rest.max() if s.n > 1 else -1
    # best count among unmarked power-neighbours after they gain one
    vals = c[p.indices]
    vals = np.where(vals >= 0, vals + 1, -1)
    near = np.full(s.n, -1, dtype=np.int64)
    np.maximum.at(near, _row_ids(p), vals)
    objective = np.maximum(near, others)
    objective[s.marked] = -2
    return int(objective.argmax())


# ---------------------------------------------------------------------------
# registry


def make_strategy(name: str, opening: int | None = None) -> Strategy:
    """Build a per-move strategy from its CLI name."""
    if name == "refined":
        return Strategy("refined", lambda s, rng: alice_refined(s, opening))
    if name == "basic":
        return Strategy("basic", lambda s, rng: alice_basic(s, opening))
    if name == "greedy-alice":
        return Strategy("greedy-alice", lambda s, rng: alice_greedy(s, opening))
    if name == "random":
        return Strategy("random", lambda s, rng: (bob_random(s, rng), None), deterministic=False)
    if name == "greedy":
        return Strategy("greedy", lambda s, rng: (bob_greedy(s), None))
    raise InputError(f"unknown strategy {name!r}")


ALICE_NAMES = ("refined", "basic", "greedy-alice")
BOB_NAMES = ("random", "greedy", "exhaustive")


# ---------------------------------------------------------------------------
# exhaustive adversary


@dataclass
class ExhaustiveResult:
    """Outcome of :func:`bob_exhaustive`.

    ``witness`` lists every move (both players) of a line reaching
    ``worst_score``.  When ``exceeded`` is set the search stopped at the first
    line scoring above ``bound`` and ``worst_score`` is that line's score.
    """

    worst_score: int
    witness: list[int]
    exceeded: bool = False
    violations: list[tuple[str, list[int]]] = field(default_factory=list)
    states: int = 0

    def __iter__(self):
        yield self.worst_score
        yield self.witness


class _Exceeded(Exception):
    pass


def bob_exhaustive(
    p: PowerView,
    alice: Strategy,
    bound: int | None = None,
    *,
    monitors=(),
    cap: int = EXHAUSTIVE_CAP,
) -> ExhaustiveResult:
    """Worst score Bob can force against a fixed deterministic Alice.

    Depth-first search over every Bob move with Alice's replies interleaved.
    Positions are memoised on :meth:`GameState.key`, which determines the
    rest of the game once Alice's strategy is fixed.  The value stored per
    position is the largest back degree still to come, so it is independent
    of the line that reached the position.  Monitors run once per distinct
    position reached after an Alice move.
    """
    if not alice.deterministic:
        raise InputError(f"bob_exhaustive needs a deterministic Alice, got {alice.name!r}")
    if p.n > cap:
        raise CapacityError(f"bob_exhaustive is capped at n={cap}, got {p.n}")
    result = ExhaustiveResult(worst_score=0, witness=[])
    if p.n == 0:
        return result
    monitors = list(monitors)
    memo: dict[tuple, tuple[int, int]] = {}

    def alice_move(s: GameState) -> int:
        v, rule = alice.choose(s, None)
        bd = int(s.counts[v])
        apply_move(s, Player.ALICE, v, rule)
        key = s.key()
        if monitors and key not in memo:
            for mon in monitors:
                for msg in mon(s):
                    result.violations.append((msg, list(s.order)))
        return bd

    def search(s: GameState, prefix: int) -> int:
        # value = largest back degree among moves still to be made; Bob to move
        key = s.key()
        hit = memo.get(key)
        if hit is not None:
            return hit[0]
        best, best_move = -1, -1
        for b in s.unmarked().tolist():
            t = s.copy()
            val = int(t.counts[b])
            apply_move(t, Player.BOB, b)
            try:
                if not t.finished:
                    val = max(val, alice_move(t))
                    if not t.finished:
                        val = max(val, search(t, max(prefix, val)))
            except _Exceeded:
                memo[key] = (-1, b)
                raise
            if val > best:
                best, best_move = val, b
            if bound is not None and 1 + max(prefix, val) > bound:
                memo[key] = (val, b)
                raise _Exceeded
        memo[key] = (best, best_move)
        result.states += 1
        return best

    start = GameState(p)
    first = alice_move(start)
    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 4 * p.n + 100))
    try:
        if start.finished:
            value = first
        else:
            value = max(first, search(start.copy(), first))
    except _Exceeded:
        result.exceeded = True
    finally:
        sys.setrecursionlimit(limit)

    # replay the stored best replies to rebuild the witness line
    s = start
    while not s.finished:
        b = memo[s.key()][1]
        apply_move(s, Player.BOB, b)
        if not s.finished:
            v, rule = alice.choose(s, None)
            apply_move(s, Player.ALICE, v, rule)
    result.witness = list(s.order)
    result.worst_score = s.score_so_far()
    if not result.exceeded:
        assert result.worst_score == 1 + value
    return result
