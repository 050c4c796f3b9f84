"""Move-by-move engine for the marking game played on the power of a forest.

The engine only checks the rules of the game itself (alternation, no
re-marking).  It keeps the activation bookkeeping that activation strategies
read: per component a root (the first marked vertex), parent pointers towards
that root, and the set of active vertices.  Marking a vertex activates every
inactive vertex on its path to the root, whichever player moved.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import InputError, RuleViolation, StateError, StrategyFault
from .forest import PowerView

RULE_TAGS = ("A1", "A2", "B", "first")


class Player(str, Enum):
    ALICE = "A"
    BOB = "B"

    @property
    def other(self) -> "Player":
        return Player.BOB if self is Player.ALICE else Player.ALICE


@dataclass(frozen=True)
class MoveRecord:
    index: int
    player: Player
    vertex: int
    rule: str | None = None
    activated: tuple[int, ...] = ()

    def to_json(self) -> str:
        return json.dumps(
            {"i": self.index, "player": self.player.value, "v": self.vertex,
             "rule": self.rule, "activated": list(self.activated)},
            separators=(",", ":"),
        )

    @classmethod
    def from_json(cls, line: str) -> "MoveRecord":
        try:
            obj = json.loads(line)
            return cls(int(obj["i"]), Player(obj["player"]), int(obj["v"]),
                       obj.get("rule"), tuple(int(x) for x in obj.get("activated", ())))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed trace line {line!r}: {exc}") from None


@dataclass(frozen=True)
class ScoreReport:
    ordering: tuple[int, ...]
    back_degrees: tuple[int, ...]
    score: int
    violations: tuple[str, ...] = field(default=(), compare=False)


class GameState:
    """Mutable position of one game.

    Attributes other than ``power`` are bookkeeping owned by the engine;
    strategies read them but must not write them.  ``counts[u]`` is the number
    of marked power-neighbours of ``u``; ``marked_children[u]`` is the number
    of children of ``u`` (towards the component root) whose subtree holds a
    marked vertex.
    """

    def __init__(self, power: PowerView):
        f = power.base
        n = f.vertex_count
        self.power = power
        self.forest = f
        self.n = n
        self.marked = np.zeros(n, dtype=bool)
        self.active = np.zeros(n, dtype=bool)
        self.counts = np.zeros(n, dtype=np.int64)
        self.marked_children = np.zeros(n, dtype=np.int64)
        self.order: list[int] = []
        self.back_degrees = [-1] * n
        self.parent = [-1] * n
        self.depth = [-1] * n
        self.has_marked = [False] * n
        self.root: list[int | None] = [None] * f.component_count
        self.comp_unmarked = [len(c) for c in f.components]
        self.level_order: list[list[int] | None] = [None] * f.component_count
        self.cursor = [0] * f.component_count
        self.turn = Player.ALICE
        self.last_bob_move: int | None = None
        self.last_bob_w: int | None = None
        self.mask = 0
        self.moves: list[MoveRecord] = []

    def copy(self) -> "GameState":
        new = GameState.__new__(GameState)
        new.__dict__.update(self.__dict__)
        for name in ("marked", "active", "counts", "marked_children"):
            setattr(new, name, getattr(self, name).copy())
        for name in ("order", "back_degrees", "parent", "depth", "has_marked",
                     "root", "comp_unmarked", "level_order", "cursor", "moves"):
            setattr(new, name, list(getattr(self, name)))
        return new

    @property
    def finished(self) -> bool:
        return len(self.order) == self.n

    def key(self) -> tuple:
        """Hashable summary that determines all future bookkeeping."""
        return self.mask, tuple(self.root)

    def unmarked(self) -> np.ndarray:
        return np.flatnonzero(~self.marked)

    def children(self, x: int) -> list[int]:
        return [y for y in self.forest.adjacency[x] if self.parent[y] == x]

    def component_root(self, v: int) -> int | None:
        return self.root[self.forest.component_id[v]]

    def path_to_root(self, v: int) -> list[int]:
        if self.component_root(v) is None:
            raise StateError(f"component of {v} has no root yet")
        path = [v]
        while self.parent[path[-1]] >= 0:
            path.append(self.parent[path[-1]])
        return path

    def score_so_far(self) -> int:
        return 1 + max((self.back_degrees[v] for v in self.order), default=-1)

    def validate(self) -> None:
        """Raise AssertionError if a bookkeeping invariant fails."""
        f = self.forest
        assert len(set(self.order)) == len(self.order)
        assert set(self.order) == set(np.flatnonzero(self.marked).tolist())
        assert not np.any(self.marked & ~self.active)
        for c, r in enumerate(self.root):
            comp = f.components[c]
            if r is None:
                assert not any(self.active[v] for v in comp)
                continue
            assert self.active[r] and self.parent[r] == -1
            for v in comp:
                if self.active[v] and v != r:
                    assert self.active[self.parent[v]], f"active {v} has inactive parent"
                if v != r:
                    p = self.parent[v]
                    assert p in f.adjacency[v] and self.depth[v] == self.depth[p] + 1
        expected = np.zeros(self.n, dtype=np.int64)
        for v in self.order:
            expected[list(self.power.power_adjacency[v])] += 1
        assert np.array_equal(expected, self.counts)
        assert self.mask == sum(1 << v for v in self.order)


def _set_root(s: GameState, v: int) -> None:
    f = s.forest
    c = f.component_id[v]
    s.root[c] = v
    s.depth[v] = 0
    s.parent[v] = -1
    bfs = [v]
    for x in bfs:
        for y in f.adjacency[x]:
            if y != s.parent[x]:
                s.parent[y] = x
                s.depth[y] = s.depth[x] + 1
                bfs.append(y)
    s.level_order[c] = sorted(bfs, key=lambda x: (s.depth[x], x))
    s.cursor[c] = 0


def first_active_on_path(s: GameState, v: int) -> int:
    """First active vertex met when walking from ``v`` to its component root."""
    v = s.forest.check_vertex(v)
    if s.component_root(v) is None:
        raise StateError(f"component of {v} has no root yet")
    x = v
    while not s.active[x]:
        x = s.parent[x]
    return x


def apply_move(s: GameState, player: Player, v: int, rule: str | None = None) -> MoveRecord:
    """Mark ``v`` for ``player`` and update the activation bookkeeping."""
    player = Player(player)
    if player is not s.turn:
        raise RuleViolation(f"it is {s.turn.name}'s turn, not {player.name}'s")
    if not isinstance(v, (int, np.integer)) or not 0 <= v < s.n:
        raise RuleViolation(f"vertex {v!r} out of range for n={s.n}")
    v = int(v)
    if s.marked[v]:
        raise RuleViolation(f"vertex {v} is already marked")
    if rule is not None and rule not in RULE_TAGS:
        raise RuleViolation(f"unknown rule tag {rule!r}")

    c = s.forest.component_id[v]
    if s.root[c] is None:
        _set_root(s, v)
        w = v
        activated = [v]
        s.active[v] = True
    else:
        w = first_active_on_path(s, v)
        activated = []
        x = v
        while not s.active[x]:
            s.active[x] = True
            activated.append(x)
            x = s.parent[x]

    s.back_degrees[v] = int(s.counts[v])
    s.marked[v] = True
    s.order.append(v)
    s.mask |= 1 << v
    s.counts[s.power.neighbours(v)] += 1
    s.comp_unmarked[c] -= 1
    lo = s.level_order[c]
    while s.cursor[c] < len(lo) and s.marked[lo[s.cursor[c]]]:
        s.cursor[c] += 1
    x = v
    while x >= 0 and not s.has_marked[x]:
        s.has_marked[x] = True
        x = s.parent[x]
        if x >= 0:
            s.marked_children[x] += 1

    if player is Player.BOB:
        s.last_bob_move = v
        s.last_bob_w = w
    s.turn = player.other
    rec = MoveRecord(len(s.order), player, v, rule if player is Player.ALICE else None, tuple(activated))
    s.moves.append(rec)
    return rec


# ---------------------------------------------------------------------------
# scoring


def back_degree(p: PowerView, ordering: Sequence[int], v: int) -> int:
    """Number of power-neighbours of ``v`` that precede it in ``ordering``."""
    pos = {x: i for i, x in enumerate(ordering)}
    if v not in pos:
        raise InputError(f"vertex {v} does not occur in the ordering")
    return sum(1 for u in p.power_adjacency[v] if pos.get(u, len(ordering)) < pos[v])


def score(p: PowerView, ordering: Sequence[int]) -> ScoreReport:
    ordering = tuple(int(v) for v in ordering)
    if sorted(ordering) != list(range(p.n)):
        raise InputError("score needs a permutation of all vertices")
    pos = [0] * p.n
    for i, v in enumerate(ordering):
        pos[v] = i
    bd = tuple(sum(1 for u in p.power_adjacency[v] if pos[u] < pos[v]) for v in range(p.n))
    return ScoreReport(ordering, bd, 1 + max(bd, default=-1))


# ---------------------------------------------------------------------------
# playing


def _sink_writer(sink) -> Callable[[MoveRecord], None] | None:
    if sink is None:
        return None
    if hasattr(sink, "write"):
        return lambda rec: sink.write(rec.to_json() + "\n")
    return sink


def play(
    p: PowerView,
    alice,
    bob,
    trace_sink=None,
    *,
    seed: int | None = None,
    rng: np.random.Generator | None = None,
    monitors: Iterable[Callable[[GameState], list[str]]] = (),
    validate: bool = False,
) -> ScoreReport:
    """Play a full game, Alice first, and score the resulting ordering.

    ``alice`` and ``bob`` are strategies (objects with ``name`` and
    ``choose(state, rng)``).  ``trace_sink`` is a callable taking each
    :class:`MoveRecord` or a text stream receiving JSON lines.  Each monitor
    is called after every Alice move and returns violation messages.
    """
    if rng is None and seed is not None:
        rng = np.random.Generator(np.random.PCG64(seed))
    emit = _sink_writer(trace_sink)
    monitors = list(monitors)
    s = GameState(p)
    violations: list[str] = []
    while not s.finished:
        strat = alice if s.turn is Player.ALICE else bob
        v, rule = strat.choose(s, rng)
        try:
            rec = apply_move(s, s.turn, v, rule)
        except RuleViolation as exc:
            raise StrategyFault(strat.name, str(exc)) from None
        if validate:
            s.validate()
        if emit is not None:
            emit(rec)
        if rec.player is Player.ALICE:
            for mon in monitors:
                violations.extend(f"move {rec.index}: {msg}" for msg in mon(s))
    rep = ScoreReport(tuple(s.order), tuple(s.back_degrees), s.score_so_far(), tuple(violations))
    return rep


def replay(p: PowerView, records: Iterable[MoveRecord]) -> GameState:
    """Rebuild the state reached by a sequence of move records."""
    s = GameState(p)
    for rec in records:
        got = apply_move(s, rec.player, rec.vertex, rec.rule)
        if got != rec:
            raise InputError(f"trace record {rec} disagrees with replay {got}")
    return s


def read_trace(lines: Iterable[str]) -> list[MoveRecord]:
    return [MoveRecord.from_json(line) for line in lines if line.strip()]
