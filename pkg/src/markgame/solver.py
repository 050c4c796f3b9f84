"""Exact game colouring numbers of small graphs.

The search works on the threshold game: Alice keeps the final score at most
``s`` exactly when no unmarked vertex ever has ``s`` or more marked
neighbours.  A vertex that reaches ``s`` marked neighbours while unmarked
will be marked later with back degree at least ``s``.  Conversely, if that
never happens every vertex is marked with back degree below ``s``.  A
position is therefore the set of marked vertices alone; whose turn it is
follows from the parity of its size.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import CapacityError
from .forest import PowerView
from .game import GameState

SOLVER_CAP = 24


@dataclass(frozen=True)
class SolverResult:
    value: int
    principal_variation: tuple[int, ...]
    nodes_expanded: int


class ThresholdGame:
    """Memoised win/loss table of the threshold game at bound ``s``."""

    def __init__(self, power: PowerView, s: int, cap: int = SOLVER_CAP):
        if power.n > cap:
            raise CapacityError(f"exact solver is capped at n={cap}, got {power.n}")
        self.power = power
        self.s = s
        self.n = power.n
        self.nbr = power.masks
        self.adj = power.power_adjacency
        self.full = (1 << self.n) - 1
        self.memo: dict[int, bool] = {}
        self.nodes = 0

    def threatened(self, mask: int, v: int) -> bool:
        """True if marking ``v`` (now in ``mask``) left an unmarked neighbour at the threshold."""
        s, nbr = self.s, self.nbr
        return any(not (mask >> u) & 1 and (nbr[u] & mask).bit_count() >= s for u in self.adj[v])

    def _moves(self, mask: int) -> list[int]:
        # vertices next to the most threatened unmarked vertices first
        nbr, adj = self.nbr, self.adj
        free = [v for v in range(self.n) if not (mask >> v) & 1]
        pressure = {u: (nbr[u] & mask).bit_count() for u in free}
        return sorted(free, key=lambda v: -max((pressure.get(u, -1) for u in adj[v]), default=-1))

    def alice_wins(self, mask: int = 0) -> bool:
        """Whether Alice, with the position ``mask`` reached safely, keeps the score within ``s``."""
        if mask == self.full:
            return True
        hit = self.memo.get(mask)
        if hit is not None:
            return hit
        self.nodes += 1
        alice_to_move = mask.bit_count() % 2 == 0
        result = not alice_to_move
        for v in self._moves(mask):
            nxt = mask | (1 << v)
            ok = not self.threatened(nxt, v) and self.alice_wins(nxt)
            if ok == alice_to_move:
                result = ok
                break
        self.memo[mask] = result
        return result

    def safe_move(self, mask: int, alice: bool) -> int | None:
        """A move keeping (Alice) or breaking (Bob) the threshold, if one exists."""
        for v in self._moves(mask):
            nxt = mask | (1 << v)
            ok = not self.threatened(nxt, v) and self.alice_wins(nxt)
            if ok == alice:
                return v
        return None


def alice_wins(power: PowerView, s: int) -> bool:
    """Whether Alice, moving first, can hold the score of ``power`` to at most ``s``."""
    if s < 1:
        if power.n > SOLVER_CAP:
            raise CapacityError(f"exact solver is capped at n={SOLVER_CAP}, got {power.n}")
        return power.n == 0
    return ThresholdGame(power, s).alice_wins(0)


def exact_colg(power: PowerView) -> SolverResult:
    """Game colouring number by a linear scan over thresholds from 1."""
    if power.n > SOLVER_CAP:
        raise CapacityError(f"exact solver is capped at n={SOLVER_CAP}, got {power.n}")
    if power.n == 0:
        return SolverResult(0, (), 0)
    nodes = 0
    lower = None
    s = 1
    while True:
        game = ThresholdGame(power, s)
        won = game.alice_wins(0)
        nodes += game.nodes
        if won:
            break
        lower = game
        s += 1
    line = _principal_variation(game, lower)
    return SolverResult(s, line, nodes)


def _principal_variation(win: ThresholdGame, lose: ThresholdGame | None) -> tuple[int, ...]:
    # Alice holds threshold s; Bob breaks threshold s - 1, after which any move will do
    mask = 0
    line = []
    broken = lose is None
    for i in range(win.n):
        v = None
        if i % 2 == 0:
            v = win.safe_move(mask, alice=True)
        elif not broken:
            v = lose.safe_move(mask, alice=False)
        if v is None:
            v = next(u for u in range(win.n) if not (mask >> u) & 1)
        line.append(v)
        mask |= 1 << v
        if not broken and lose.threatened(mask, v):
            broken = True
    return tuple(line)


class OptimalAlice:
    """Deterministic Alice that plays the solver's winning moves at the game value."""

    deterministic = True

    def __init__(self, power: PowerView):
        self.name = "optimal"
        self.value = exact_colg(power).value
        self.game = ThresholdGame(power, self.value)

    def choose(self, state: GameState, rng=None):
        v = self.game.safe_move(state.mask, alice=True)
        if v is None:
            # position already lost at this threshold (cannot arise from play)
            v = int(state.unmarked()[0])
        return v, None

