"""Runtime checks of the refined strategy's invariants.

Monitors are callables ``monitor(state) -> list[str]`` evaluated after
Alice's moves.  A non-empty result means the engine or the strategy is
wrong; the invariants themselves are theorems.
"""
from __future__ import annotations

import numpy as np

from .bounds import bound_for_forest
from .game import GameState


def child_subtree_violations(s: GameState) -> list[str]:
    """Unmarked vertices with two or more children whose subtrees hold a marked vertex."""
    bad = np.flatnonzero(~s.marked & (s.marked_children >= 2))
    return [f"unmarked {int(u)} has {int(s.marked_children[u])} children with marked subtrees" for u in bad]


def neighbour_count_violations(s: GameState, ceiling: int) -> list[str]:
    """Unmarked vertices with more than ``ceiling`` marked power-neighbours."""
    bad = np.flatnonzero(~s.marked & (s.counts > ceiling))
    return [f"unmarked {int(u)} has {int(s.counts[u])} > {ceiling} marked neighbours" for u in bad]


class InvariantMonitor:
    """Both refined-strategy invariants for one power view.

    ``delta`` defaults to the forest's own maximum degree.  Degrees below 3
    use the geometric-sum form of the ceiling.
    """

    def __init__(self, power, delta: int | None = None):
        self.power = power
        self.delta = power.base.max_degree if delta is None else delta
        m = power.radius_m
        self.ceiling = bound_for_forest(self.delta, m, "mm") if m >= 1 else 0

    def __call__(self, s: GameState) -> list[str]:
        return child_subtree_violations(s) + neighbour_count_violations(s, self.ceiling)
