"""Maker-breaker marking game on powers of forests.

Build a forest, take its m-th power, play Alice's activation strategies
against Bob adversaries, and compute exact game colouring numbers of small
instances.
"""
from .bounds import ancestor_bound, bound_for_forest, bound_mm, bound_thm1, bound_thm2, child_bound
from .errors import (
    CapacityError,
    DomainError,
    InputError,
    MarkGameError,
    RuleViolation,
    StateError,
    StrategyFault,
)
from .forest import (
    Forest,
    PowerView,
    build_power,
    canonical_form,
    distance,
    enumerate_forests,
    enumerate_level_ordered_trees,
    enumerate_trees,
    generate,
    level_order_relabel,
    read_forest,
    write_forest,
)
from .game import (
    GameState,
    MoveRecord,
    Player,
    ScoreReport,
    apply_move,
    back_degree,
    first_active_on_path,
    play,
    read_trace,
    replay,
    score,
)
from .monitors import InvariantMonitor, child_subtree_violations, neighbour_count_violations
from .solver import OptimalAlice, SolverResult, ThresholdGame, alice_wins, exact_colg
from .strategies import (
    ExhaustiveResult,
    Strategy,
    alice_basic,
    alice_greedy,
    alice_refined,
    bob_exhaustive,
    bob_greedy,
    bob_random,
    make_strategy,
)
from .verifier import CampaignReport, verify_exhaustive, verify_random, write_csv

__version__ = "0.1.0"
