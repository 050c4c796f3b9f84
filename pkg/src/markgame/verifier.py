"""Verification campaigns for the refined activation strategy.

Two campaign drivers produce :class:`CampaignReport` rows:

* :func:`verify_exhaustive` runs the exact Bob adversary on every small
  tree.  By default it walks level-ordered trees, one per class of labelled
  trees that Alice cannot tell apart (see below), and carries the class size
  in ``multiplicity``.
* :func:`verify_random` plays seeded random instances against heuristic Bobs.

Why level ordering is enough: with the default opening Alice roots every
tree at vertex 0, and vertex labels only enter her play when Rule B breaks
ties between unmarked vertices at equal depth.  Relabelling a tree so that
labels sort by (depth, old label) therefore maps her play, every Bob line,
and both monitors one-to-one onto the relabelled tree.
"""
from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator

import numpy as np

from .bounds import bound_for_forest
from .errors import CapacityError, InputError
from .forest import (
    ENUMERATION_CAP,
    Forest,
    build_power,
    enumerate_level_ordered_trees,
    enumerate_trees,
    generate,
)
from .game import play
from .monitors import InvariantMonitor
from .strategies import EXHAUSTIVE_CAP, bob_exhaustive, make_strategy

CSV_COLUMNS = (
    "kind", "n", "delta_cap", "delta_actual", "m", "alice", "bob", "seed", "score",
    "bound_thm1", "bound_thm2", "monitor_violations", "verdict",
)


@dataclass
class CampaignReport:
    kind: str
    n: int
    delta_cap: int
    delta_actual: int
    m: int
    alice: str
    bob: str
    seed: int | None
    score: int
    bound_thm1: int
    bound_thm2: int
    monitor_violations: list[str] = field(default_factory=list)
    edges: tuple[tuple[int, int], ...] = ()
    witness: list[int] = field(default_factory=list)
    multiplicity: int = 1

    @property
    def verdict(self) -> str:
        return "pass" if self.score <= self.bound_thm2 and not self.monitor_violations else "fail"

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def row(self) -> list:
        return [
            self.kind, self.n, self.delta_cap, self.delta_actual, self.m, self.alice, self.bob,
            "" if self.seed is None else self.seed, self.score, self.bound_thm1, self.bound_thm2,
            len(self.monitor_violations), self.verdict,
        ]


def write_csv(reports: Iterable[CampaignReport], stream) -> int:
    """Write reports as CSV; returns the number of failing rows."""
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    failures = 0
    for r in reports:
        w.writerow(r.row())
        failures += not r.passed
    return failures


def reports_to_csv(reports: Iterable[CampaignReport]) -> str:
    buf = io.StringIO()
    write_csv(reports, buf)
    return buf.getvalue()


def _bounds(delta_cap, m):
    return bound_for_forest(delta_cap, m, "1"), bound_for_forest(delta_cap, m, "2")


def _map(fn, items, jobs):
    if jobs <= 1:
        yield from map(fn, items)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        yield from pool.map(fn, items, chunksize=16)


# ---------------------------------------------------------------------------
# exhaustive


def _exhaustive_one(task) -> CampaignReport:
    forest, mult, delta, m, kind = task
    power = build_power(forest, m)
    thm1, thm2 = _bounds(delta, m)
    res = bob_exhaustive(power, make_strategy("refined"), bound=thm2,
                         monitors=[InvariantMonitor(power)])
    violations = [f"{msg} after {line}" for msg, line in res.violations]
    return CampaignReport(kind, forest.n, delta, forest.max_degree, m, "refined", "exhaustive",
                          None, res.worst_score, thm1, thm2, violations, forest.edges,
                          res.witness, mult)


def exhaustive_instances(n_max: int, delta: int, *, labelled: bool = False,
                         n_min: int = 1) -> Iterator[tuple[Forest, int]]:
    if labelled:
        if n_max > ENUMERATION_CAP:
            raise CapacityError(f"labelled enumeration is capped at n={ENUMERATION_CAP}")
        for n in range(n_min, n_max + 1):
            for t in enumerate_trees(n, delta):
                yield t, 1
    else:
        if n_max > EXHAUSTIVE_CAP:
            raise CapacityError(f"exhaustive campaigns are capped at n={EXHAUSTIVE_CAP}")
        for n in range(n_min, n_max + 1):
            yield from enumerate_level_ordered_trees(n, delta)


def verify_exhaustive(n_max: int, delta: int, m: int, *, labelled: bool = False,
                      jobs: int = 1, n_min: int = 1) -> Iterator[CampaignReport]:
    """Exact Bob against the refined Alice on every tree with ``n_min <= n <= n_max``.

    With ``labelled=True`` every labelled tree is played separately;
    otherwise one level-ordered representative per class is played and the
    class size is reported as ``multiplicity``.
    """
    if m < 1:
        raise InputError("m must be at least 1")
    kind = "labelled" if labelled else "level-ordered"
    tasks = ((t, mult, delta, m, kind) for t, mult in exhaustive_instances(n_max, delta, labelled=labelled, n_min=n_min))
    yield from _map(_exhaustive_one, tasks, jobs)


# ---------------------------------------------------------------------------
# random


def game_seeds(seed: int, count: int) -> list[int]:
    """Per-game 64-bit seeds derived from the campaign seed."""
    ss = np.random.SeedSequence(seed)
    return [int(c.generate_state(1, np.uint64)[0]) for c in ss.spawn(count)]


def bob_generator(game_seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([game_seed, 1])))


def _random_one(task) -> CampaignReport:
    kind, n, delta, m, bob_kind, game_seed = task
    forest = generate(kind, n, delta, game_seed)
    power = build_power(forest, m)
    thm1, thm2 = _bounds(delta, m)
    alice = make_strategy("refined")
    monitor = InvariantMonitor(power)
    if bob_kind == "exhaustive":
        res = bob_exhaustive(power, alice, bound=thm2, monitors=[monitor])
        score, witness = res.worst_score, res.witness
        violations = [f"{msg} after {line}" for msg, line in res.violations]
    else:
        rep = play(power, alice, make_strategy(bob_kind), rng=bob_generator(game_seed), monitors=[monitor])
        score, witness, violations = rep.score, list(rep.ordering), list(rep.violations)
    return CampaignReport(kind, n, delta, forest.max_degree, m, "refined", bob_kind, game_seed,
                          score, thm1, thm2, violations, forest.edges, witness)


def verify_random(count: int, n: int, delta: int, m: int, bob_kind: str, seed: int, *,
                  kind: str = "random_tree", jobs: int = 1) -> Iterator[CampaignReport]:
    """Refined Alice against a heuristic Bob on ``count`` seeded instances.

    Game ``i`` uses ``game_seeds(seed, count)[i]`` both to generate its
    forest and, through :func:`bob_generator`, to drive a random Bob.
    """
    if count < 0 or m < 1:
        raise InputError("count must be non-negative and m at least 1")
    if bob_kind not in ("random", "greedy", "exhaustive"):
        raise InputError(f"unknown Bob {bob_kind!r}")
    tasks = [(kind, n, delta, m, bob_kind, s) for s in game_seeds(seed, count)]
    yield from _map(_random_one, tasks, jobs)
