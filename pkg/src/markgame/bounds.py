"""Closed-form upper bounds on the game colouring number of forest powers.

All functions return exact integers.  The closed forms divide by
``delta - 2`` and are only stated for ``delta >= 3``; pass
``geometric=True`` to evaluate the equivalent geometric sums, which stay
meaningful for paths (``delta == 2``).
"""
from __future__ import annotations

from .errors import DomainError


def _check(delta: int, m: int, geometric: bool) -> None:
    if m < 1:
        raise DomainError(f"m must be at least 1, got {m}")
    if delta < 2 or (delta < 3 and not geometric):
        raise DomainError(
            f"closed forms need delta >= 3 (got {delta}); "
            "use geometric=True for the geometric-sum variant with delta >= 2"
        )


def ancestor_bound(delta: int, m: int) -> int:
    """Vertices within distance ``m`` on the parent side of a vertex: sum of (delta-1)^k, k < m."""
    _check(delta, m, geometric=True)
    return sum((delta - 1) ** k for k in range(m))


def child_bound(m: int) -> int:
    """Active descendants within distance ``m`` when every vertex has at most two active children."""
    if m < 1:
        raise DomainError(f"m must be at least 1, got {m}")
    return 2**m - 1


def bound_mm(delta: int, m: int, *, geometric: bool = False) -> int:
    """Ceiling on marked m-neighbours of any unmarked vertex after Alice's move."""
    _check(delta, m, geometric)
    if geometric:
        return ancestor_bound(delta, m) + child_bound(m)
    return ((delta - 1) ** m - 1) // (delta - 2) + 2**m - 1


def bound_thm2(delta: int, m: int, *, geometric: bool = False) -> int:
    """Score Alice can force with the refined activation strategy."""
    _check(delta, m, geometric)
    if geometric:
        return ancestor_bound(delta, m) + 2**m + 1
    return ((delta - 1) ** m - 1) // (delta - 2) + 2**m + 1


def bound_thm1(delta: int, m: int, *, geometric: bool = False) -> int:
    """Earlier bound obtained from the basic activation strategy."""
    _check(delta, m, geometric)
    if geometric:
        return 2 * ancestor_bound(delta, m) + 2
    return 2 * ((delta - 1) ** m - 1) // (delta - 2) + 2


def bound_for_forest(max_degree: int, m: int, theorem: str = "2") -> int:
    """Evaluate a bound for a concrete forest, using the geometric form below delta 3."""
    delta = max(max_degree, 2)
    fn = {"1": bound_thm1, "2": bound_thm2, "mm": bound_mm}[str(theorem)]
    return fn(delta, m, geometric=delta < 3)
