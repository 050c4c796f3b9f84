"""Command-line front end.

Exit codes: 0 success, 1 verification failure or monitor violation,
2 usage error, 3 capacity error.
"""
from __future__ import annotations

import argparse
import sys
from contextlib import nullcontext
from pathlib import Path

from . import bounds
from .errors import CapacityError, DomainError, InputError, MarkGameError
from .forest import KINDS, build_power, format_edge_list, generate, read_forest, write_forest
from .game import play
from .monitors import InvariantMonitor
from .solver import OptimalAlice, alice_wins, exact_colg
from .strategies import ALICE_NAMES, BOB_NAMES, Strategy, bob_exhaustive, make_strategy
from .verifier import verify_exhaustive, verify_random, write_csv

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return value


def _out(path):
    if path is None or path == "-":
        return nullcontext(sys.stdout)
    return open(path, "w", newline="")


def _parser() -> argparse.ArgumentParser:
    p = _Parser(prog="markgame", description="Marking game on powers of forests.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="generate a forest")
    g.add_argument("--kind", required=True, choices=KINDS)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--max-degree", type=int)
    g.add_argument("--seed", type=_seed)
    g.add_argument("-o", "--output")

    w = sub.add_parser("power", help="write the m-th power as an edge list")
    w.add_argument("-i", "--input", required=True)
    w.add_argument("-m", type=int, required=True)
    w.add_argument("-o", "--output")

    pl = sub.add_parser("play", help="play one game and print its score")
    pl.add_argument("-i", "--input", required=True)
    pl.add_argument("-m", type=int, required=True)
    pl.add_argument("--alice", default="refined", choices=ALICE_NAMES + ("optimal",))
    pl.add_argument("--bob", default="greedy", choices=BOB_NAMES)
    pl.add_argument("--seed", type=_seed)
    pl.add_argument("--trace")
    pl.add_argument("--opening", type=int)
    pl.add_argument("--verbose", action="store_true")

    e = sub.add_parser("exact", help="exact game colouring number")
    e.add_argument("-i", "--input", required=True)
    e.add_argument("-m", type=int, required=True)
    e.add_argument("--threshold", type=int)
    e.add_argument("--verbose", action="store_true")

    v = sub.add_parser("verify", help="run a verification campaign and write a CSV report")
    v.add_argument("--mode", required=True, choices=("exhaustive", "random"))
    v.add_argument("--n-max", type=int)
    v.add_argument("--labelled", action="store_true")
    v.add_argument("--count", type=int)
    v.add_argument("--n", type=int)
    v.add_argument("--kind", default="random_tree", choices=KINDS)
    v.add_argument("--bob", default="greedy", choices=("random", "greedy", "exhaustive"))
    v.add_argument("--delta", type=int, required=True)
    v.add_argument("-m", type=int, required=True)
    v.add_argument("--seed", type=_seed)
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("-o", "--output")
    v.add_argument("--verbose", action="store_true")

    b = sub.add_parser("bound", help="evaluate a bound formula")
    b.add_argument("--delta", type=int, required=True)
    b.add_argument("-m", type=int, required=True)
    b.add_argument("--theorem", default="2", choices=("1", "2", "mm"))
    return p


def _cmd_gen(a) -> int:
    if a.kind.startswith("random") and a.seed is None:
        raise _UsageError("gen: random kinds require --seed")
    f = generate(a.kind, a.n, a.max_degree, a.seed)
    with _out(a.output) as fh:
        fh.write(format_edge_list(f.n, f.edges))
    return EXIT_OK


def _cmd_power(a) -> int:
    power = build_power(read_forest(a.input), a.m)
    with _out(a.output) as fh:
        fh.write(format_edge_list(power.n, power.edges()))
    return EXIT_OK


def _scripted(name, moves):
    it = iter(moves)
    return Strategy(name, lambda s, rng: (next(it), None))


def _cmd_play(a) -> int:
    forest = read_forest(a.input)
    power = build_power(forest, a.m)
    if a.alice == "optimal":
        alice = OptimalAlice(power)
    else:
        alice = make_strategy(a.alice, a.opening)
    if a.bob == "random" and a.seed is None:
        raise _UsageError("play: --bob random requires --seed")
    if a.bob == "exhaustive":
        res = bob_exhaustive(power, alice)
        bob = _scripted("exhaustive", res.witness[1::2])
    else:
        bob = make_strategy(a.bob)
    monitors = [InvariantMonitor(power)] if a.alice == "refined" and a.m >= 1 else []
    with (open(a.trace, "w") if a.trace else nullcontext()) as trace:
        rep = play(power, alice, bob, trace, seed=a.seed, monitors=monitors)
    print(rep.score)
    failed = bool(rep.violations)
    if a.m >= 1 and a.alice in ("refined", "basic"):
        theorem = "2" if a.alice == "refined" else "1"
        bound = bounds.bound_for_forest(forest.max_degree, a.m, theorem)
        within = rep.score <= bound
        if a.alice == "refined":
            failed |= not within
        if a.verbose:
            print(f"score {rep.score} {'<=' if within else '>'} bound_thm{theorem} = {bound} "
                  f"(delta={max(forest.max_degree, 2)}, m={a.m})", file=sys.stderr)
    for msg in rep.violations:
        print(f"monitor violation: {msg}", file=sys.stderr)
    return EXIT_FAIL if failed else EXIT_OK


def _cmd_exact(a) -> int:
    power = build_power(read_forest(a.input), a.m)
    if a.threshold is not None:
        print("true" if alice_wins(power, a.threshold) else "false")
        return EXIT_OK
    res = exact_colg(power)
    print(res.value)
    if a.verbose:
        print(f"principal variation: {' '.join(map(str, res.principal_variation))}", file=sys.stderr)
        print(f"nodes expanded: {res.nodes_expanded}", file=sys.stderr)
    return EXIT_OK


def _cmd_verify(a) -> int:
    if a.mode == "exhaustive":
        if a.n_max is None:
            raise _UsageError("verify: exhaustive mode requires --n-max")
        reports = verify_exhaustive(a.n_max, a.delta, a.m, labelled=a.labelled, jobs=a.jobs)
    else:
        missing = [flag for flag, val in (("--count", a.count), ("--n", a.n), ("--seed", a.seed)) if val is None]
        if missing:
            raise _UsageError(f"verify: random mode requires {', '.join(missing)}")
        reports = verify_random(a.count, a.n, a.delta, a.m, a.bob, a.seed, kind=a.kind, jobs=a.jobs)
    with _out(a.output) as fh:
        failures = write_csv(reports, fh)
    if a.verbose:
        print(f"{failures} failing instance(s)", file=sys.stderr)
    return EXIT_FAIL if failures else EXIT_OK


def _cmd_bound(a) -> int:
    fn = {"1": bounds.bound_thm1, "2": bounds.bound_thm2, "mm": bounds.bound_mm}[a.theorem]
    print(fn(a.delta, a.m))
    return EXIT_OK


COMMANDS = {
    "gen": _cmd_gen, "power": _cmd_power, "play": _cmd_play,
    "exact": _cmd_exact, "verify": _cmd_verify, "bound": _cmd_bound,
}


def main(argv=None) -> int:
    try:
        args = _parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (InputError, DomainError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MarkGameError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
