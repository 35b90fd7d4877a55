"""Command-line front end: ``semibuchi <command> GAME --from POS [options]``.

Exit codes: 0 success, 1 solver/oracle mismatch, 2 usage error, 3 unreadable
or invalid game file, 4 invalid request (unknown position, edge or
semiring), 5 solver failure, 6 enumeration guard exceeded, 7 missing or
invalid edge costs.
"""
from __future__ import annotations

import argparse
import sys
from typing import Sequence

from semibuchi.analysis import AnalysisError, edge_occurrence_in_plays, profiles
from semibuchi.game import GameError, load_game
from semibuchi.interpret import (
    CostError,
    InterpretationError,
    boolean_interpretation,
    build_cost,
    build_edge_valued,
    build_strat,
)
from semibuchi.oracle import (
    DEFAULT_MAX_OUT,
    DEFAULT_MAX_POSITIONS,
    GuardExceeded,
    classical_buchi_solve,
    enumerate_dominant_profiles,
)
from semibuchi.poly import INF, PolyError, PolySemiring, edge_var
from semibuchi.repair import cost_occurrences, cost_unlock, repairs, synthesize_targets
from semibuchi.semirings import BooleanSemiring, TropicalSemiring, semiring_by_name
from semibuchi.solver import SolverError, solve

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_GAME = 3
EXIT_REQUEST = 4
EXIT_SOLVER = 5
EXIT_GUARD = 6
EXIT_COST = 7


class RequestError(ValueError):
    pass


def _split(text: str | None) -> list[str]:
    if not text:
        return []
    return [t.strip() for t in text.split(",") if t.strip()]


def _positions(game, text: str) -> list[str]:
    if text == "all":
        return sorted(game.positions)
    out = _split(text)
    if not out:
        raise RequestError("--from needs a position, a comma-separated list or 'all'")
    for v in out:
        if not game.has_position(v):
            raise RequestError(f"unknown position {v!r}")
    return out


def _blocks(positions: list[str], body) -> list[str]:
    """One block per position; a header line is added when there are several."""
    lines = []
    for v in positions:
        if len(positions) > 1:
            lines.append(f"# {v}")
        lines.extend(body(v))
    return lines


def _interpretation(game, args):
    ops = semiring_by_name(args.semiring)
    if isinstance(ops, PolySemiring):
        if ops.dual:
            raise RequestError("use the repair or synth-target commands for dual tracking")
        return build_strat(game, _split(args.track) if args.track is not None else "all", posbool=ops.posbool)
    if args.track is not None:
        raise RequestError("--track only applies to the strat and posbool semirings")
    if args.values:
        values = {}
        for item in _split(args.values):
            label, sep, raw = item.rpartition("=")
            if not sep:
                raise RequestError(f"cannot read edge value {item!r}; use label=value")
            try:
                values[label] = ops.coerce(raw)
            except (TypeError, ValueError) as exc:
                raise RequestError(f"bad value for edge {label!r}: {exc}") from None
        return build_edge_valued(game, ops, values)
    if isinstance(ops, TropicalSemiring):
        return build_cost(game)
    if isinstance(ops, BooleanSemiring):
        return boolean_interpretation(game)
    return boolean_interpretation(game, ops)


def cmd_solve(game, args) -> tuple[int, list[str]]:
    positions = _positions(game, args.origin)
    interp = _interpretation(game, args)
    sol = solve(game, interp)
    ops = interp.semiring
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as fh:
            sol.trace.dump_jsonl(fh, ops.format)
    return EXIT_OK, _blocks(positions, lambda v: [ops.format(sol[v])])


def cmd_strategies(game, args) -> tuple[int, list[str]]:
    positions = _positions(game, args.origin)
    interp = build_strat(game, _split(args.track) if args.track is not None else "all")
    sol = solve(game, interp)
    watched = _split(args.occurrence)
    for label in watched:
        if not game.has_label(label):
            raise RequestError(f"{label!r} is not an edge of the game")

    def body(v):
        lines = []
        for report in profiles(sol[v], game, v):
            lines.append(report.render())
            for label in watched:
                if report.monomial[edge_var(label)] == INF:
                    occ = edge_occurrence_in_plays(game, sol.values, report.monomial, label)
                    lines.append("  " + occ.render())
        return lines

    return EXIT_OK, _blocks(positions, body)


def cmd_repair(game, args) -> tuple[int, list[str]]:
    positions = _positions(game, args.origin)

    def body(v):
        found, _ = repairs(game, v, _split(args.remove), _split(args.add), posbool=args.posbool)
        return [r.render() for r in found] or ["(no repair)"]

    return EXIT_OK, _blocks(positions, body)


def cmd_synth_target(game, args) -> tuple[int, list[str]]:
    positions = _positions(game, args.origin)

    def body(v):
        found, _ = synthesize_targets(game, v, track_negatives=not args.no_negatives)
        return [c.render() for c in found] or ["(no target set)"]

    return EXIT_OK, _blocks(positions, body)


def cmd_cost(game, args) -> tuple[int, list[str]]:
    positions = _positions(game, args.origin)
    measure = cost_occurrences if args.measure == "occurrences" else cost_unlock
    build_cost(game)  # fail early on missing costs
    sol = solve(game, build_strat(game))
    fmt = TropicalSemiring().format
    return EXIT_OK, _blocks(positions, lambda v: [fmt(measure(game, v, sol[v]))])


def cmd_oracle_check(game, args) -> tuple[int, list[str]]:
    positions = _positions(game, args.origin)
    sol = solve(game, build_strat(game))
    region = classical_buchi_solve(game)
    lines, status = [], EXIT_OK
    for v in positions:
        expected = enumerate_dominant_profiles(game, v, max_positions=args.max_positions,
                                               max_out=args.max_out)
        same = expected == sol[v] and (v in region) == (not sol[v].is_zero())
        if not same:
            status = EXIT_MISMATCH
            lines += [f"{v}\tMISMATCH", f"  solver\t{sol[v]}", f"  oracle\t{expected}",
                      f"  classical\t{'win' if v in region else 'lose'}"]
    lines.append("MATCH" if status == EXIT_OK else "MISMATCH")
    return status, lines


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="semibuchi",
                                     description="Semiring evaluation of Büchi game winning regions.")
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("game", help="game file (JSON)")
        p.add_argument("--from", dest="origin", required=True,
                       help="query position, comma-separated list, or 'all'")
        p.set_defaults(func=func)
        return p

    p = command("solve", cmd_solve, "value of win0 at the query positions")
    p.add_argument("--semiring", default="strat",
                   help="boolean, tropical, viterbi, minmax:<levels>, strat or posbool (default strat)")
    p.add_argument("--track", help="comma-separated edge labels to track (strat/posbool; default all)")
    p.add_argument("--values", help="label=value list for numeric semirings; other edges map to one")
    p.add_argument("--trace", metavar="FILE", help="write one JSON record per solver sweep")

    p = command("strategies", cmd_strategies, "edge profiles of the dominant winning strategies")
    p.add_argument("--track", help="comma-separated edge labels to track (default all)")
    p.add_argument("--occurrence", metavar="LABELS",
                   help="also report whether these edges occur infinitely often in some play")

    p = command("repair", cmd_repair, "repairs within the given removable/addable edges")
    p.add_argument("--remove", help="removable edges: labels or u->v")
    p.add_argument("--add", help="addable edges: u->v or label=u->v")
    p.add_argument("--posbool", action="store_true", help="drop exponents while solving")

    p = command("synth-target", cmd_synth_target, "target sets that make the position winning")
    p.add_argument("--no-negatives", action="store_true", help="map non-membership in F to one")

    p = command("cost", cmd_cost, "cheapest strategy under an edge-cost measure")
    p.add_argument("--measure", choices=("occurrences", "unlock"), default="occurrences")

    p = command("oracle-check", cmd_oracle_check, "compare the solver with brute-force enumeration")
    p.add_argument("--max-positions", type=int, default=DEFAULT_MAX_POSITIONS)
    p.add_argument("--max-out", type=int, default=DEFAULT_MAX_OUT)
    return parser


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        game = load_game(args.game)
        status, lines = args.func(game, args)
    except GameError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_GAME
    except GuardExceeded as exc:
        print(f"error: {exc}", file=err)
        return EXIT_GUARD
    except CostError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_COST
    except (RequestError, InterpretationError, AnalysisError, PolyError, KeyError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_REQUEST
    except ValueError as exc:
        # semiring_by_name and friends
        print(f"error: {exc}", file=err)
        return EXIT_REQUEST
    except SolverError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_SOLVER
    for line in lines:
        print(line, file=out)
    return status


def main() -> None:
    sys.exit(run())
