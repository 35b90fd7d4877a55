import itertools
import random

import pytest

from semibuchi.analysis import (
    AnalysisError,
    edge_occurrence_in_plays,
    occurrence_witnesses,
    profiles,
    wins_with_subset,
    winner,
)
from semibuchi.gallery import diamond_chain, loop_then_exit_game, random_game, running_game
from semibuchi.game import BuchiGame, Edge
from semibuchi.interpret import build_strat
from semibuchi.oracle import classical_buchi_solve, positional_strategies
from semibuchi.poly import PolySemiring, parse_poly
from semibuchi.solver import solve


@pytest.fixture(scope="module")
def running():
    g = running_game()
    return g, solve(g, build_strat(g))


def test_winner(running):
    g, sol = running
    assert winner(sol["v"])
    assert not winner(PolySemiring().zero)
    assert winner(parse_poly("e[b]·e[c]^inf"))


def test_running_profiles(running):
    g, sol = running
    reports = profiles(sol["v"], g, "v")
    assert len(reports) == 4
    assert [r.positional for r in reports] == [True, False, True, True]
    nonpos = reports[1]
    assert nonpos.profile["e"] == 1 and nonpos.profile["f"] == 1
    assert dict(reports[3].choices)["v'"].label == "f"


def test_loop_profile():
    g = loop_then_exit_game()
    (report,) = profiles(solve(g, build_strat(g))["v"], g, "v")
    assert report.positional
    assert {v: e.label for v, e in report.choices} == {"v": "b", "w": "c"}
    assert report.render() == "e[b]·e[c]^inf\tpositional\tv:(v->w),w:(w->w)"


def test_diamond_profiles():
    g = diamond_chain(3)
    reports = profiles(solve(g, build_strat(g))["s0"], g, "s0")
    assert len(reports) == 8
    assert all(r.positional for r in reports)


def test_profiles_reject_foreign_labels():
    with pytest.raises(AnalysisError):
        profiles(parse_poly("e[zz]"), running_game())


def test_wins_with_subset(running):
    g, sol = running
    labels = {e.label for e in g.edges}
    assert wins_with_subset(sol["v"], labels - {"d"})
    assert not wins_with_subset(sol["v"], labels - {"a"})
    assert wins_with_subset(sol["v"], labels) == winner(sol["v"])


def test_occurrence_verdicts(running):
    g, sol = running
    m = parse_poly("e[a]·e[b]·e[c]·e[e]·e[f]·e[g]^inf·e[h]·e[k]^inf·e[m]^inf").sorted_monomials()[0]
    k = edge_occurrence_in_plays(g, sol.values, m, "k")
    assert not k.infinite and str(k.witness) == "e[m]^inf"
    assert edge_occurrence_in_plays(g, sol.values, m, "m").infinite
    gg = edge_occurrence_in_plays(g, sol.values, m, "g")
    assert gg.infinite and str(gg.witness) == "e[g]^inf·e[k]^inf·e[m]^inf"
    # a finite exponent can never be used infinitely often
    assert not edge_occurrence_in_plays(g, sol.values, m, "e").infinite


def test_occurrence_needs_an_absorbing_witness(running):
    g, sol = running
    m = parse_poly("e[k]^inf").sorted_monomials()[0]
    with pytest.raises(AnalysisError):
        occurrence_witnesses(g, {**sol.values, "w": PolySemiring().zero}, m, "k")


def _forbid(game, allowed):
    """Player 0 loses the disallowed moves; Player 1 moves that are disallowed lose for Player 0."""
    sink = "\0sink"
    owners = {**game.owner, sink: 0}
    edges = [Edge(sink, sink, "\0sink")]
    for e in game.edges:
        if e.label in allowed:
            edges.append(e)
        elif game.owner[e.source] == 1:
            edges.append(Edge(e.source, sink, "\0" + e.label))
    return BuchiGame(tuple(owners), owners, game.targets, tuple(edges))


def test_supports_match_classical_wins():
    r = random.Random(21)
    for _ in range(30):
        g = random_game(r, r.randint(1, 4))
        sol = solve(g, build_strat(g))
        labels = [e.label for e in g.edges]
        for size in range(len(labels) + 1):
            for allowed in itertools.combinations(labels, size):
                region = classical_buchi_solve(_forbid(g, set(allowed)))
                for v in g.positions:
                    assert wins_with_subset(sol[v], allowed) == (v in region)


def test_positional_reports_match_enumeration():
    r = random.Random(22)
    for _ in range(40):
        g = random_game(r, r.randint(1, 5))
        sol = solve(g, build_strat(g))
        for v in g.positions:
            reported = {frozenset(l for l in r_.profile if g.owner[g.edge_by_label(l).source] == 0)
                        for r_ in profiles(sol[v], g, v) if r_.positional}
            assert reported == positional_strategies(g, v)
