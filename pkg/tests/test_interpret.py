import random

import pytest

from semibuchi.gallery import loop_then_exit_game, random_game, repair_game, running_game, target_arena
from semibuchi.game import E, F, V0, V1
from semibuchi.interpret import (
    CostError,
    InterpretationError,
    boolean_interpretation,
    build_cost,
    build_repair,
    build_strat,
    build_target,
    candidate_edge,
    is_consistent,
)
from semibuchi.poly import edge_var, target_var
from semibuchi.semirings import BOOLEAN, INF, TROPICAL


def test_strat_table():
    g = loop_then_exit_game()
    pi = build_strat(g)
    ring = pi.semiring
    assert pi(E("v", "w")) == ring.var(edge_var("b"))
    assert pi(E("v", "w", False)) == ring.zero
    assert pi(E("w", "v")) == ring.zero
    assert pi(E("w", "v", False)) == ring.one
    assert pi(F("w")) == ring.one and pi(F("v")) == ring.zero
    assert pi(V0("v")) == ring.one and pi(V1("v")) == ring.zero


def test_partial_tracking():
    g = running_game()
    pi = build_strat(g, ["e"])
    values = {pi(lit) for lit in pi.literals()}
    assert values == {pi.semiring.zero, pi.semiring.one, pi.semiring.var(edge_var("e"))}
    assert build_strat(g, []).table == {}


def test_strat_rejects_unknown_label():
    with pytest.raises(InterpretationError):
        build_strat(running_game(), ["zz"])


def test_repair_table():
    g = repair_game()
    pi, minus, plus = build_repair(g, ["a", "b"], ["c=w->w"])
    ring = pi.semiring
    xa, xc = edge_var("a"), edge_var("c")
    assert pi(E("w", "w")) == ring.var(xc)
    assert pi(E("w", "w", False)) == ring.var(xc.dual)
    assert pi(E("v", "v")) == ring.var(xa)
    assert pi(E("v", "v", False)) == ring.var(xa.dual)
    assert pi(E("v", "w")) == ring.one
    assert [e.label for e in minus] == ["a", "b"] and [e.label for e in plus] == ["c"]


def test_empty_repair_is_boolean():
    g = repair_game()
    pi, _, _ = build_repair(g, [], [])
    ring = pi.semiring
    for lit in pi.literals():
        assert pi(lit) == (ring.one if g.holds(lit) else ring.zero)


def test_candidate_edge_must_be_new():
    g = repair_game()
    with pytest.raises(InterpretationError):
        build_repair(g, [], ["v->v"])
    with pytest.raises(InterpretationError):
        candidate_edge(g, "a=w->w")
    assert candidate_edge(g, "w->w").label == "w->w"
    assert candidate_edge(g, ("w", "w", "c")).label == "c"


def test_target_tables():
    g = target_arena()
    with_neg = build_target(g, True)
    without = build_target(g, False)
    x = target_var("a")
    assert with_neg(F("a")) == with_neg.semiring.var(x)
    assert with_neg(F("a", False)) == with_neg.semiring.var(x.dual)
    assert without(F("a", False)) == without.semiring.one
    assert with_neg.semiring.posbool


def test_cost_interpretation():
    g = loop_then_exit_game({"a": 0, "b": 2, "c": 0})
    pi = build_cost(g)
    assert pi(E("v", "w")) == 2
    assert pi(E("w", "v")) == INF
    assert pi(F("w")) == TROPICAL.one


def test_cost_errors():
    with pytest.raises(CostError):
        build_cost(loop_then_exit_game())
    with pytest.raises(CostError):
        build_cost(loop_then_exit_game({"a": 0, "b": "inf", "c": 0}))


@pytest.mark.parametrize("build", [
    lambda g: build_strat(g),
    lambda g: build_repair(g, [g.edges[0].label], [])[0],
    lambda g: build_target(g, True),
    lambda g: boolean_interpretation(g),
])
def test_interpretations_are_consistent(build):
    r = random.Random(3)
    for _ in range(20):
        assert is_consistent(build(random_game(r, r.randint(1, 4))))


def test_target_without_negatives_gives_up_consistency():
    # F v and ¬F v both map to nonzero values; this is the intended relaxation
    assert not is_consistent(build_target(target_arena(), False))


def test_strat_composed_with_ones_is_boolean():
    r = random.Random(5)
    for _ in range(20):
        g = random_game(r, r.randint(1, 5))
        composed = build_strat(g).compose(lambda x: True, BOOLEAN)
        plain = boolean_interpretation(g)
        for lit in plain.literals():
            assert composed(lit) == plain(lit)
