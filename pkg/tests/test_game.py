import io
import json
import random
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from semibuchi.game import (
    E,
    F,
    V0,
    V1,
    BuchiGame,
    GameError,
    dump_game,
    game_to_dict,
    literal_value_boolean,
    load_game,
    parse_game,
)
from semibuchi.gallery import loop_then_exit_game, random_game, running_game

GAMES = Path(__file__).resolve().parent.parent / "games"


def doc(positions, edges):
    return {"positions": [{"id": p, "owner": o, "target": t} for p, o, t in positions],
            "edges": edges}


def test_running_game_file():
    g = load_game(GAMES / "running.json")
    assert len(g.positions) == 7
    assert len(g.edges) == 14
    assert len(g.targets) == 3
    assert game_to_dict(g) == game_to_dict(running_game())


def test_loop_game_is_valid():
    g = parse_game(dump_game(loop_then_exit_game()))
    assert sorted(e.label for e in g.edges) == ["a", "b", "c"]


def test_unlabeled_edges_get_synthetic_labels():
    g = parse_game(doc([("u", 0, True)], [{"from": "u", "to": "u"}]))
    assert g.edges[0].label == "u->u"


@pytest.mark.parametrize("document, code", [
    (doc([("v", 0, False), ("v", 1, False)], [{"from": "v", "to": "v"}]), "duplicate-position"),
    (doc([("v", 0, False)], [{"from": "v", "to": "w"}]), "unknown-endpoint"),
    (doc([("v", 0, False), ("w", 0, False)], [{"from": "v", "to": "w"}]), "totality"),
    (doc([("v", 2, False)], [{"from": "v", "to": "v"}]), "malformed-owner"),
    (doc([("v", 0, False)], [{"from": "v", "to": "v", "cost": -1}]), "negative-cost"),
    (doc([("v", 0, False)], [{"from": "v", "to": "v"}, {"from": "v", "to": "v"}]), "duplicate-edge"),
    (doc([("v", 0, False), ("w", 0, False)],
         [{"from": "v", "to": "w", "label": "x"}, {"from": "w", "to": "v", "label": "x"}]), "duplicate-label"),
    ({"positions": []}, "malformed-document"),
    ("{not json", "malformed-document"),
])
def test_validation_errors(document, code):
    with pytest.raises(GameError) as info:
        parse_game(document if isinstance(document, str) else json.dumps(document))
    assert info.value.code == code


def test_boolean_owner_is_rejected():
    with pytest.raises(GameError) as info:
        parse_game(doc([("v", True, False)], [{"from": "v", "to": "v"}]))
    assert info.value.code == "malformed-owner"


def test_unreadable_file(tmp_path):
    with pytest.raises(GameError) as info:
        load_game(tmp_path / "missing.json")
    assert info.value.code == "unreadable-file"


def test_file_objects_are_accepted():
    g = parse_game(io.StringIO(dump_game(running_game())))
    assert game_to_dict(g) == game_to_dict(running_game())


def test_literal_truth():
    g = running_game()
    assert literal_value_boolean(g, F("v'")) == 1
    assert literal_value_boolean(g, E("v", "v")) == 0
    assert literal_value_boolean(g, E("v", "v", False)) == 1
    for v in g.positions:
        assert literal_value_boolean(g, V0(v)) + literal_value_boolean(g, V1(v)) == 1
    with pytest.raises(GameError):
        literal_value_boolean(g, F("nowhere"))


def test_costs_roundtrip():
    g = loop_then_exit_game({"a": 0, "b": 2.5, "c": 1})
    again = parse_game(dump_game(g))
    assert [e.cost for e in again.edges] == [e.cost for e in g.edges]


@given(st.integers(min_value=0, max_value=10**6), st.integers(min_value=1, max_value=6))
@settings(max_examples=50)
def test_canonical_roundtrip(seed, n):
    g = random_game(random.Random(seed), n, with_costs=seed % 2 == 0)
    canonical = game_to_dict(g)
    again = parse_game(json.dumps(canonical))
    assert game_to_dict(again) == canonical
    assert dump_game(again) == dump_game(g)


def test_restricted_game_may_have_dead_ends():
    g = running_game().restricted(["a", "b"])
    assert g.successors("v'") == ()
    with pytest.raises(GameError):
        g.validate(check_total=True)


def test_build_rejects_sink():
    with pytest.raises(GameError):
        BuchiGame.build({"v": 0, "w": 1}, [("v", "w")])
