"""Small hand-made games and a random game generator."""
from __future__ import annotations

import random

from semibuchi.game import BuchiGame


def running_game() -> BuchiGame:
    """Seven positions, edges labeled a..q; Player 0 wins everywhere."""
    owners = {"v": 1, "s": 1, "v'": 0, "t": 0, "u": 1, "w": 0, "z": 1}
    edges = [
        ("v", "s", "a"), ("v", "v'", "c"), ("s", "v'", "b"),
        ("v'", "v", "d"), ("v'", "t", "e"), ("v'", "u", "f"),
        ("t", "t", "i"), ("t", "u", "h"),
        ("u", "u", "g"), ("u", "w", "k"),
        ("w", "w", "m"), ("w", "z", "n"),
        ("z", "z", "p"), ("z", "v", "q"),
    ]
    return BuchiGame.build(owners, edges, targets={"v'", "u", "w"})


def loop_then_exit_game(costs: dict[str, object] | None = None) -> BuchiGame:
    """v loops on a or moves on b to the target w, which loops on c."""
    costs = costs or {}
    edges = [("v", "v", "a", costs.get("a")), ("v", "w", "b", costs.get("b")),
             ("w", "w", "c", costs.get("c"))]
    return BuchiGame.build({"v": 0, "w": 0}, edges, targets={"w"})


def repair_game() -> BuchiGame:
    """Player 1 wins from v by looping on a; ``c`` (w->w) is a candidate edge to add."""
    edges = [("v", "v", "a"), ("v", "w", None), ("w", "v", "b")]
    return BuchiGame.build({"v": 1, "w": 0}, edges, targets={"w"})


def target_arena() -> BuchiGame:
    """Three-position arena with no targets, used for target synthesis."""
    edges = [("a", "a"), ("a", "b"), ("b", "a"), ("b", "c"), ("c", "c"), ("c", "a")]
    return BuchiGame.build({"a": 0, "b": 1, "c": 1}, edges)


def persistence_game() -> BuchiGame:
    """Player 1 routes to x either directly or via y; x loops on b or leaves on a to a target sink."""
    edges = [("v", "y"), ("v", "x"), ("y", "x"), ("x", "r", "a"), ("x", "x", "b"), ("r", "r")]
    return BuchiGame.build({"v": 1, "y": 1, "x": 0, "r": 0}, edges, targets={"x", "r"})


def diamond_chain(n: int) -> BuchiGame:
    """n diamonds in a row; Player 0 picks a_i or b_i in each; the last position loops on k.

    Has exactly 2**n positional winning strategies from ``s0``.
    """
    if n < 1:
        raise ValueError("need at least one diamond")
    owners = {"s0": 0}
    edges = []
    for i in range(1, n + 1):
        prev, nxt = f"s{i - 1}", f"s{i}"
        owners[f"p{i}"] = 1
        owners[f"q{i}"] = 1
        owners[nxt] = 0
        edges += [(prev, f"p{i}", f"a{i}"), (prev, f"q{i}", f"b{i}"),
                  (f"p{i}", nxt, None), (f"q{i}", nxt, None)]
    edges.append((f"s{n}", f"s{n}", "k"))
    return BuchiGame.build(owners, edges, targets={f"s{n}"})


def random_game(rng: random.Random, n_positions: int, max_out: int = 2,
                target_prob: float = 0.4, with_costs: bool = False) -> BuchiGame:
    """Random total game on positions ``p0..p{n-1}`` with out-degree 1..max_out."""
    names = [f"p{i}" for i in range(n_positions)]
    owners = {v: rng.randint(0, 1) for v in names}
    targets = {v for v in names if rng.random() < target_prob}
    edges = []
    for v in names:
        k = rng.randint(1, min(max_out, n_positions))
        for w in rng.sample(names, k):
            cost = rng.randint(0, 3) if with_costs else None
            edges.append((v, w, f"e{v[1:]}.{w[1:]}", cost))
    return BuchiGame.build(owners, edges, targets=targets)
