"""Ground truth that does not go through the equation system.

* :func:`classical_buchi_solve` is the textbook attractor/recurrence solver.
* :func:`enumerate_lassos` lists every winning lasso strategy from a
  position.  A lasso strategy is a finite tree in which each branch stops at
  the first repeated position; the leaf then replays the subtree of the
  earlier occurrence.  :func:`enumerate_dominant_profiles` sums their edge
  profiles in S∞[X].

Dead ends follow the same convention as the equations: a Player 1 position
without moves is won by Player 0, a Player 0 position without moves is lost.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

import networkx as nx

from semibuchi.game import BuchiGame, Edge
from semibuchi.poly import INF, AbsorptivePoly, Monomial, edge_var, normalize

DEFAULT_MAX_POSITIONS = 7
DEFAULT_MAX_OUT = 3


class GuardExceeded(ValueError):
    """The game is too large for brute-force enumeration."""


# classical solver


def _attractor(game: BuchiGame, arena: set[str], player: int, goal: set[str]) -> set[str]:
    """Positions of ``arena`` from which ``player`` forces a visit to ``goal``."""
    attr = set(goal) & arena
    changed = True
    while changed:
        changed = False
        for v in arena - attr:
            succ = [e.target for e in game.successors(v) if e.target in arena]
            if game.owner[v] == player:
                hit = any(w in attr for w in succ)
            else:
                hit = all(w in attr for w in succ)
            if hit:
                attr.add(v)
                changed = True
    return attr


def _totalize(game: BuchiGame) -> tuple[BuchiGame, set[str]]:
    """Send dead ends to fresh sinks: Player 0 dead ends lose, Player 1 dead ends win."""
    dead = [v for v in game.positions if not game.successors(v)]
    if not dead:
        return game, set()
    win, lose = "\0win", "\0lose"
    owners = dict(game.owner)
    owners[win] = owners[lose] = 0
    edges = list(game.edges) + [Edge(win, win, "\0w"), Edge(lose, lose, "\0l")]
    for v in dead:
        sink = win if game.owner[v] == 1 else lose
        edges.append(Edge(v, sink, f"\0{v}"))
    total = BuchiGame(tuple(owners), owners, frozenset(game.targets | {win}), tuple(edges))
    return total, {win, lose}


def classical_buchi_solve(game: BuchiGame) -> frozenset[str]:
    """Player 0's winning region, by repeatedly removing Player 1's recurrence attractors."""
    total, extra = _totalize(game)
    arena = set(total.positions)
    while True:
        reach = _attractor(total, arena, 0, total.targets & arena)
        lost = _attractor(total, arena, 1, arena - reach)
        if not lost:
            break
        arena -= lost
    return frozenset(arena - extra)


# lasso strategies


@dataclass(frozen=True)
class LassoNode:
    """One node of a lasso tree: the path from the root (positions) and its children."""

    path: tuple[str, ...]
    # (edge, child); a child is a LassoNode, or an int giving the depth of the back-link target
    children: tuple

    @property
    def position(self) -> str:
        return self.path[-1]


@dataclass
class LassoStrategy:
    root: LassoNode
    winning: bool
    monomial: Monomial
    # labels of edges that lie on a cycle of the back-link graph
    recurring: frozenset[str]

    def positional(self, game: BuchiGame) -> bool:
        chosen: dict[str, str] = {}
        for node in _nodes(self.root):
            if game.owner[node.position] == 0 and node.children:
                label = node.children[0][0].label
                if chosen.setdefault(node.position, label) != label:
                    return False
        return True


def _nodes(node: LassoNode) -> Iterator[LassoNode]:
    yield node
    for _, child in node.children:
        if isinstance(child, LassoNode):
            yield from _nodes(child)


def _trees(game: BuchiGame, path: tuple[str, ...]) -> Iterator[LassoNode]:
    v = path[-1]
    options = []
    for e in game.successors(v):
        w = e.target
        if w in path:
            options.append([(e, path.index(w))])
        else:
            options.append([(e, t) for t in _trees(game, path + (w,))])
    if game.owner[v] == 0:
        for opt in options:
            for pair in opt:
                yield LassoNode(path, (pair,))
    else:
        for combo in itertools.product(*options):
            yield LassoNode(path, tuple(combo))


def _analyze(root: LassoNode, game: BuchiGame) -> tuple[bool, Monomial, frozenset[str]]:
    # back-link graph: node ids are paths; leaves point at the ancestor on their branch
    succ: dict[tuple, list[tuple[str, tuple]]] = {}
    for node in _nodes(root):
        out = []
        for e, child in node.children:
            target = node.path[:child + 1] if isinstance(child, int) else child.path
            out.append((e.label, target))
        succ[node.path] = out
    if any(game.owner[p[-1]] == 0 and not succ[p] for p in succ):
        return False, Monomial(), frozenset()

    graph = nx.DiGraph()
    graph.add_nodes_from(succ)
    graph.add_edges_from((p, q) for p, out in succ.items() for _, q in out)
    comp, cyclic = {}, set()
    for i, members in enumerate(nx.strongly_connected_components(graph)):
        for p in members:
            comp[p] = i
            if len(members) > 1 or graph.has_edge(p, p):
                cyclic.add(p)
    # an F-free cycle is a cycle of the subgraph induced by non-target nodes
    free = graph.subgraph(p for p in succ if not game.is_target(p[-1]))
    if not nx.is_directed_acyclic_graph(free):
        return False, Monomial(), frozenset()

    # nodes reachable from a cycle are visited infinitely often in the unraveling
    infinite = set(cyclic)
    for p in cyclic:
        infinite |= nx.descendants(graph, p)
    counts: dict[str, float] = {}
    recurring = set()
    for p, out in succ.items():
        for label, q in out:
            counts[label] = INF if p in infinite else counts.get(label, 0) + 1
            if comp[p] == comp[q]:
                recurring.add(label)
    mono = Monomial({edge_var(label): c for label, c in counts.items()})
    return True, mono, frozenset(recurring)


def _guard(game: BuchiGame, max_positions: int, max_out: int) -> None:
    if len(game.positions) > max_positions:
        raise GuardExceeded(f"game has {len(game.positions)} positions; enumeration limit is {max_positions}")
    widest = max((len(game.successors(v)) for v in game.positions), default=0)
    if widest > max_out:
        raise GuardExceeded(f"a position has {widest} successors; enumeration limit is {max_out}")


def enumerate_lassos(game: BuchiGame, v: str, *, max_positions: int = DEFAULT_MAX_POSITIONS,
                     max_out: int = DEFAULT_MAX_OUT, winning_only: bool = True) -> Iterator[LassoStrategy]:
    if not game.has_position(v):
        raise KeyError(f"unknown position {v!r}")
    _guard(game, max_positions, max_out)
    for root in _trees(game, (v,)):
        won, mono, recurring = _analyze(root, game)
        if won or not winning_only:
            yield LassoStrategy(root, won, mono, recurring)


def enumerate_dominant_profiles(game: BuchiGame, v: str, *, max_positions: int = DEFAULT_MAX_POSITIONS,
                                max_out: int = DEFAULT_MAX_OUT) -> AbsorptivePoly:
    """Sum of the edge profiles of all winning lasso strategies from ``v``."""
    lassos = enumerate_lassos(game, v, max_positions=max_positions, max_out=max_out)
    return normalize(s.monomial for s in lassos)


def recurring_edges(game: BuchiGame, v: str, monomial: Monomial, **guards) -> set[frozenset[str]]:
    """For every winning lasso strategy from ``v`` with profile ``monomial``,
    the set of edges that some play uses infinitely often."""
    return {s.recurring for s in enumerate_lassos(game, v, **guards) if s.monomial == monomial}


def positional_strategies(game: BuchiGame, v: str) -> set[frozenset[str]]:
    """Edge sets of the positional winning strategies from ``v``, restricted to reachable positions."""
    choosers = [u for u in game.positions if game.owner[u] == 0]
    options = [[e.label for e in game.successors(u)] for u in choosers]
    found = set()
    for pick in itertools.product(*options):
        chosen = dict(zip(choosers, pick))
        labels = [e.label for e in game.edges if game.owner[e.source] == 1 or chosen[e.source] == e.label]
        sub = game.restricted(labels)
        if v not in classical_buchi_solve(sub):
            continue
        seen, stack = {v}, [v]
        while stack:
            u = stack.pop()
            for e in sub.successors(u):
                if e.target not in seen:
                    seen.add(e.target)
                    stack.append(e.target)
        found.add(frozenset(chosen[u] for u in choosers if u in seen))
    return found
