"""Semiring interpretations of the literals of a Büchi game.

An interpretation is total: literals without an explicit entry get the
semiring's one or zero according to their truth in the game.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

from semibuchi.game import E, F, BuchiGame, Edge, Literal, default_label
from semibuchi.poly import (
    Indeterminate,
    PolySemiring,
    edge_var,
    eval_hom,
    target_var,
)
from semibuchi.semirings import BOOLEAN, INF, TROPICAL, Semiring


class InterpretationError(ValueError):
    pass


class CostError(InterpretationError):
    """Edge costs are missing or not finite."""


@dataclass
class Interpretation:
    semiring: Semiring
    game: BuchiGame
    table: dict[Literal, object] = field(default_factory=dict)
    edge_tracking: bool = True
    dual: bool = False

    def value(self, lit: Literal):
        if lit in self.table:
            return self.table[lit]
        return self.semiring.one if self.game.holds(lit) else self.semiring.zero

    __call__ = value

    def literals(self) -> Iterable[Literal]:
        """Every instantiated literal over the game's positions."""
        vs = self.game.positions
        for rel in ("F", "V0", "V1"):
            for v in vs:
                yield Literal(rel, (v,), True)
                yield Literal(rel, (v,), False)
        for u in vs:
            for v in vs:
                yield E(u, v)
                yield E(u, v, False)

    def compose(self, h: Callable[[Indeterminate], object] | dict, target: Semiring) -> "Interpretation":
        """h ∘ π for a polynomial interpretation π."""
        table = {lit: eval_hom(val, h, target) for lit, val in self.table.items()}
        return Interpretation(target, self.game, table, self.edge_tracking, self.dual)


def boolean_interpretation(game: BuchiGame, semiring: Semiring = BOOLEAN) -> Interpretation:
    return Interpretation(semiring, game)


def build_strat(game: BuchiGame, tracked: Iterable[str] | str = "all", *,
                posbool: bool = False) -> Interpretation:
    """Track the listed edge labels (default: all edges) by indeterminates."""
    ring = PolySemiring(posbool=posbool)
    labels = [e.label for e in game.edges] if tracked == "all" else list(tracked)
    table = {}
    for label in labels:
        if not game.has_label(label):
            raise InterpretationError(f"tracked edge {label!r} is not an edge of the game")
        e = game.edge_by_label(label)
        table[E(e.source, e.target)] = ring.var(edge_var(label))
    return Interpretation(ring, game, table)


def build_edge_valued(game: BuchiGame, semiring: Semiring, values: dict[str, object]) -> Interpretation:
    """Edge-tracking interpretation with the given per-label values; other edges map to one."""
    table = {}
    for label, val in values.items():
        if not game.has_label(label):
            raise InterpretationError(f"edge {label!r} is not an edge of the game")
        e = game.edge_by_label(label)
        table[E(e.source, e.target)] = val
    return Interpretation(semiring, game, table)


def _resolve_edge(game: BuchiGame, token) -> Edge:
    if isinstance(token, Edge):
        return token
    if isinstance(token, tuple):
        e = game.edge(*token)
        if e is None:
            raise InterpretationError(f"{token[0]}->{token[1]} is not an edge of the game")
        return e
    if game.has_label(token):
        return game.edge_by_label(token)
    if "->" in token:
        u, v = token.split("->", 1)
        e = game.edge(u, v)
        if e is not None:
            return e
    raise InterpretationError(f"{token!r} is not an edge of the game")


def candidate_edge(game: BuchiGame, token) -> Edge:
    """An absent edge to be considered for addition: ``Edge``, ``(u, v)``,
    ``"u->v"`` or ``"label=u->v"``."""
    if isinstance(token, Edge):
        e = token
    elif isinstance(token, tuple):
        u, v, *rest = token
        e = Edge(u, v, rest[0] if rest else default_label(u, v))
    else:
        label, _, spec = token.rpartition("=")
        if "->" not in spec:
            raise InterpretationError(f"cannot read candidate edge {token!r}; use 'u->v' or 'label=u->v'")
        u, v = spec.split("->", 1)
        e = Edge(u, v, label or default_label(u, v))
    for end in (e.source, e.target):
        if not game.has_position(end):
            raise InterpretationError(f"candidate edge {e.label!r} uses unknown position {end!r}")
    if game.edge(e.source, e.target) is not None:
        raise InterpretationError(f"candidate edge {e.source}->{e.target} already exists in the game")
    if game.has_label(e.label):
        raise InterpretationError(f"label {e.label!r} is already used by an existing edge")
    return e


def build_repair(game: BuchiGame, removable: Iterable = (), addable: Iterable = (), *,
                 posbool: bool = False) -> tuple[Interpretation, list[Edge], list[Edge]]:
    """Dual-indeterminate tracking of the edges in E- ∪ E+.

    Returns the interpretation together with the resolved E- and E+ edges.
    """
    ring = PolySemiring(dual=True, posbool=posbool)
    minus = [_resolve_edge(game, t) for t in removable]
    plus = [candidate_edge(game, t) for t in addable]
    labels = [e.label for e in minus + plus]
    if len(set(labels)) != len(labels):
        raise InterpretationError("an edge is listed twice in the removable/addable sets")
    table = {}
    for e in minus + plus:
        x = edge_var(e.label)
        table[E(e.source, e.target)] = ring.var(x)
        table[E(e.source, e.target, False)] = ring.var(x.dual)
    return Interpretation(ring, game, table, edge_tracking=False, dual=True), minus, plus


def build_target(game: BuchiGame, track_negatives: bool = True) -> Interpretation:
    """Track membership in F by X_v and, optionally, non-membership by ~X_v.

    Without negatives, ¬F v maps to one for every position.  The game's own
    target set is ignored.
    """
    ring = PolySemiring(dual=track_negatives, posbool=True)
    table = {}
    for v in game.positions:
        x = target_var(v)
        table[F(v)] = ring.var(x)
        table[F(v, False)] = ring.var(x.dual) if track_negatives else ring.one
    return Interpretation(ring, game, table, edge_tracking=False, dual=track_negatives)


def edge_costs(game: BuchiGame) -> dict[str, object]:
    missing = [e.label for e in game.edges if e.cost is None]
    if missing:
        raise CostError(f"edges without cost: {', '.join(sorted(missing))}")
    infinite = [e.label for e in game.edges if e.cost == INF]
    if infinite:
        raise CostError(f"edge costs must be finite: {', '.join(sorted(infinite))}")
    return {e.label: e.cost for e in game.edges}


def build_cost(game: BuchiGame) -> Interpretation:
    return build_edge_valued(game, TROPICAL, edge_costs(game))


def is_consistent(interp: Interpretation) -> bool:
    """π(ℓ)·π(¬ℓ) = 0 for every literal."""
    ops = interp.semiring
    return all(ops.is_zero(ops.mul(interp.value(lit), interp.value(lit.negate())))
               for lit in interp.literals() if lit.positive)

