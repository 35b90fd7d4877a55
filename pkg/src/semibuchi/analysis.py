"""Reading strategy information off solved edge-tracking polynomials.

Each monomial of the value at v is the edge profile of one
absorption-dominant winning strategy from v (up to absorption-equivalence).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from semibuchi.game import BuchiGame, Edge
from semibuchi.poly import EDGE, INF, AbsorptivePoly, Indeterminate, Monomial, absorbs, edge_var


class AnalysisError(ValueError):
    pass


def winner(poly: AbsorptivePoly) -> bool:
    """Player 0 wins iff the polynomial is nonzero."""
    return not poly.is_zero()


def _edge_labels(m: Monomial) -> dict[str, object]:
    return {x.key: e for x, e in m.items() if x.kind == EDGE}


@dataclass(frozen=True)
class StrategyReport:
    origin: str
    monomial: Monomial
    positional: bool
    # Player 0 position -> chosen edge, filled in for positional strategies
    choices: tuple[tuple[str, Edge], ...] = ()

    @property
    def profile(self) -> dict[str, object]:
        """Edge label -> occurrence count (an int or INF)."""
        return _edge_labels(self.monomial)

    def render(self) -> str:
        kind = "positional" if self.positional else "non-positional"
        picks = ",".join(f"{v}:({e.source}->{e.target})" for v, e in self.choices) or "-"
        return f"{self.monomial}\t{kind}\t{picks}"


def profiles(poly: AbsorptivePoly, game: BuchiGame, origin: str = "") -> list[StrategyReport]:
    """One report per monomial, in canonical monomial order."""
    out = []
    for m in poly.sorted_monomials():
        by_source: dict[str, list[Edge]] = {}
        for label in _edge_labels(m):
            if not game.has_label(label):
                raise AnalysisError(f"monomial {m} mentions {label!r}, which is not an edge of the game")
            e = game.edge_by_label(label)
            if game.owner[e.source] == 0:
                by_source.setdefault(e.source, []).append(e)
        positional = all(len(es) == 1 for es in by_source.values())
        choices = tuple(sorted((v, es[0]) for v, es in by_source.items())) if positional else ()
        out.append(StrategyReport(origin, m, positional, choices))
    return out


def wins_with_subset(poly: AbsorptivePoly, allowed: Iterable[str]) -> bool:
    """Can Player 0 still win when only the edges labeled in ``allowed`` may be used?"""
    allowed = set(allowed)
    return any(set(_edge_labels(m)) <= allowed for m in poly.monomials)


@dataclass(frozen=True)
class Occurrence:
    edge: Edge
    infinite: bool
    # the monomial at the edge's target that absorbs the queried one
    witness: Monomial | None

    def render(self) -> str:
        verdict = "infinite" if self.infinite else "finite"
        return f"{self.edge.label}\t{verdict}\t{self.witness if self.witness is not None else '-'}"


def _absorbing(m: Monomial, poly: AbsorptivePoly) -> list[Monomial]:
    return [mw for mw in poly.sorted_monomials() if absorbs(mw, m)]


def _resolve(game: BuchiGame, edge) -> Edge:
    if isinstance(edge, Edge):
        return edge
    if isinstance(edge, Indeterminate):
        edge = edge.key
    if not game.has_label(edge):
        raise AnalysisError(f"{edge!r} is not an edge of the game")
    return game.edge_by_label(edge)


def occurrence_witnesses(game: BuchiGame, all_polys: Mapping[str, AbsorptivePoly],
                         m: Monomial, edge) -> list[Occurrence]:
    """The verdict for every monomial at the edge's target that absorbs ``m``."""
    e = _resolve(game, edge)
    x = edge_var(e.label)
    if m[x] != INF:
        return [Occurrence(e, False, None)]
    candidates = _absorbing(m, all_polys[e.target])
    if not candidates:
        raise AnalysisError(f"no monomial at {e.target!r} absorbs {m}; the inputs are inconsistent")
    return [Occurrence(e, mw[x] != 0, mw) for mw in candidates]


def edge_occurrence_in_plays(game: BuchiGame, all_polys: Mapping[str, AbsorptivePoly],
                             m: Monomial, edge) -> Occurrence:
    """Does the strategy behind ``m`` admit a play using ``edge`` infinitely often?

    ``m`` is a monomial of the value at some position and ``all_polys`` holds
    the values at every position.  The answer is read off a monomial at the
    edge's target that absorbs ``m``; among several, positional ones are
    preferred, then the canonical order decides.  An edge with a finite
    exponent in ``m`` is trivially finite.
    """
    found = occurrence_witnesses(game, all_polys, m, edge)
    if found[0].witness is None:
        return found[0]
    e = found[0].edge
    positional = {r.monomial for r in profiles(all_polys[e.target], game) if r.positional}
    found.sort(key=lambda o: o.witness not in positional)
    return found[0]
