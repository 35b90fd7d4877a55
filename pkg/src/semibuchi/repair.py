"""Minimal repairs, target-set synthesis and cost measures."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from semibuchi.game import BuchiGame, Edge
from semibuchi.interpret import build_repair, build_strat, build_target, edge_costs
from semibuchi.poly import EDGE, INF, TARGET, AbsorptivePoly, drop_exponents, edge_var, eval_hom
from semibuchi.semirings import TROPICAL
from semibuchi.solver import solve


def _mark_minimal(sets: list[frozenset]) -> list[bool]:
    return [not any(other < s for other in sets) for s in sets]


@dataclass(frozen=True)
class Repair:
    removed: frozenset[Edge]
    added: frozenset[Edge]
    minimal: bool

    @property
    def edges(self) -> frozenset[Edge]:
        return self.removed | self.added

    def actions(self) -> list[str]:
        acts = [("-", e.label) for e in self.removed] + [("+", e.label) for e in self.added]
        return [sign + label for sign, label in sorted(acts, key=lambda a: (a[1], a[0]))]

    def apply(self, game: BuchiGame) -> BuchiGame:
        """The modified game; it may contain dead ends."""
        kept = [e for e in game.edges if e not in self.removed]
        return game.replace(edges=kept + sorted(self.added, key=lambda e: e.label))

    def render(self) -> str:
        return "{" + ",".join(self.actions()) + "}\t" + ("minimal" if self.minimal else "non-minimal")


def repairs(game: BuchiGame, v: str, removable: Iterable = (), addable: Iterable = (), *,
            posbool: bool = False) -> tuple[list[Repair], AbsorptivePoly]:
    """Repairs read off the monomials of the dual-tracked value at ``v``.

    A monomial's repair consists of the removable edges whose negated variable
    occurs and the addable edges whose variable occurs.  Returns the
    deduplicated repairs (smallest first) and the polynomial.
    """
    interp, minus, plus = build_repair(game, removable, addable, posbool=posbool)
    poly = solve(game, interp)[v]
    changes = {edge_var(e.label).dual: e for e in minus}
    changes.update({edge_var(e.label): e for e in plus})
    found: dict[frozenset, tuple] = {}
    for m in poly.sorted_monomials():
        hit = frozenset(changes[x] for x in m.support if x in changes)
        found.setdefault(hit, (frozenset(e for e in hit if e in minus),
                               frozenset(e for e in hit if e in plus)))
    keys = sorted(found, key=lambda s: (len(s), sorted(e.label for e in s)))
    flags = _mark_minimal(keys)
    return [Repair(*found[k], minimal=f) for k, f in zip(keys, flags)], poly


@dataclass(frozen=True)
class TargetChoice:
    positions: frozenset[str]
    minimal: bool

    def render(self) -> str:
        return "{" + ",".join(sorted(self.positions)) + "}\t" + ("minimal" if self.minimal else "non-minimal")


def synthesize_targets(arena: BuchiGame, u: str, track_negatives: bool = True
                       ) -> tuple[list[TargetChoice], AbsorptivePoly]:
    """Target sets making ``u`` winning for Player 0; the arena's own targets are ignored."""
    poly = solve(arena, build_target(arena, track_negatives))[u]
    seen = []
    for m in poly.sorted_monomials():
        chosen = frozenset(x.key for x in m.support if x.kind == TARGET)
        if chosen not in seen:
            seen.append(chosen)
    seen.sort(key=lambda s: (len(s), sorted(s)))
    flags = _mark_minimal(seen)
    return [TargetChoice(s, f) for s, f in zip(seen, flags)], poly


def _cost_assignment(game: BuchiGame) -> dict:
    costs = edge_costs(game)
    return {edge_var(label): c for label, c in costs.items()}


def cost_occurrences(game: BuchiGame, v: str, poly: AbsorptivePoly | None = None):
    """Cheapest dominant strategy when every occurrence of an edge is paid for."""
    h = _cost_assignment(game)
    if poly is None:
        poly = solve(game, build_strat(game))[v]
    return eval_hom(poly, h, TROPICAL)


def cost_unlock(game: BuchiGame, v: str, poly: AbsorptivePoly | None = None):
    """Cheapest dominant strategy when each used edge is paid for once."""
    h = _cost_assignment(game)
    if poly is None:
        poly = solve(game, build_strat(game))[v]
    return eval_hom(drop_exponents(poly), h, TROPICAL)


def occurrence_cost_is_finite(game: BuchiGame, poly: AbsorptivePoly) -> bool:
    """Whether some monomial uses only zero-cost edges infinitely often."""
    costs = edge_costs(game)
    return any(all(costs[x.key] == 0 for x, e in m.items() if e == INF and x.kind == EDGE)
               for m in poly.monomials)
