"""Nested fixed-point evaluation of the Büchi winning-region formula.

For every position v the inner system reads

    Z_v = π(Fv)·θ_v(Y) + π(¬Fv)·θ_v(Z)
    θ_v(R) = π(V0 v)·Σ_w π(Evw)·R_w + π(V1 v)·Π_w (π(¬Evw) + π(Evw)·R_w)

and π⟦win0(v)⟧ is the v-component of the greatest solution of Y = Z*(Y),
where Z*(Y) is the least solution of the inner system.

The inner least solution is reached by Kleene iteration from zero in at
most |V|+1 rounds in any absorptive semiring.  The outer greatest solution
is computed as G^n(G^n(1)^∞) with G = Z* and n = |V|: n descending sweeps
from one, one saturation step applying the ∞-power pointwise, then sweeps
until the value is stable.  Every result is re-checked to be an exact fixed
point lying below all descending iterates.

Over S∞[X] the descending iterates enumerate ever deeper truncated
strategies and grow quickly, while p^∞ only depends on the supports of the
monomials of p.  The descent is therefore run in the exponent-free shadow
carrier (the image under drop_exponents, a homomorphism) and its result is
lifted back with every exponent set to ∞.
"""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from typing import Iterable

from semibuchi.game import E, F, V0, V1, BuchiGame
from semibuchi.interpret import Interpretation
from semibuchi.poly import INF, AbsorptivePoly, PolySemiring, drop_exponents

log = logging.getLogger(__name__)


class SolverError(RuntimeError):
    def __init__(self, message: str, trace: "SolverTrace | None" = None):
        super().__init__(message)
        self.trace = trace


@dataclass
class _Row:
    position: str
    f_pos: object
    f_neg: object
    own0: object
    own1: object
    # (w, π(Evw), π(¬Evw)) for every w that is not trivially (0, 1)
    columns: tuple


class EquationSystem:
    """The per-position equations induced by an interpretation."""

    def __init__(self, game: BuchiGame, interp: Interpretation):
        self.game = game
        self.interp = interp
        self.ops = ops = interp.semiring
        rows = []
        for v in game.positions:
            cols = []
            for w in game.positions:
                pos, neg = interp.value(E(v, w)), interp.value(E(v, w, False))
                if ops.is_zero(pos) and ops.is_one(neg):
                    continue
                cols.append((w, pos, neg))
            rows.append(_Row(v, interp.value(F(v)), interp.value(F(v, False)),
                             interp.value(V0(v)), interp.value(V1(v)), tuple(cols)))
        self.rows = rows

    @property
    def positions(self) -> tuple[str, ...]:
        return self.game.positions

    def shadow(self) -> "EquationSystem | None":
        """The same system over the exponent-free carrier, for S∞ systems only."""
        ops = self.ops
        if not isinstance(ops, PolySemiring) or ops.posbool:
            return None
        flat = Interpretation(PolySemiring(dual=ops.dual, posbool=True), self.game,
                              {lit: drop_exponents(val) for lit, val in self.interp.table.items()},
                              self.interp.edge_tracking, self.interp.dual)
        return EquationSystem(self.game, flat)

    def theta(self, row: _Row, values: dict) -> object:
        ops = self.ops
        total = ops.zero
        if not ops.is_zero(row.own0):
            s = ops.zero
            for w, pos, _ in row.columns:
                if not ops.is_zero(pos):
                    s = ops.add(s, ops.mul(pos, values[w]))
            total = ops.add(total, ops.mul(row.own0, s))
        if not ops.is_zero(row.own1):
            p = ops.one
            for w, pos, neg in row.columns:
                p = ops.mul(p, ops.add(neg, ops.mul(pos, values[w])))
                if ops.is_zero(p):
                    break
            total = ops.add(total, ops.mul(row.own1, p))
        return total

    def phi(self, row: _Row, Y: dict, Z: dict) -> object:
        ops = self.ops
        out = ops.zero
        if not ops.is_zero(row.f_pos):
            out = ops.add(out, ops.mul(row.f_pos, self.theta(row, Y)))
        if not ops.is_zero(row.f_neg):
            out = ops.add(out, ops.mul(row.f_neg, self.theta(row, Z)))
        return out

    def same(self, a: dict, b: dict) -> bool:
        return all(self.ops.eq(a[v], b[v]) for v in self.positions)

    def leq(self, a: dict, b: dict) -> bool:
        return all(self.ops.natural_le(a[v], b[v]) for v in self.positions)


@dataclass
class Sweep:
    index: int
    phase: str  # "descend", "saturate" or "settle"
    values: dict
    inner_iterations: int = 0


@dataclass
class SolverTrace:
    sweeps: list[Sweep] = field(default_factory=list)
    # (position, saturated indeterminates or None for non-polynomial carriers)
    saturations: list[tuple[str, tuple]] = field(default_factory=list)
    verified: bool = False
    max_inner_iterations: int = 0
    inner_cap: int = 0

    @property
    def outer_sweeps(self) -> int:
        return sum(1 for s in self.sweeps if s.phase != "saturate")

    def records(self, fmt=str) -> Iterable[dict]:
        """One JSON-ready record per sweep."""
        for s in self.sweeps:
            rec = {"sweep": s.index, "phase": s.phase,
                   "values": {v: fmt(val) for v, val in s.values.items()}}
            if s.phase == "saturate":
                rec["saturated"] = {v: [str(x) for x in xs] if xs is not None else None
                                    for v, xs in self.saturations}
            else:
                rec["inner_iterations"] = s.inner_iterations
            yield rec

    def dump_jsonl(self, fh, fmt=str) -> None:
        for rec in self.records(fmt):
            fh.write(json.dumps(rec, ensure_ascii=False) + "\n")


def inner_cap(system: EquationSystem) -> int:
    return 2 * len(system.positions) + 2


def solve_inner_lfp(system: EquationSystem, Y: dict) -> tuple[dict, int]:
    """Least solution Z*(Y) by Kleene iteration from zero.

    Returns the solution and the number of rounds used (including the
    round confirming stability).
    """
    ops = system.ops
    cap = inner_cap(system)
    # the F-branch only reads Y, so it is constant during the iteration
    fixed = {}
    for row in system.rows:
        fixed[row.position] = (ops.mul(row.f_pos, system.theta(row, Y))
                               if not ops.is_zero(row.f_pos) else ops.zero)
    Z = {v: ops.zero for v in system.positions}
    for rounds in range(1, cap + 1):
        nxt = {}
        for row in system.rows:
            val = fixed[row.position]
            if not ops.is_zero(row.f_neg):
                val = ops.add(val, ops.mul(row.f_neg, system.theta(row, Z)))
            nxt[row.position] = val
        if system.same(nxt, Z):
            return Z, rounds
        Z = nxt
    raise SolverError(f"inner least fixed point did not stabilize within {cap} rounds")


def _saturated_vars(before, after) -> tuple | None:
    if not isinstance(before, AbsorptivePoly):
        return None
    finite = {x for m in before.monomials for x, e in m.items() if e != INF}
    return tuple(sorted(finite & after.variables()))


def solve_outer_gfp(system: EquationSystem, keep_snapshots: bool = True) -> tuple[dict, SolverTrace]:
    """Greatest solution of Y = Z*(Y) together with the iteration trace."""
    ops = system.ops
    n = len(system.positions)
    trace = SolverTrace(inner_cap=inner_cap(system))
    shadow = system.shadow()
    descent = shadow or system
    index = 0

    def sweep(sys_, Y, phase):
        nonlocal index
        Z, rounds = solve_inner_lfp(sys_, Y)
        trace.max_inner_iterations = max(trace.max_inner_iterations, rounds)
        index += 1
        trace.sweeps.append(Sweep(index, phase, dict(Z) if keep_snapshots else {}, rounds))
        return Z

    descending = []
    Y = {v: descent.ops.one for v in system.positions}
    for _ in range(n):
        Z = sweep(descent, Y, "descend")
        descending.append(Z)
        stable = descent.same(Z, Y)
        Y = Z
        if stable:
            if shadow is None:
                # a descending chain from the top that stops is at the gfp
                trace.verified = True
                return Z, trace
            break

    if shadow is None:
        S = {v: ops.inf_power(Y[v]) for v in system.positions}
    else:
        S = {v: ops.poly(m.saturated() for m in Y[v].monomials) for v in system.positions}
    for v in system.positions:
        if shadow is not None or not ops.eq(S[v], Y[v]):
            sat = _saturated_vars(Y[v], S[v])
            if sat is None or sat:
                trace.saturations.append((v, sat))
    index += 1
    trace.sweeps.append(Sweep(index, "saturate", dict(S) if keep_snapshots else {}))
    Y = S

    cap = 4 * n * (len(system.game.edges) + 1)
    for _ in range(cap):
        Z = sweep(system, Y, "settle")
        if system.same(Z, Y):
            break
        Y = Z
    else:
        raise SolverError(f"no fixed point within {cap} sweeps after saturation", trace)

    # Y is an exact fixed point; it must also lie below every descending iterate
    projected = Y if shadow is None else {v: drop_exponents(Y[v]) for v in system.positions}
    for k, upper in enumerate(descending, 1):
        if not descent.leq(projected, upper):
            raise SolverError(f"saturated fixed point is not below descending iterate {k}", trace)
    trace.verified = True
    return Y, trace


@dataclass
class Solution:
    values: dict
    trace: SolverTrace
    semiring: object

    def __getitem__(self, v):
        return self.values[v]


def solve(game: BuchiGame, interp: Interpretation, keep_snapshots: bool = True) -> Solution:
    """π⟦win0(v)⟧ for every position v."""
    if interp.game is not game and interp.game != game:
        raise ValueError("interpretation belongs to a different game")
    system = EquationSystem(game, interp)
    values, trace = solve_outer_gfp(system, keep_snapshots=keep_snapshots)
    log.debug("solved %d positions in %d sweeps", len(values), trace.outer_sweeps)
    return Solution(values, trace, interp.semiring)


def eval_win0(game: BuchiGame, interp: Interpretation, v: str):
    if not game.has_position(v):
        raise KeyError(f"unknown position {v!r}")
    return solve(game, interp, keep_snapshots=False)[v]
