"""Generalized absorptive polynomials S∞[X] and their variants.

A polynomial is an antichain of coefficient-free monomials whose exponents
range over the naturals and ``INF``.  Two switches on the carrier give the
variants used by the game analyses:

* ``dual``: indeterminates come in pairs x / ~x and any monomial holding
  both is the zero class (the quotient S∞[X, X̄]);
* ``posbool``: every positive exponent is 1 (PosBool[X], PosBool[X, X̄]).

Textual form, used for golden output::

    e[a]^inf·e[b]^2·~e[c] + f[v]

with ``0`` and ``1`` for the zero and one polynomials.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import total_ordering
from typing import Callable, Iterable, Mapping

from semibuchi.semirings import Semiring

INF = math.inf

EDGE = "edge"
NEG_EDGE = "negated-edge"
TARGET = "target"
NEG_TARGET = "negated-target"
KINDS = (EDGE, NEG_EDGE, TARGET, NEG_TARGET)
_KIND_RANK = {k: i for i, k in enumerate(KINDS)}
_DUAL_KIND = {EDGE: NEG_EDGE, NEG_EDGE: EDGE, TARGET: NEG_TARGET, NEG_TARGET: TARGET}
_PREFIX = {EDGE: "e", NEG_EDGE: "~e", TARGET: "f", NEG_TARGET: "~f"}
_KIND_OF_PREFIX = {v: k for k, v in _PREFIX.items()}


class PolyError(ValueError):
    pass


@total_ordering
@dataclass(frozen=True)
class Indeterminate:
    """An edge or target-position variable; ``key`` is the edge label or position id."""

    kind: str
    key: str

    def __post_init__(self):
        if self.kind not in _KIND_RANK:
            raise PolyError(f"unknown indeterminate kind {self.kind!r}")

    @property
    def dual(self) -> "Indeterminate":
        return Indeterminate(_DUAL_KIND[self.kind], self.key)

    @property
    def negated(self) -> bool:
        return self.kind in (NEG_EDGE, NEG_TARGET)

    def sort_key(self):
        return (_KIND_RANK[self.kind], self.key)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        return f"{_PREFIX[self.kind]}[{self.key}]"


def edge_var(label: str) -> Indeterminate:
    return Indeterminate(EDGE, label)


def target_var(position: str) -> Indeterminate:
    return Indeterminate(TARGET, position)


def _exp_key(e):
    return (1, 0) if e == INF else (0, e)


def _exp_str(e) -> str:
    if e == INF:
        return "^inf"
    return "" if e == 1 else f"^{e}"


class Monomial:
    """Sparse exponent map; absent indeterminates have exponent 0."""

    __slots__ = ("_exps", "_items", "_hash")

    def __init__(self, exponents: Mapping[Indeterminate, int | float] = ()):
        exps = {}
        for x, e in dict(exponents).items():
            if e == INF:
                exps[x] = INF
            elif e < 0 or e != int(e):
                raise PolyError(f"exponent of {x} must be a natural number or inf, got {e!r}")
            elif e:
                exps[x] = int(e)
        self._exps = exps
        self._items = tuple(sorted(exps.items(), key=lambda kv: kv[0].sort_key()))
        self._hash = hash(self._items)

    @classmethod
    def var(cls, x: Indeterminate, exponent=1) -> "Monomial":
        return cls({x: exponent})

    def __getitem__(self, x: Indeterminate):
        return self._exps.get(x, 0)

    def items(self):
        return self._items

    @property
    def support(self) -> frozenset[Indeterminate]:
        return frozenset(self._exps)

    def __len__(self):
        return len(self._exps)

    def __eq__(self, other):
        return isinstance(other, Monomial) and self._items == other._items

    def __hash__(self):
        return self._hash

    def is_one(self) -> bool:
        return not self._exps

    def has_collision(self) -> bool:
        return any(x.dual in self._exps for x in self._exps)

    def times(self, other: "Monomial") -> "Monomial":
        exps = dict(self._exps)
        for x, e in other._exps.items():
            exps[x] = exps.get(x, 0) + e
        return Monomial(exps)

    def saturated(self) -> "Monomial":
        return Monomial({x: INF for x in self._exps})

    def flattened(self) -> "Monomial":
        return Monomial({x: 1 for x in self._exps})

    def sort_key(self):
        return (tuple(x.sort_key() for x, _ in self._items),
                tuple(_exp_key(e) for _, e in self._items))

    def __str__(self):
        if not self._items:
            return "1"
        return "·".join(f"{x}{_exp_str(e)}" for x, e in self._items)

    def __repr__(self):
        return f"Monomial({self})"


def absorbs(m1: Monomial, m2: Monomial) -> bool:
    """m1 ⪰ m2: every exponent of m1 is at most the matching one of m2."""
    return all(e <= m2[x] for x, e in m1.items())


def _maximal(monomials: Iterable[Monomial]) -> frozenset[Monomial]:
    # fewer/smaller exponents first: a monomial can only be absorbed by one
    # that sorts no later under this key
    distinct = sorted(set(monomials), key=lambda m: (len(m), sum(min(e, 1 << 30) for _, e in m.items())))
    kept: list[Monomial] = []
    for m in distinct:
        if not any(absorbs(k, m) for k in kept):
            kept.append(m)
    return frozenset(kept)


class AbsorptivePoly:
    """An ⪰-antichain of monomials, tagged with its carrier mode."""

    __slots__ = ("monomials", "dual", "posbool", "_hash")

    def __init__(self, monomials: Iterable[Monomial] = (), *, dual: bool = False,
                 posbool: bool = False, _normalized: bool = False):
        if _normalized:
            self.monomials = monomials
        else:
            ms = monomials
            if posbool:
                ms = (m.flattened() for m in ms)
            if dual:
                ms = (m for m in ms if not m.has_collision())
            self.monomials = _maximal(ms)
        self.dual = dual
        self.posbool = posbool
        self._hash = None

    def _check(self, other: "AbsorptivePoly"):
        if not isinstance(other, AbsorptivePoly):
            raise TypeError(f"expected AbsorptivePoly, got {type(other).__name__}")
        if (self.dual, self.posbool) != (other.dual, other.posbool):
            raise PolyError("cannot combine polynomials from different carriers "
                            f"(dual={self.dual}/{other.dual}, posbool={self.posbool}/{other.posbool})")

    def _new(self, monomials) -> "AbsorptivePoly":
        return AbsorptivePoly(monomials, dual=self.dual, posbool=self.posbool)

    def __add__(self, other: "AbsorptivePoly") -> "AbsorptivePoly":
        self._check(other)
        if not other.monomials:
            return self
        if not self.monomials:
            return other
        return self._new(self.monomials | other.monomials)

    def __mul__(self, other: "AbsorptivePoly") -> "AbsorptivePoly":
        self._check(other)
        if not self.monomials or not other.monomials:
            return self._new(())
        if self.is_one():
            return other
        if other.is_one():
            return self
        return self._new(m1.times(m2) for m1 in self.monomials for m2 in other.monomials)

    def inf_power(self) -> "AbsorptivePoly":
        if self.posbool:
            return self
        return self._new(m.saturated() for m in self.monomials)

    def is_zero(self) -> bool:
        return not self.monomials

    def is_one(self) -> bool:
        return len(self.monomials) == 1 and next(iter(self.monomials)).is_one()

    def sorted_monomials(self) -> list[Monomial]:
        return sorted(self.monomials, key=Monomial.sort_key)

    def variables(self) -> frozenset[Indeterminate]:
        out = set()
        for m in self.monomials:
            out |= m.support
        return frozenset(out)

    def __eq__(self, other):
        if not isinstance(other, AbsorptivePoly):
            return NotImplemented
        return (self.monomials == other.monomials and self.dual == other.dual
                and self.posbool == other.posbool)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.monomials, self.dual, self.posbool))
        return self._hash

    def __len__(self):
        return len(self.monomials)

    def __iter__(self):
        return iter(self.sorted_monomials())

    def __str__(self):
        if not self.monomials:
            return "0"
        return " + ".join(str(m) for m in self.sorted_monomials())

    def __repr__(self):
        flags = "".join(f", {k}=True" for k in ("dual", "posbool") if getattr(self, k))
        return f"AbsorptivePoly({str(self)!r}{flags})"


def normalize(monomials: Iterable[Monomial], *, dual: bool = False, posbool: bool = False) -> AbsorptivePoly:
    """Keep exactly the ⪰-maximal monomials (and drop x·~x products in dual mode)."""
    return AbsorptivePoly(monomials, dual=dual, posbool=posbool)


def drop_exponents(p: AbsorptivePoly) -> AbsorptivePoly:
    """Project S∞[X(,X̄)] onto PosBool[X(,X̄)]."""
    return AbsorptivePoly(p.monomials, dual=p.dual, posbool=True)


class PolySemiring(Semiring):
    """Semiring view of one polynomial carrier."""

    def __init__(self, dual: bool = False, posbool: bool = False):
        self.dual = dual
        self.posbool = posbool
        self.zero = AbsorptivePoly((), dual=dual, posbool=posbool)
        self.one = AbsorptivePoly((Monomial(),), dual=dual, posbool=posbool)
        base = "posbool" if posbool else "strat"
        self.name = base + ("[dual]" if dual else "")

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def inf_power(self, a):
        return a.inf_power()

    def natural_le(self, a, b) -> bool:
        # a ≤ b iff every monomial of a is absorbed by one of b
        return all(any(absorbs(mb, ma) for mb in b.monomials) for ma in a.monomials)

    def var(self, x: Indeterminate, exponent=1) -> AbsorptivePoly:
        if x.negated and not self.dual:
            raise PolyError(f"dual indeterminate {x} needs a dual carrier")
        return AbsorptivePoly((Monomial.var(x, exponent),), dual=self.dual, posbool=self.posbool)

    def poly(self, monomials: Iterable[Monomial]) -> AbsorptivePoly:
        return AbsorptivePoly(monomials, dual=self.dual, posbool=self.posbool)

    def parse(self, text: str) -> AbsorptivePoly:
        return parse_poly(text, dual=self.dual, posbool=self.posbool)

    def coerce(self, raw):
        if isinstance(raw, AbsorptivePoly):
            return raw
        return self.parse(str(raw))

    def format(self, a) -> str:
        return str(a)


_FACTOR = re.compile(r"^(~?[ef])\[(.*)\](?:\^(inf|\d+))?$")


def parse_poly(text: str, *, dual: bool = False, posbool: bool = False) -> AbsorptivePoly:
    """Inverse of ``str(poly)`` for the canonical grammar."""
    text = text.strip()
    if text == "0":
        return AbsorptivePoly((), dual=dual, posbool=posbool)
    monomials = []
    for chunk in text.split(" + "):
        chunk = chunk.strip()
        if chunk == "1":
            monomials.append(Monomial())
            continue
        exps = {}
        for factor in chunk.split("·"):
            m = _FACTOR.match(factor.strip())
            if not m:
                raise PolyError(f"malformed factor {factor!r} in {text!r}")
            prefix, key, exp = m.groups()
            x = Indeterminate(_KIND_OF_PREFIX[prefix], key)
            if x.negated and not dual:
                raise PolyError(f"dual indeterminate {x} in a non-dual polynomial")
            e = INF if exp == "inf" else int(exp or 1)
            exps[x] = exps.get(x, 0) + e
        monomials.append(Monomial(exps))
    return AbsorptivePoly(monomials, dual=dual, posbool=posbool)


def eval_hom(p: AbsorptivePoly, h: Mapping[Indeterminate, object] | Callable[[Indeterminate], object],
             target: Semiring):
    """Evaluate ``p`` under the homomorphism extending ``h`` into ``target``.

    ``h`` must cover every occurring indeterminate; for dual carriers it must
    send x and ~x to values whose product is zero whenever it assigns both.
    """
    lookup = h if callable(h) else h.__getitem__
    cache: dict[Indeterminate, object] = {}

    def value(x):
        if x not in cache:
            try:
                cache[x] = lookup(x)
            except KeyError:
                raise PolyError(f"no value assigned to indeterminate {x}") from None
        return cache[x]

    if p.dual:
        for x in p.variables():
            try:
                partner = value(x.dual)
            except PolyError:
                continue  # h need not cover duals that do not occur
            if not target.is_zero(target.mul(value(x), partner)):
                raise PolyError(f"assignment does not respect the dual pair {x} / {x.dual}")

    total = target.zero
    for m in p.monomials:
        term = target.one
        for x, e in m.items():
            term = target.mul(term, target.power(value(x), e))
        total = target.add(total, term)
    return total
