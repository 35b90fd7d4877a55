"""Absorptive, fully-continuous semirings.

Values are plain Python objects (bool, Fraction, float('inf'), level
strings, :class:`~semibuchi.poly.AbsorptivePoly`); each semiring is an
object bundling the operations on its carrier.  Every shipped carrier has
decidable equality, which the fixed-point solver relies on to detect
stabilization.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Sequence

INF = math.inf
FLOAT_TOL = 1e-9


class Semiring:
    """Base class: subclasses set ``name``, ``zero``, ``one`` and the ops."""

    name = "abstract"
    zero: Any = None
    one: Any = None

    def add(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inf_power(self, a):
        raise NotImplementedError

    def eq(self, a, b) -> bool:
        return a == b

    def natural_le(self, a, b) -> bool:
        return self.eq(self.add(a, b), b)

    def is_zero(self, a) -> bool:
        return self.eq(a, self.zero)

    def is_one(self, a) -> bool:
        return self.eq(a, self.one)

    def sum(self, values: Iterable):
        acc = self.zero
        for v in values:
            acc = self.add(acc, v)
        return acc

    def product(self, values: Iterable):
        acc = self.one
        for v in values:
            acc = self.mul(acc, v)
        return acc

    def power(self, a, exponent):
        """``a`` raised to a natural number or to ``math.inf``."""
        if exponent == INF:
            return self.inf_power(a)
        result = self.one
        base = a
        n = int(exponent)
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def coerce(self, raw):
        """Turn user input (e.g. a CLI token) into a carrier value."""
        return raw

    def format(self, a) -> str:
        return str(a)

    def __repr__(self):
        return f"<semiring {self.name}>"


class BooleanSemiring(Semiring):
    name = "boolean"
    zero = False
    one = True

    def add(self, a, b):
        return a or b

    def mul(self, a, b):
        return a and b

    def inf_power(self, a):
        return a

    def coerce(self, raw):
        if isinstance(raw, str):
            if raw.lower() in ("1", "true"):
                return True
            if raw.lower() in ("0", "false"):
                return False
            raise ValueError(f"not a Boolean value: {raw!r}")
        return bool(raw)

    def format(self, a) -> str:
        return "1" if a else "0"


def to_number(raw) -> Fraction | float:
    """Exact rational for finite input, ``math.inf`` for infinity.

    Floats go through their decimal repr so that ``0.1`` becomes ``1/10``.
    """
    if isinstance(raw, Fraction):
        return raw
    if isinstance(raw, bool):
        raise TypeError("Boolean is not a number here")
    if isinstance(raw, int):
        return Fraction(raw)
    if isinstance(raw, float):
        if math.isinf(raw) and raw > 0:
            return INF
        if math.isnan(raw) or math.isinf(raw):
            raise ValueError(f"invalid number {raw!r}")
        return Fraction(repr(raw))
    if isinstance(raw, str):
        s = raw.strip().lower()
        if s in ("inf", "infinity", "+inf", "∞"):
            return INF
        return Fraction(s)
    raise TypeError(f"cannot read {raw!r} as a number")


def _num_eq(a, b) -> bool:
    if a == b:
        return True
    if a == INF or b == INF:
        return False
    if isinstance(a, float) or isinstance(b, float):
        return abs(a - b) <= FLOAT_TOL
    return False


def _format_number(a) -> str:
    if a == INF:
        return "inf"
    if isinstance(a, Fraction):
        return str(a)
    return repr(a)


class TropicalSemiring(Semiring):
    """(R+ ∪ {∞}, min, +, ∞, 0); the natural order is reversed numeric order."""

    name = "tropical"
    zero = INF
    one = Fraction(0)

    def add(self, a, b):
        return a if a <= b else b

    def mul(self, a, b):
        if a == INF or b == INF:
            return INF
        return a + b

    def inf_power(self, a):
        return self.one if a == 0 else INF

    def eq(self, a, b) -> bool:
        return _num_eq(a, b)

    def natural_le(self, a, b) -> bool:
        return a >= b or _num_eq(a, b)

    def coerce(self, raw):
        value = to_number(raw)
        if value < 0:
            raise ValueError(f"tropical values are non-negative, got {raw!r}")
        return value

    def format(self, a) -> str:
        return _format_number(a)


class ViterbiSemiring(Semiring):
    """([0,1], max, ·, 0, 1)."""

    name = "viterbi"
    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b):
        return a if a >= b else b

    def mul(self, a, b):
        return a * b

    def inf_power(self, a):
        return self.one if a >= 1 else self.zero

    def eq(self, a, b) -> bool:
        return _num_eq(a, b)

    def natural_le(self, a, b) -> bool:
        return a <= b or _num_eq(a, b)

    def coerce(self, raw):
        value = to_number(raw)
        if not 0 <= value <= 1:
            raise ValueError(f"Viterbi values lie in [0,1], got {raw!r}")
        return value

    def format(self, a) -> str:
        return _format_number(a)


class MinMaxSemiring(Semiring):
    """(A, max, min, a, b) over a declared, totally ordered list of levels."""

    def __init__(self, levels: Sequence[str]):
        levels = tuple(levels)
        if len(levels) < 2:
            raise ValueError("a min-max semiring needs at least two levels")
        if len(set(levels)) != len(levels):
            raise ValueError(f"duplicate levels in {levels!r}")
        self.levels = levels
        self._rank = {lv: i for i, lv in enumerate(levels)}
        self.zero = levels[0]
        self.one = levels[-1]
        self.name = "minmax:" + ",".join(levels)

    def add(self, a, b):
        return a if self._rank[a] >= self._rank[b] else b

    def mul(self, a, b):
        return a if self._rank[a] <= self._rank[b] else b

    def inf_power(self, a):
        return a

    def natural_le(self, a, b) -> bool:
        return self._rank[a] <= self._rank[b]

    def coerce(self, raw):
        if raw not in self._rank:
            raise ValueError(f"unknown level {raw!r}; declared: {', '.join(self.levels)}")
        return raw


BOOLEAN = BooleanSemiring()
TROPICAL = TropicalSemiring()
VITERBI = ViterbiSemiring()


def semiring_by_name(name: str) -> Semiring:
    """Resolve a CLI semiring name.

    ``strat`` and ``posbool`` give polynomial semirings without dual
    indeterminates; the interpretation builders pick the dual variants
    themselves where they need them.
    """
    from semibuchi.poly import PolySemiring

    if name == "boolean":
        return BOOLEAN
    if name == "tropical":
        return TROPICAL
    if name == "viterbi":
        return VITERBI
    if name.startswith("minmax:"):
        return MinMaxSemiring([s.strip() for s in name[len("minmax:"):].split(",") if s.strip()])
    if name == "strat":
        return PolySemiring()
    if name == "posbool":
        return PolySemiring(posbool=True)
    raise ValueError(f"unknown semiring {name!r}")


@dataclass
class LawReport:
    semiring: str
    checked: int = 0
    violations: list[tuple[str, tuple]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def laws_violated(self) -> set[str]:
        return {law for law, _ in self.violations}


def check_laws(ops: Semiring, samples: Sequence, triples: int | None = None,
               rng: random.Random | None = None, max_violations: int = 50) -> LawReport:
    """Check the absorptive-semiring axioms and the ∞-power laws on samples.

    With ``triples=None`` every triple over ``samples`` is checked; otherwise
    that many triples are drawn at random.  Violations are collected, never
    raised.
    """
    samples = list(samples)
    if not samples:
        raise ValueError("check_laws needs at least one sample")
    report = LawReport(ops.name)
    add, mul, eq, le, inf = ops.add, ops.mul, ops.eq, ops.natural_le, ops.inf_power
    zero, one = ops.zero, ops.one

    def fail(law, *args):
        if len(report.violations) < max_violations:
            report.violations.append((law, args))

    if triples is None:
        source = itertools.product(samples, repeat=3)
    else:
        rng = rng or random.Random(0)
        source = ((rng.choice(samples), rng.choice(samples), rng.choice(samples))
                  for _ in range(triples))

    for a, b, c in source:
        report.checked += 1
        ab, ba = add(a, b), add(b, a)
        mab, mba = mul(a, b), mul(b, a)
        if not eq(add(ab, c), add(a, add(b, c))):
            fail("add-associative", a, b, c)
        if not eq(mul(mab, c), mul(a, mul(b, c))):
            fail("mul-associative", a, b, c)
        if not eq(ab, ba):
            fail("add-commutative", a, b)
        if not eq(mab, mba):
            fail("mul-commutative", a, b)
        if not eq(mul(a, add(b, c)), add(mab, mul(a, c))):
            fail("distributive", a, b, c)
        if not eq(add(a, zero), a):
            fail("add-identity", a)
        if not eq(mul(a, one), a):
            fail("mul-identity", a)
        if not eq(mul(a, zero), zero):
            fail("annihilation", a)
        if not eq(add(a, mab), a):
            fail("absorption", a, b)
        if not eq(add(a, a), a):
            fail("idempotence", a)
        # natural order: partial order with zero bottom and one top
        if not le(a, a):
            fail("order-reflexive", a)
        if le(a, b) and le(b, a) and not eq(a, b):
            fail("order-antisymmetric", a, b)
        if le(a, b) and le(b, c) and not le(a, c):
            fail("order-transitive", a, b, c)
        if not (le(zero, a) and le(a, one)):
            fail("order-bounds", a)
        if not le(mab, a):
            fail("mul-decreasing", a, b)
        ia, ib = inf(a), inf(b)
        if not eq(mul(a, ia), ia):
            fail("inf-absorbs-power", a)
        if not eq(inf(mab), mul(ia, ib)):
            fail("inf-mul", a, b)
        if not eq(inf(ab), add(ia, ib)):
            fail("inf-add", a, b)
        if le(a, b) and not le(ia, ib):
            fail("inf-monotone", a, b)
    return report
