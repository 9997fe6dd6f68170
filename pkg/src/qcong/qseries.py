"""q-shifted factorials, q-integers, q-binomials and summand builders.

A summand is described by a :class:`Summand`, an ordered list of factor
recipes evaluated at each k.  Factors of the shape ``1 - x`` are collected
as signed atom counts, so identical atoms in numerator and denominator
cancel before anything is expanded.  The result is a
:class:`~qcong.exact_core.FactoredRat` whose denominator is a multiset of
atoms.

:class:`SeriesSpec` is the classical r-phi-s layout (upper/lower parameter
lists, base, argument, optional very-well-poised multiplier) compiled down
to a Summand.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .exact_core import (
    NVARS,
    VARS,
    DenAtom,
    FactoredRat,
    LaurentPoly,
    MultiPoly,
    atoms_product,
    qint_q,
    ratfunc_sum,
    to_fraction,
    var_index,
)


class SingularTerm(ZeroDivisionError):
    """A denominator factor of the summand is identically zero."""


# ---------------------------------------------------------------------------
# parameter monomials


@dataclass(frozen=True)
class ParamExpr:
    """Monomial ``coef * q^e_q * a^e_a * b^e_b * c^e_c * d^e_d`` (exponents in Z)."""

    coef: Fraction = Fraction(1)
    exps: tuple = (0, 0, 0, 0, 0)

    def __mul__(self, other) -> ParamExpr:
        if not isinstance(other, ParamExpr):
            return ParamExpr(self.coef * to_fraction(other), self.exps)
        return ParamExpr(self.coef * other.coef, tuple(x + y for x, y in zip(self.exps, other.exps)))

    __rmul__ = __mul__

    def __truediv__(self, other) -> ParamExpr:
        if not isinstance(other, ParamExpr):
            return ParamExpr(self.coef / to_fraction(other), self.exps)
        return self * other ** -1

    def __rtruediv__(self, other) -> ParamExpr:
        return ParamExpr(to_fraction(other)) * self ** -1

    def __pow__(self, e: int) -> ParamExpr:
        return ParamExpr(self.coef**e, tuple(x * e for x in self.exps))

    def __neg__(self) -> ParamExpr:
        return ParamExpr(-self.coef, self.exps)

    def qshift(self, s: int) -> ParamExpr:
        return ParamExpr(self.coef, (self.exps[0] + s,) + self.exps[1:])

    def specialize(self, env: Mapping[str, object] | None) -> ParamExpr:
        if not env:
            return self
        coef = self.coef
        exps = list(self.exps)
        for v, x in env.items():
            i = var_index(v)
            if i and exps[i]:
                coef *= to_fraction(x) ** exps[i]
                exps[i] = 0
        return ParamExpr(coef, tuple(exps))

    def to_laurent(self) -> LaurentPoly:
        return LaurentPoly.monomial(self.exps, self.coef)

    def evaluate(self, point: Mapping[str, object]):
        val = self.coef
        for v, e in zip(VARS, self.exps):
            if e:
                val = val * point[v] ** e
        return val

    def __str__(self) -> str:
        mono = "*".join(f"{v}^{e}" if e != 1 else v for v, e in zip(VARS, self.exps) if e)
        if not mono:
            return str(self.coef)
        return mono if self.coef == 1 else f"{self.coef}*{mono}"


def P(coef=1, q: int = 0, a: int = 0, b: int = 0, c: int = 0, d: int = 0) -> ParamExpr:
    """Shorthand: ``P(q=2, a=-1)`` is q^2/a, ``P(-1, q=1)`` is -q."""
    return ParamExpr(to_fraction(coef), (q, a, b, c, d))


Q = P(q=1)
ONE = P()


# ---------------------------------------------------------------------------
# term accumulation


class _Acc:
    """Signed atom counts plus a scalar monomial, later turned into a FactoredRat."""

    __slots__ = ("coef", "shift", "atoms", "zeros", "extra")

    def __init__(self):
        self.coef = Fraction(1)
        self.shift = [0] * NVARS
        self.atoms: Counter = Counter()
        self.zeros = 0
        self.extra: list[FactoredRat] = []

    def one_minus(self, x: ParamExpr, power: int = 1):
        if power == 0:
            return
        unit, shift, atom = DenAtom.one_minus(x.coef, x.exps)
        if atom is None:
            if unit == 0:
                self.zeros += power
                return
            self.coef *= unit**power
            return
        self.coef *= unit**power
        for i, s in enumerate(shift):
            self.shift[i] += s * power
        self.atoms[atom] += power

    def monomial(self, x: ParamExpr, power: int = 1):
        if x.coef == 0:
            if power > 0:
                self.zeros += 1
                return
            raise SingularTerm("zero monomial in a denominator")
        self.coef *= x.coef**power
        for i, e in enumerate(x.exps):
            self.shift[i] += e * power

    def build(self) -> FactoredRat:
        if self.zeros > 0 or self.coef == 0:
            return FactoredRat.zero()
        if self.zeros < 0:
            raise SingularTerm("a denominator factor vanishes identically")
        num_atoms = {a: m for a, m in self.atoms.items() if m > 0}
        den_atoms = {a: -m for a, m in self.atoms.items() if m < 0}
        num = LaurentPoly(atoms_product(num_atoms).scale(self.coef), self.shift)
        out = FactoredRat(num, den_atoms)
        for fr in self.extra:
            out = out * fr
        return out


Factor = Callable[[_Acc, int, Mapping], None]


def _length(length, k: int) -> int:
    return k if length is None else int(length(k))


def poch(x, t: int = 1, power: int = 1, length: Callable[[int], int] | None = None) -> Factor:
    """(x; q^t)_L raised to ``power``; L = length(k), default k.

    ``x`` is a ParamExpr or a function of k returning one.
    """

    def apply(acc: _Acc, k: int, env):
        xs = (x(k) if callable(x) else x).specialize(env)
        for j in range(_length(length, k)):
            acc.one_minus(xs.qshift(t * j), power)

    return apply


def qint(alpha: int, beta: int, t: int = 1, power: int = 1) -> Factor:
    """[alpha*k + beta] in base q^t, i.e. (1 - q^(t N)) / (1 - q^t)."""

    def apply(acc: _Acc, k: int, env):
        n = alpha * k + beta
        acc.one_minus(P(q=t * n), power)
        acc.one_minus(P(q=t), -power)

    return apply


def binom_factor(x_of_k: Callable[[int], ParamExpr], power: int = 1) -> Factor:
    """A single factor (1 - x(k)), e.g. 1 + a q^(4k+1) via x = -a q^(4k+1)."""

    def apply(acc: _Acc, k: int, env):
        acc.one_minus(x_of_k(k).specialize(env), power)

    return apply


def mono(x: ParamExpr, exponent: Callable[[int], int] | None = None) -> Factor:
    """x^e(k), default x^k."""

    def apply(acc: _Acc, k: int, env):
        acc.monomial(x.specialize(env), k if exponent is None else int(exponent(k)))

    return apply


def qpow(exponent: Callable[[int], object]) -> Factor:
    """q^e(k); e(k) must be an integer for every k used."""

    def apply(acc: _Acc, k: int, env):
        e = to_fraction(exponent(k))
        if e.denominator != 1:
            raise ValueError(f"non-integral q-exponent {e} at k={k}")
        acc.monomial(Q, int(e))

    return apply


def sign() -> Factor:
    """(-1)^k."""

    def apply(acc: _Acc, k: int, env):
        if k % 2:
            acc.coef = -acc.coef

    return apply


def qbinom_factor(top: Callable[[int], int], bottom: Callable[[int], int], t: int = 1, power: int = 1) -> Factor:
    """q-binomial [top(k), bottom(k)] in base q^t, raised to ``power``."""

    def apply(acc: _Acc, k: int, env):
        x, j = top(k), bottom(k)
        if j < 0:
            acc.zeros += 1 if power > 0 else -1
            return
        for i in range(j):
            acc.one_minus(P(q=t * (x - j + 1 + i)), power)
            acc.one_minus(P(q=t * (i + 1)), -power)

    return apply


def extra(fn: Callable[[int, Mapping], FactoredRat]) -> Factor:
    """Arbitrary per-k multiplier, e.g. an inner terminating sum."""

    def apply(acc: _Acc, k: int, env):
        acc.extra.append(fn(k, env))

    return apply


@dataclass
class Summand:
    """Product of factor recipes; ``env`` fixes some parameters to rationals."""

    factors: Sequence[Factor]
    env: Mapping[str, object] = field(default_factory=dict)

    def with_env(self, env: Mapping[str, object] | None) -> Summand:
        merged = dict(self.env)
        merged.update(env or {})
        return Summand(self.factors, merged)

    def term(self, k: int) -> FactoredRat:
        acc = _Acc()
        for f in self.factors:
            f(acc, k, self.env)
            if acc.zeros > 0:
                # a vanishing numerator factor settles the term; keep scanning
                # only to detect vanishing denominators
                continue
        return acc.build()


# ---------------------------------------------------------------------------
# classical r-phi-s layout


@dataclass
class SeriesSpec:
    """r-phi-s summand in base q^t with the usual (-1)^k q^(t k(k-1)/2) balancing.

    ``vwp`` = alpha adds the multiplier (1 - alpha q^(2tk)) / (1 - alpha).
    The factor (q^t; q^t)_k is implicit in the denominator, as in the
    standard definition.
    """

    upper: Sequence[ParamExpr]
    lower: Sequence[ParamExpr]
    t: int = 1
    argument: ParamExpr = ONE
    vwp: ParamExpr | None = None
    extra: Callable[[int, Mapping], FactoredRat] | None = None
    env: Mapping[str, object] = field(default_factory=dict)

    def summand(self) -> Summand:
        t = self.t
        factors: list[Factor] = [poch(x, t) for x in self.upper]
        factors += [poch(x, t, -1) for x in self.lower]
        factors.append(poch(P(q=t), t, -1))
        factors.append(mono(self.argument))
        balance = 1 + len(self.lower) - len(self.upper)
        if balance:
            factors.append(_balance(t, balance))
        if self.vwp is not None:
            alpha = self.vwp
            factors.append(binom_factor(lambda k: alpha.qshift(2 * t * k)))
            factors.append(binom_factor(lambda k: alpha, -1))
        if self.extra is not None:
            factors.append(extra(self.extra))
        return Summand(factors, dict(self.env))


def _balance(t: int, power: int) -> Factor:
    def apply(acc: _Acc, k: int, env):
        e = power * t * k * (k - 1) // 2
        acc.monomial(P(q=1), e)
        if (power * k) % 2:
            acc.coef = -acc.coef

    return apply


def term(spec, k: int) -> FactoredRat:
    """k-th summand of a SeriesSpec or Summand."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    s = spec.summand() if isinstance(spec, SeriesSpec) else spec
    return s.term(k)


def truncated_sum(spec, M: int) -> FactoredRat:
    """Sum of the summands k = 0..M over the union denominator."""
    if M < 0:
        return FactoredRat.zero()
    s = spec.summand() if isinstance(spec, SeriesSpec) else spec
    return ratfunc_sum(s.term(k) for k in range(M + 1))


# ---------------------------------------------------------------------------
# basic objects


def qint_poly(n: int) -> MultiPoly:
    """The q-integer [n] = 1 + q + ... + q^(n-1)."""
    return MultiPoly.from_q(qint_q(n))


def qpoch(x: ParamExpr, t: int, k: int) -> MultiPoly:
    """(x; q^t)_k expanded; x may carry negative exponents only if the product stays polynomial."""
    acc = _Acc()
    poch(x, t)(acc, k, {})
    fr = acc.build()
    return fr.num.to_poly() if not fr.den else _not_poly(x)


def _not_poly(x):
    raise ValueError(f"(x; q^t)_k with x = {x} is not a polynomial")


def qpoch_laurent(x: ParamExpr, t: int, k: int) -> LaurentPoly:
    """(x; q^t)_k as a Laurent polynomial (negative powers allowed)."""
    acc = _Acc()
    poch(x, t)(acc, k, {})
    fr = acc.build()
    if fr.den:
        raise ValueError("unexpected denominator")
    return fr.num


def qbinomial(x: int, k: int, t: int = 1) -> FactoredRat:
    """[x choose k] in base q^t as (q^(t(x-k+1)); q^t)_k / (q^t; q^t)_k; zero for k < 0."""
    if k < 0:
        return FactoredRat.zero()
    acc = _Acc()
    qbinom_factor(lambda _: x, lambda _: k, t)(acc, 0, {})
    return acc.build()
