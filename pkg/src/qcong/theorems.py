"""Registry of q-congruence statements and the driver that checks them.

Each entry knows its admissible n, how to build the two sides for a given
n as FactoredRat values, and the modulus.  ``check_statement`` instantiates
an entry and runs the congruence test; ``scan`` does that over a range.

Parameters are handled in one of three ways:

* symbolic: the variable (a, sometimes b) is carried through the polynomials;
* sampled: the variable is replaced by rationals from a seeded generator,
  and every sample must pass;
* absent.

In "sampled" mode even the symbolic variables are sampled, and modulus
factors that involve a are dropped since they no longer mean anything.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .congruence import FAIL, PASS, SKIPPED, CheckResult, check_congruent, check_identity, combine
from .exact_core import (
    Cyclotomic,
    CyclotomicNeg,
    FactoredRat,
    LaurentPoly,
    Modulus,
    MultiPoly,
    OneMinusA2Q2n,
    OneMinusAQn,
    AMinusQn,
    QInteger,
    kronecker_symbol,
)
from .qseries import (
    Q,
    P,
    SeriesSpec,
    Summand,
    binom_factor,
    extra,
    mono,
    poch,
    qbinom_factor,
    qint,
    qint_poly,
    qpow,
    sign,
    truncated_sum,
)

PROVED, CONJECTURE, IDENTITY = "proved", "conjecture", "identity"
DEFAULT_SEED = 20181
SYMBOLIC, SAMPLED = "symbolic", "sampled"


class UnknownStatement(KeyError):
    pass


# ---------------------------------------------------------------------------
# domain conditions


@dataclass(frozen=True)
class Cond:
    text: str
    test: Callable[[int, int | None], bool]

    def reason(self, n: int, v: int | None) -> str | None:
        return None if self.test(n, v) else f"n must be {self.text}"


ODD = Cond("odd", lambda n, v: n % 2 == 1)
POSITIVE = Cond("positive", lambda n, v: n >= 1)
NONNEG = Cond("nonnegative", lambda n, v: n >= 0)


def gt(m: int) -> Cond:
    return Cond(f"greater than {m}", lambda n, v: n > m)


def coprime(m: int) -> Cond:
    return Cond(f"coprime to {m}", lambda n, v: math.gcd(n, m) == 1)


def residue(rs: Iterable[int], m: int) -> Cond:
    rs = tuple(r % m for r in rs)
    text = " or ".join(str(r) for r in rs)
    return Cond(f"congruent to {text} mod {m}", lambda n, v: n % m in rs)


PLUS_MINUS_ONE_MOD_D = Cond("congruent to +-1 mod d", lambda n, v: n % v in (1, v - 1))
MINUS_ONE_MOD_D = Cond("congruent to -1 mod d", lambda n, v: n % v == v - 1)
ONE_MOD_D = Cond("congruent to 1 mod d", lambda n, v: n % v == 1)


# ---------------------------------------------------------------------------
# registry types


@dataclass
class Check:
    """One congruence (or identity when ``modulus`` is None) to test."""

    label: str
    lhs: FactoredRat
    rhs: FactoredRat | None
    modulus: Modulus | None


@dataclass
class Ctx:
    n: int
    v: int | None
    env: dict
    first: bool = True

    def summand(self, factors) -> Summand:
        return Summand(factors, self.env)

    def sum(self, factors, M: int) -> FactoredRat:
        return truncated_sum(self.summand(factors), M)

    def range_sum(self, factors, lo: int, hi: int) -> FactoredRat:
        from .exact_core import ratfunc_sum

        s = self.summand(factors)
        return ratfunc_sum(s.term(k) for k in range(lo, hi + 1))

    def prod(self, factors, k: int) -> FactoredRat:
        return self.summand(factors).term(k)


@dataclass
class StatementSpec:
    id: str
    kind: str
    anchor: str
    domain: tuple
    modulus: str
    build: Callable[[Ctx], list[Check]]
    symbolic: tuple = ()
    sampled: tuple = ()
    family: tuple | None = None  # (name, default values)
    limits: str = ""

    @property
    def param_mode(self) -> str:
        parts = []
        if self.symbolic:
            parts.append("symbolic " + ",".join(self.symbolic))
        if self.sampled:
            parts.append("sampled " + ",".join(self.sampled))
        return "; ".join(parts) or "none"

    def domain_reason(self, n: int, v: int | None) -> str | None:
        for c in self.domain:
            r = c.reason(n, v)
            if r:
                return r
        return None

    def summary(self) -> dict:
        out = {
            "id": self.id,
            "kind": self.kind,
            "anchor": self.anchor,
            "modulus": self.modulus,
            "domain": [c.text for c in self.domain],
            "params": self.param_mode,
        }
        if self.family:
            out["family"] = {"name": self.family[0], "values": list(self.family[1])}
        if self.limits:
            out["limits"] = self.limits
        return out


_REGISTRY: dict[str, StatementSpec] = {}


def statement(id: str, kind: str, anchor: str, *, domain=(), modulus: str = "", symbolic=(), sampled=(),
              family=None, limits: str = ""):
    def deco(fn):
        if id in _REGISTRY:
            raise ValueError(f"duplicate statement id {id}")
        _REGISTRY[id] = StatementSpec(id, kind, anchor, tuple(domain), modulus, fn, tuple(symbolic),
                                      tuple(sampled), family, limits)
        return fn

    return deco


def get(id: str) -> StatementSpec:
    try:
        return _REGISTRY[id]
    except KeyError:
        raise UnknownStatement(id) from None


def list_statements() -> list[StatementSpec]:
    """All entries in registration order (proved results first within each topic)."""
    return list(_REGISTRY.values())


def catalog() -> list[dict]:
    return [s.summary() for s in _REGISTRY.values()]


# ---------------------------------------------------------------------------
# helpers for building sides


def qi(n: int) -> LaurentPoly:
    return LaurentPoly(qint_poly(n))


def qp(e: int, coef=1) -> LaurentPoly:
    return LaurentPoly.q_power(e, coef)


def neg_q_power(e: int) -> LaurentPoly:
    """(-q)^e."""
    return LaurentPoly.q_power(e, -1 if e % 2 else 1)


def fr(x) -> FactoredRat:
    return x if isinstance(x, FactoredRat) else FactoredRat(x)


def md(*items) -> Modulus:
    return Modulus([(f, 1) if not isinstance(f, tuple) else f for f in items])


def micro(n: int) -> list:
    """The two parameter factors (1 - a q^n)(a - q^n)."""
    return [OneMinusAQn(n), AMinusQn(n)]


def strip_mixed(m: Modulus) -> Modulus:
    return Modulus([(f, e) for f, e in m.factors if not f.is_mixed()])


def a_(coef=1, q=0, a=1, b=0, c=0):
    return P(coef, q=q, a=a, b=b, c=c)


def binomial_content(N: int, K: int) -> dict[int, int]:
    """Cyclotomic content of the q-binomial [N choose K]."""
    if K < 0 or K > N:
        return {}
    out = {}
    for d in range(2, N + 1):
        e = N // d - K // d - (N - K) // d
        if e:
            out[d] = e
    return out


def one_plus_qn_content(n: int) -> dict[int, int]:
    """1 + q^n = (1 - q^2n)/(1 - q^n) as a product of Phi_d."""
    return {d: 1 for d in range(1, 2 * n + 1) if (2 * n) % d == 0 and n % d != 0}


def content_modulus(*contents: dict[int, int]) -> Modulus:
    return Modulus([(Cyclotomic(d), e) for c in contents for d, e in c.items()])


def limits_half_full(n: int) -> list[tuple[str, int]]:
    out = [("M=n-1", n - 1)]
    if (n - 1) // 2 != n - 1:
        out.append(("M=(n-1)/2", (n - 1) // 2))
    return out


def limits_m(n: int) -> list[tuple[str, int]]:
    out = [("M=n-1", n - 1)]
    if (n + 1) // 2 != n - 1:
        out.append(("M=(n+1)/2", (n + 1) // 2))
    return out


# frequently used parameter monomials
AQ = P(q=1, a=1)  # aq
Q_A = P(q=1, a=-1)  # q/a


# ---------------------------------------------------------------------------
# main results: the (q;q^2)_k^6 and (q;q^2)_k^5 sums


def _first_lhs():
    return [qint(4, 1), poch(Q, 2, 6), poch(P(q=2), 2, -6), qpow(lambda k: k)]


def _first_rhs_sum(c: Ctx, power: int) -> FactoredRat:
    n = c.n
    s = c.sum([poch(Q, 2, power), poch(P(q=2), 2, -power), qpow(lambda k: 2 * k)], (n - 1) // 2)
    return s * (qi(n) * qp((1 - n) // 2))


def _first(limit: Callable[[int], int]):
    def build(c: Ctx):
        n = c.n
        lhs = c.sum(_first_lhs(), limit(n))
        rhs = _first_rhs_sum(c, 4)
        return [Check("", lhs, rhs, md(QInteger(n), (Cyclotomic(n), 2)))]

    return build


statement("S-FIRST-FULL", PROVED,
          "sum_{k<=n-1} [4k+1](q;q^2)_k^6/(q^2;q^2)_k^6 q^k = [n]q^((1-n)/2) sum_{k<=(n-1)/2} (q;q^2)_k^4/(q^2;q^2)_k^4 q^2k",
          domain=[ODD], modulus="[n]Phi_n(q)^2", limits="n-1")(_first(lambda n: n - 1))
statement("S-FIRST-HALF", PROVED,
          "sum_{k<=(n-1)/2} [4k+1](q;q^2)_k^6/(q^2;q^2)_k^6 q^k = [n]q^((1-n)/2) sum_{k<=(n-1)/2} (q;q^2)_k^4/(q^2;q^2)_k^4 q^2k",
          domain=[ODD], modulus="[n]Phi_n(q)^2", limits="(n-1)/2")(_first(lambda n: (n - 1) // 2))


@statement("S-FIRST-TAIL", PROVED,
           "upper half (n-1)/2 < k <= n-1 of the (q;q^2)_k^6 sum vanishes modulo Phi_n(q)^3",
           domain=[ODD], modulus="Phi_n(q)^3")
def _first_tail(c: Ctx):
    n = c.n
    tail = c.range_sum(_first_lhs(), (n + 1) // 2, n - 1)
    return [Check("", tail, None, md((Cyclotomic(n), 3)))]


def _second(limit: Callable[[int], int]):
    def build(c: Ctx):
        n = c.n
        lhs = c.sum([sign(), qint(4, 1), poch(Q, 2, 5), poch(P(q=2), 2, -5), qpow(lambda k: k * k + k)], limit(n))
        rhs = _first_rhs_sum(c, 3)
        return [Check("", lhs, rhs, md(QInteger(n), (Cyclotomic(n), 2)))]

    return build


statement("S-SECOND-FULL", PROVED,
          "sum_{k<=n-1} (-1)^k [4k+1](q;q^2)_k^5/(q^2;q^2)_k^5 q^(k^2+k) = [n]q^((1-n)/2) sum (q;q^2)_k^3/(q^2;q^2)_k^3 q^2k",
          domain=[ODD], modulus="[n]Phi_n(q)^2", limits="n-1")(_second(lambda n: n - 1))
statement("S-SECOND-HALF", PROVED,
          "sum_{k<=(n-1)/2} (-1)^k [4k+1](q;q^2)_k^5/(q^2;q^2)_k^5 q^(k^2+k) = [n]q^((1-n)/2) sum (q;q^2)_k^3/(q^2;q^2)_k^3 q^2k",
          domain=[ODD], modulus="[n]Phi_n(q)^2", limits="(n-1)/2")(_second(lambda n: (n - 1) // 2))


def _sixfold_3(c: Ctx, M: int) -> FactoredRat:
    return c.sum([qint(6, 1), poch(Q, 3, 6), poch(P(q=3), 3, -6), qpow(lambda k: 3 * k)], M)


@statement("S-THIRD", PROVED, "sum_{k<=n-1} [6k+1](q;q^3)_k^6/(q^3;q^3)_k^6 q^3k = 0",
           domain=[POSITIVE, coprime(3)], modulus="[n] if n=1 mod 3, [n]Phi_n(q) if n=2 mod 3")
def _third(c: Ctx):
    n = c.n
    m = md(QInteger(n)) if n % 3 == 1 else md(QInteger(n), Cyclotomic(n))
    return [Check("", _sixfold_3(c, n - 1), None, m)]


@statement("S-FOURTH", PROVED, "sum_{k<=n-1} [2dk+1](q;q^d)_k^4/(q^d;q^d)_k^4 q^((d-2)k) = 0",
           domain=[POSITIVE, MINUS_ONE_MOD_D], modulus="[n]Phi_n(q)", family=("d", (3, 4, 5, 6)))
def _fourth(c: Ctx):
    n, d = c.n, c.v
    s = c.sum([qint(2 * d, 1), poch(Q, d, 4), poch(P(q=d), d, -4), qpow(lambda k: (d - 2) * k)], n - 1)
    return [Check("", s, None, md(QInteger(n), Cyclotomic(n)))]


# ---------------------------------------------------------------------------
# creative microscoping with a parameter a


@statement("S-LEMMA21", PROVED,
           "(aq;q^2)_{m-k}/(q^2/a;q^2)_{m-k} = (-a)^(m-2k) (aq;q^2)_k/(q^2/a;q^2)_k q^(m^2+k), m=(n-1)/2, each k",
           domain=[ODD], modulus="Phi_n(q)", symbolic=("a",))
def _lemma(c: Ctx):
    n = c.n
    m = (n - 1) // 2
    ratio = [poch(AQ, 2), poch(P(q=2, a=-1), 2, -1)]
    checks = []
    for k in range(m + 1):
        lhs = c.prod(ratio, m - k)
        e = m - 2 * k
        rhs = c.prod(ratio, k) * LaurentPoly.monomial((m * m + k, e, 0, 0, 0), -1 if e % 2 else 1)
        checks.append(Check(f"k={k}", lhs, rhs, md(Cyclotomic(n))))
    return checks


@statement("S-CONJ56", PROVED,
           "sum_{k<=(n-1)/2} (aq,q/a;q^2)_k (q^2;q^4)_k/((aq^2,q^2/a;q^2)_k (q^4;q^4)_k) q^2k = 0",
           domain=[residue([3], 4)], modulus="Phi_n(q)", symbolic=("a",))
def _conj56(c: Ctx):
    n = c.n
    s = c.sum([poch(AQ, 2), poch(Q_A, 2), poch(P(q=2), 4), poch(P(q=2, a=1), 2, -1), poch(P(q=2, a=-1), 2, -1),
               poch(P(q=4), 4, -1), qpow(lambda k: 2 * k)], (n - 1) // 2)
    return [Check("", s, None, md(Cyclotomic(n)))]


def qab_sides(c: Ctx) -> tuple[FactoredRat, FactoredRat]:
    n = c.n
    lhs = c.sum([qint(4, 1), poch(AQ, 2), poch(Q_A, 2), poch(P(q=1, b=1), 2), poch(Q, 2, 3),
                 poch(P(q=2, a=1), 2, -1), poch(P(q=2, a=-1), 2, -1), poch(P(q=2, b=-1), 2, -1),
                 poch(P(q=2), 2, -3), mono(P(q=1, b=-1))], (n - 1) // 2)
    rhs = c.sum([poch(AQ, 2), poch(Q_A, 2), poch(P(q=1, b=-1), 2), poch(Q, 2), poch(P(q=2, b=-1), 2, -1),
                 poch(P(q=2), 2, -3), qpow(lambda k: 2 * k)], (n - 1) // 2)
    return lhs, rhs * (qi(n) * qp((1 - n) // 2))


@statement("S-QAB", PROVED,
           "two-parameter sum [4k+1](aq,q/a,bq;q^2)_k(q;q^2)_k^3/((aq^2,q^2/a,q^2/b;q^2)_k(q^2;q^2)_k^3)(q/b)^k",
           domain=[ODD], modulus="Phi_n(q)(1-aq^n)(a-q^n)", symbolic=("a", "b"))
def _qab(c: Ctx):
    n = c.n
    lhs, rhs = qab_sides(c)
    return [Check("", lhs, rhs, md(Cyclotomic(n), *micro(n)))]


@statement("S-QD2", PROVED,
           "sum_{k<=n-1} [2dk+1](aq,q/a;q^d)_k(q;q^d)_k^4/((aq^d,q^d/a;q^d)_k(q^d;q^d)_k^4) q^((2d-3)k) = 0",
           domain=[gt(1), PLUS_MINUS_ONE_MOD_D], modulus="Phi_n(q) if n=1 mod d, Phi_n(q)^2 if n=-1 mod d",
           symbolic=("a",), family=("d", (3, 4, 5, 6)))
def _qd2(c: Ctx):
    n, d = c.n, c.v
    s = c.sum([qint(2 * d, 1), poch(AQ, d), poch(Q_A, d), poch(Q, d, 4), poch(P(q=d, a=1), d, -1),
               poch(P(q=d, a=-1), d, -1), poch(P(q=d), d, -4), qpow(lambda k: (2 * d - 3) * k)], n - 1)
    e = 1 if n % d == 1 else 2
    return [Check("", s, None, md((Cyclotomic(n), e)))]


def _two_param_d(c: Ctx, shift: int, qexp: Callable[[int], int]) -> FactoredRat:
    """[2dk+1](aq^s,q^s/a,bq^s,q^s/b;q^d)_k (q^s;q^d)_k^2 / ((aq^d,q^d/a,bq^d,q^d/b;q^d)_k (q^d;q^d)_k^2) q^e(k)."""
    n, d = c.n, c.v
    fs = [qint(2 * d, 1), poch(P(q=shift, a=1), d), poch(P(q=shift, a=-1), d), poch(P(q=shift, b=1), d),
          poch(P(q=shift, b=-1), d), poch(P(q=shift), d, 2), poch(P(q=d, a=1), d, -1), poch(P(q=d, a=-1), d, -1),
          poch(P(q=d, b=1), d, -1), poch(P(q=d, b=-1), d, -1), poch(P(q=d), d, -2), qpow(qexp)]
    return c.sum(fs, n - 1)


@statement("C-2DK1NEW", CONJECTURE,
           "sum_{k<=n-1} [2dk+1](aq,q/a,bq,q/b;q^d)_k(q;q^d)_k^2/((aq^d,q^d/a,bq^d,q^d/b;q^d)_k(q^d;q^d)_k^2) q^((2d-3)k)",
           domain=[POSITIVE, PLUS_MINUS_ONE_MOD_D], modulus="[n] if n=1 mod d, [n]Phi_n(q) if n=-1 mod d",
           symbolic=("a",), sampled=("b",), family=("d", (3, 4, 5, 6)))
def _c2dk1(c: Ctx):
    n, d = c.n, c.v
    s = _two_param_d(c, 1, lambda k: (2 * d - 3) * k)
    m = md(QInteger(n)) if n % d == 1 else md(QInteger(n), Cyclotomic(n))
    return [Check("", s, None, m)]


@statement("C-2D-MINUS", CONJECTURE,
           "sum_{k<=n-1} [2dk+1](aq^-1,q^-1/a,bq^-1,q^-1/b;q^d)_k(q^-1;q^d)_k^2/((aq^d,q^d/a,bq^d,q^d/b;q^d)_k(q^d;q^d)_k^2) q^((2d+3)k)",
           domain=[POSITIVE, PLUS_MINUS_ONE_MOD_D], modulus="[n] if n=-1 mod d, [n]Phi_n(q) if n=1 mod d",
           symbolic=("a",), sampled=("b",), family=("d", (3, 4, 5, 6)))
def _c2dminus(c: Ctx):
    n, d = c.n, c.v
    s = _two_param_d(c, -1, lambda k: (2 * d + 3) * k)
    m = md(QInteger(n)) if n % d == d - 1 else md(QInteger(n), Cyclotomic(n))
    return [Check("", s, None, m)]


# ---------------------------------------------------------------------------
# further consequences of Watson's transformation


def _sum_4km1_5th_a(c: Ctx, M: int) -> FactoredRat:
    return c.sum([sign(), qint(4, -1), poch(P(q=-1, a=1), 2), poch(P(q=-1, a=-1), 2), poch(P(q=-1), 2, 3),
                  poch(P(q=2, a=1), 2, -1), poch(P(q=2, a=-1), 2, -1), poch(P(q=2), 2, -3),
                  qpow(lambda k: k * k + 5 * k)], M)


def _rhs_4km1_5th(c: Ctx, with_a: bool) -> FactoredRat:
    n = c.n
    if with_a:
        fs = [poch(P(q=-1, a=1), 2), poch(P(q=-1, a=-1), 2)]
    else:
        fs = [poch(P(q=-1), 2, 2)]
    s = c.sum(fs + [poch(P(q=3), 2), poch(P(q=2), 2, -3), qpow(lambda k: 3 * k)], (n + 1) // 2)
    return s * (qi(n) * neg_q_power((n + 1) * (n - 3) // 4))


@statement("S-4KM1-5A", PROVED,
           "sum_{k<=(n+1)/2} (-1)^k[4k-1](aq^-1,q^-1/a;q^2)_k(q^-1;q^2)_k^3/((aq^2,q^2/a;q^2)_k(q^2;q^2)_k^3) q^(k^2+5k)",
           domain=[ODD, gt(1)], modulus="Phi_n(q)(1-aq^n)(a-q^n)", symbolic=("a",))
def _4km1_5a(c: Ctx):
    n = c.n
    return [Check("", _sum_4km1_5th_a(c, (n + 1) // 2), _rhs_4km1_5th(c, True), md(Cyclotomic(n), *micro(n)))]


@statement("S-4KM1-5", PROVED,
           "sum_{k<=m} (-1)^k[4k-1](q^-1;q^2)_k^5/(q^2;q^2)_k^5 q^(k^2+5k) = [n](-q)^((n+1)(n-3)/4) sum (q^-1;q^2)_k^2(q^3;q^2)_k/(q^2;q^2)_k^3 q^3k",
           domain=[ODD, gt(1)], modulus="[n]Phi_n(q)^2", limits="n-1 and (n+1)/2")
def _4km1_5(c: Ctx):
    n = c.n
    rhs = _rhs_4km1_5th(c, False)
    out = []
    for label, M in limits_m(n):
        lhs = c.sum([sign(), qint(4, -1), poch(P(q=-1), 2, 5), poch(P(q=2), 2, -5), qpow(lambda k: k * k + 5 * k)], M)
        out.append(Check(label, lhs, rhs, md(QInteger(n), (Cyclotomic(n), 2))))
    return out


def _th4_a_factors():
    return [qint(4, -1), poch(P(q=-1, a=1), 2), poch(P(q=-1, a=-1), 2), poch(P(q=-1), 2, 2),
            poch(P(q=2, a=1), 2, -1), poch(P(q=2, a=-1), 2, -1), poch(P(q=2), 2, -2), qpow(lambda k: 4 * k)]


def _th4_factors():
    return [qint(4, -1), poch(P(q=-1), 2, 4), poch(P(q=2), 2, -4), qpow(lambda k: 4 * k)]


@statement("S-TH4-A", PROVED,
           "sum_{k<=m} [4k-1](aq^-1,q^-1/a;q^2)_k(q^-1;q^2)_k^2/((aq^2,q^2/a;q^2)_k(q^2;q^2)_k^2) q^4k = 0",
           domain=[ODD, gt(1)], modulus="Phi_n(q)(1-aq^n)(a-q^n)", symbolic=("a",), limits="n-1 and (n+1)/2")
def _th4a(c: Ctx):
    n = c.n
    return [Check(label, c.sum(_th4_a_factors(), M), None, md(Cyclotomic(n), *micro(n))) for label, M in limits_m(n)]


@statement("S-TH4", PROVED, "sum_{k<=m} [4k-1](q^-1;q^2)_k^4/(q^2;q^2)_k^4 q^4k = 0",
           domain=[ODD, gt(1)], modulus="[n]Phi_n(q)^2", limits="n-1 and (n+1)/2")
def _th4(c: Ctx):
    n = c.n
    return [Check(label, c.sum(_th4_factors(), M), None, md(QInteger(n), (Cyclotomic(n), 2))) for label, M in limits_m(n)]


@statement("C-TH4-STRONG", CONJECTURE,
           "the [4k-1](q^-1;q^2) sums: a-version modulo [n]^2(1-aq^n)(a-q^n), a=1 modulo [n]^4",
           domain=[ODD, gt(1)], modulus="[n]^2(1-aq^n)(a-q^n); [n]^4 at a=1", symbolic=("a",),
           limits="n-1 and (n+1)/2")
def _th4_strong(c: Ctx):
    n = c.n
    out = []
    for label, M in limits_m(n):
        out.append(Check(label + ", a", c.sum(_th4_a_factors(), M), None, md((QInteger(n), 2), *micro(n))))
        if c.first:
            out.append(Check(label + ", a=1", c.sum(_th4_factors(), M), None, md((QInteger(n), 4))))
    return out


@statement("S-QCHU", IDENTITY,
           "sum_{k<=m} (q^(-1-n),q^(-1+n);q^2)_k/(q^2;q^2)_k^2 q^2k = 0 (q-Chu-Vandermonde)",
           domain=[ODD, gt(1)], modulus="exact", limits="n-1 and (n+1)/2")
def _qchu(c: Ctx):
    n = c.n
    fs = [poch(P(q=-1 - n), 2), poch(P(q=-1 + n), 2), poch(P(q=2), 2, -2), qpow(lambda k: 2 * k)]
    return [Check(label, c.sum(fs, M), fr(MultiPoly.zero()), None) for label, M in limits_m(n)]


def _6th_a_factors():
    return [qint(4, 1), poch(P(q=-1, a=1), 2), poch(P(q=-1, a=-1), 2), poch(Q, 2, 2), poch(P(q=4, a=1), 2, -1),
            poch(P(q=4, a=-1), 2, -1), poch(P(q=2), 2, -2), qpow(lambda k: 4 * k)]


def _6th_factors():
    return [qint(4, 1), poch(P(q=-1), 2, 2), poch(Q, 2, 2), poch(P(q=4), 2, -2), poch(P(q=2), 2, -2),
            qpow(lambda k: 4 * k)]


@statement("S-6TH-A", PROVED,
           "sum_{k<=(n+1)/2} [4k+1](aq^-1,q^-1/a;q^2)_k(q;q^2)_k^2/((aq^4,q^4/a;q^2)_k(q^2;q^2)_k^2) q^4k = 0",
           domain=[ODD, gt(1)], modulus="Phi_n(q)(1-aq^n)(a-q^n)", symbolic=("a",))
def _6tha(c: Ctx):
    n = c.n
    return [Check("", c.sum(_6th_a_factors(), (n + 1) // 2), None, md(Cyclotomic(n), *micro(n)))]


@statement("S-6TH", PROVED,
           "sum_{k<=(n+1)/2} [4k+1](q^-1;q^2)_k^2(q;q^2)_k^2/((q^4;q^2)_k^2(q^2;q^2)_k^2) q^4k = 0",
           domain=[ODD, gt(3)], modulus="[n]Phi_n(q)^2")
def _6th(c: Ctx):
    n = c.n
    return [Check("", c.sum(_6th_factors(), (n + 1) // 2), None, md(QInteger(n), (Cyclotomic(n), 2)))]


@statement("C-6TH-STRONG", CONJECTURE,
           "the [4k+1](q^-1;q^2)_k^2 sums: a-version modulo [n]Phi_n(q)(1-aq^n)(a-q^n), a=1 modulo [n]Phi_n(q)^3",
           domain=[ODD, gt(3)], modulus="[n]Phi_n(q)(1-aq^n)(a-q^n); [n]Phi_n(q)^3 at a=1", symbolic=("a",))
def _6th_strong(c: Ctx):
    n = c.n
    M = (n + 1) // 2
    out = [Check("a", c.sum(_6th_a_factors(), M), None, md(QInteger(n), Cyclotomic(n), *micro(n)))]
    if c.first:
        out.append(Check("a=1", c.sum(_6th_factors(), M), None, md(QInteger(n), (Cyclotomic(n), 3))))
    return out


def _7th_a_factors():
    return [qint(4, 1), poch(P(q=-1, a=1), 2), poch(P(q=-1, a=-1), 2), poch(P(q=-1), 2), poch(Q, 2),
            poch(P(q=4, a=1), 2, -1), poch(P(q=4, a=-1), 2, -1), poch(P(q=4), 2, -1), poch(P(q=2), 2, -1),
            qpow(lambda k: 6 * k)]


def _8th_factors():
    return [qint(4, 1), poch(P(q=-1), 2, 3), poch(Q, 2), poch(P(q=4), 2, -3), poch(P(q=2), 2, -1),
            qpow(lambda k: 6 * k)]


@statement("S-7TH-A", PROVED,
           "sum_{k<=(n+1)/2} [4k+1](aq^-1,q^-1/a,q^-1,q;q^2)_k/((aq^4,q^4/a,q^4,q^2;q^2)_k) q^6k = 0",
           domain=[ODD, gt(3)], modulus="Phi_n(q)(1-aq^n)(a-q^n)", symbolic=("a",))
def _7tha(c: Ctx):
    n = c.n
    return [Check("", c.sum(_7th_a_factors(), (n + 1) // 2), None, md(Cyclotomic(n), *micro(n)))]


@statement("S-8TH", PROVED,
           "sum_{k<=(n+1)/2} [4k+1](q^-1;q^2)_k^3(q;q^2)_k/((q^4;q^2)_k^3(q^2;q^2)_k) q^6k = 0",
           domain=[ODD, gt(3)], modulus="Phi_n(q)^3; also [n]Phi_n(q)^2 when gcd(n,3)=1")
def _8th(c: Ctx):
    n = c.n
    s = c.sum(_8th_factors(), (n + 1) // 2)
    out = [Check("Phi_n^3", s, None, md((Cyclotomic(n), 3)))]
    if math.gcd(n, 3) == 1:
        out.append(Check("[n]Phi_n^2", s, None, md(QInteger(n), (Cyclotomic(n), 2))))
    return out


@statement("C-8TH-STRONG", CONJECTURE,
           "the [4k+1](q^-1;q^2)_k^3 sums: a-version modulo Phi_n(q)^2(1-aq^n)(a-q^n), a=1 modulo Phi_n(q)^4",
           domain=[ODD, gt(3)], modulus="Phi_n(q)^2(1-aq^n)(a-q^n); Phi_n(q)^4 at a=1", symbolic=("a",))
def _8th_strong(c: Ctx):
    n = c.n
    M = (n + 1) // 2
    out = [Check("a", c.sum(_7th_a_factors(), M), None, md((Cyclotomic(n), 2), *micro(n)))]
    if c.first:
        out.append(Check("a=1", c.sum(_8th_factors(), M), None, md((Cyclotomic(n), 4))))
    return out


def _4k1_7_factors():
    return [qint(4, 1), poch(P(q=-1), 2), poch(Q, 2, 3), poch(P(q=4), 2, -1), poch(P(q=2), 2, -3),
            qpow(lambda k: 2 * k)]


@statement("S-4K1-7", PROVED,
           "sum_{k<=(n-1)/2} [4k+1](q^-1;q^2)_k(q;q^2)_k^3/((q^4;q^2)_k(q^2;q^2)_k^3) q^2k = 0",
           domain=[ODD, gt(1)], modulus="[n]^3")
def _4k1_7(c: Ctx):
    n = c.n
    return [Check("", c.sum(_4k1_7_factors(), (n - 1) // 2), None, md((QInteger(n), 3)))]


@statement("S-4K1-8", IDENTITY,
           "closed form of sum_{k<=N} [4k+1](q^-1;q^2)_k(q;q^2)_k^3/((q^4;q^2)_k(q^2;q^2)_k^3) q^2k, and its q-binomial form",
           domain=[NONNEG], modulus="exact")
def _4k1_8(c: Ctx):
    N = c.n
    s = c.sum(_4k1_7_factors(), N)
    closed = c.prod([poch(Q, 2, length=lambda k: N), poch(Q, 2, 3, length=lambda k: N + 1),
                     binom_factor(lambda k: Q, -3), poch(P(q=4), 2, -1, length=lambda k: N),
                     poch(P(q=2), 2, -3, length=lambda k: N)], 0)
    n = 2 * N + 1
    form2 = c.prod([qint(0, n, power=3), poch(Q, 2, 4, length=lambda k: N), poch(P(q=4), 2, -1, length=lambda k: N),
                    poch(P(q=2), 2, -3, length=lambda k: N)], 0)
    form3 = c.prod([qint(0, n, power=3), binom_factor(lambda k: P(-1, q=1)), qint(0, n + 1, power=-1),
                    poch(P(-1, q=1), 1, -8, length=lambda k: N), qbinom_factor(lambda k: n - 1, lambda k: N, power=4)], 0)
    return [Check("closed", s, closed, None), Check("product", s, form2, None), Check("binomial", s, form3, None)]


# ---------------------------------------------------------------------------
# the three-parameter congruence and its limits


def _3par_factors():
    return [qint(3, 1), poch(AQ, 2), poch(Q_A, 2), poch(Q, 2), poch(P(q=1, b=-1), 1), poch(P(q=1, c=-1), 1),
            poch(P(b=1, c=1), 1), poch(AQ, 1, -1), poch(Q_A, 1, -1), poch(Q, 1, -1), poch(P(q=2, b=1), 2, -1),
            poch(P(q=2, c=1), 2, -1), poch(P(q=3, b=-1, c=-1), 2, -1), qpow(lambda k: k)]


@statement("S-3PAR", PROVED,
           "sum_{k<=M} [3k+1](aq,q/a,q;q^2)_k(q/b,q/c,bc;q)_k/((aq,q/a,q;q)_k(bq^2,cq^2,q^3/bc;q^2)_k) q^k = (bcq,q^2/b,q^2/c;q^2)_N/(q^3/bc,bq^2,cq^2;q^2)_N [n]",
           domain=[ODD], modulus="[n](1-aq^n)(a-q^n)", symbolic=("a",), sampled=("b", "c"),
           limits="n-1 and (n-1)/2")
def _3par(c: Ctx):
    n = c.n
    N = (n - 1) // 2
    rhs = c.prod([poch(P(q=1, b=1, c=1), 2), poch(P(q=2, b=-1), 2), poch(P(q=2, c=-1), 2),
                  poch(P(q=3, b=-1, c=-1), 2, -1), poch(P(q=2, b=1), 2, -1), poch(P(q=2, c=1), 2, -1)], N) * qi(n)
    return [Check(label, c.sum(_3par_factors(), M), rhs, md(QInteger(n), *micro(n))) for label, M in limits_half_full(n)]


@statement("S-3PAR2", PROVED, "the three-parameter [3k+1] sum vanishes modulo [n]",
           domain=[ODD], modulus="[n]", symbolic=("a",), sampled=("b", "c"), limits="n-1 and (n-1)/2")
def _3par2(c: Ctx):
    n = c.n
    return [Check(label, c.sum(_3par_factors(), M), None, md(QInteger(n))) for label, M in limits_half_full(n)]


def _half_full_checks(c: Ctx, factors, rhs, modulus):
    return [Check(label, c.sum(factors, M), rhs, modulus) for label, M in limits_half_full(c.n)]


@statement("S-QDIVWZ1", PROVED,
           "sum_{k<=M} [3k+1](q;q^2)_k^3 q^(-k(k+1)/2)/((q;q)_k^2(q^2;q^2)_k) = q^((1-n)/2)[n]",
           domain=[ODD], modulus="[n]Phi_n(q)^2", limits="n-1 and (n-1)/2")
def _qdivwz1(c: Ctx):
    n = c.n
    fs = [qint(3, 1), poch(Q, 2, 3), poch(Q, 1, -2), poch(P(q=2), 2, -1), qpow(lambda k: -k * (k + 1) // 2)]
    return _half_full_checks(c, fs, fr(qi(n) * qp((1 - n) // 2)), md(QInteger(n), (Cyclotomic(n), 2)))


@statement("S-QDIVWZ2", PROVED,
           "sum_{k<=M} [3k+1](q;q^2)_k^3(-1;q)_k q^k/((q;q)_k^3(-q^2,-q^3;q^2)_k) = (1+q)/(1+q^n)[n]",
           domain=[ODD], modulus="[n]Phi_n(q)^2", limits="n-1 and (n-1)/2")
def _qdivwz2(c: Ctx):
    n = c.n
    fs = [qint(3, 1), poch(Q, 2, 3), poch(P(-1), 1), qpow(lambda k: k), poch(Q, 1, -3), poch(P(-1, q=2), 2, -1),
          poch(P(-1, q=3), 2, -1)]
    rhs = c.prod([binom_factor(lambda k: P(-1, q=1)), binom_factor(lambda k: P(-1, q=n), -1)], 0) * qi(n)
    return _half_full_checks(c, fs, rhs, md(QInteger(n), (Cyclotomic(n), 2)))


@statement("S-QZUD44", PROVED,
           "sum_{k<=M} (-1)^k[3k+1](q;q^2)_k^3(-q;q)_k q^(-k(k+1)/2)/((q;q)_k^3(-q^2;q^2)_k) = [n](-q)^((1-n)/2)",
           domain=[ODD], modulus="[n]Phi_n(q)^2", limits="n-1 and (n-1)/2")
def _qzud44(c: Ctx):
    n = c.n
    fs = [sign(), qint(3, 1), poch(Q, 2, 3), poch(P(-1, q=1), 1), poch(Q, 1, -3), poch(P(-1, q=2), 2, -1),
          qpow(lambda k: -k * (k + 1) // 2)]
    return _half_full_checks(c, fs, fr(qi(n) * neg_q_power((1 - n) // 2)), md(QInteger(n), (Cyclotomic(n), 2)))


@statement("S-QZUD33", PROVED, "sum_{k<=M} (-1)^k[3k+1](q;q^2)_k^3/(q;q)_k^3 = [n](-q)^((n-1)^2/4)",
           domain=[ODD], modulus="[n]Phi_n(q)^2", limits="n-1 and (n-1)/2")
def _qzud33(c: Ctx):
    n = c.n
    fs = [sign(), qint(3, 1), poch(Q, 2, 3), poch(Q, 1, -3)]
    return _half_full_checks(c, fs, fr(qi(n) * neg_q_power((n - 1) ** 2 // 4)), md(QInteger(n), (Cyclotomic(n), 2)))


# ---------------------------------------------------------------------------
# consequences of the cubic transformation


def _twok(k):
    return 2 * k


def _8k1_head():
    """[8k+1](aq,q/a;q^2)_k(q;q^2)_2k/((q^2;q^2)_2k(aq^6,q^6/a;q^6)_k)."""
    return [qint(8, 1), poch(AQ, 2), poch(Q_A, 2), poch(Q, 2, length=_twok), poch(P(q=2), 2, -1, length=_twok),
            poch(P(q=6, a=1), 6, -1), poch(P(q=6, a=-1), 6, -1)]


@statement("S-8K1-RAD", PROVED,
           "sum_{k<=M} [8k+1](aq,q/a;q^2)_k(q;q^2)_2k/((q^2;q^2)_2k(aq^6,q^6/a;q^6)_k) q^(2k^2) = q^(-(n-1)/2)[n](-3/n)",
           domain=[POSITIVE, coprime(6)], modulus="[n](1-aq^n)(a-q^n)", symbolic=("a",), limits="n-1 and (n-1)/2")
def _8k1rad(c: Ctx):
    n = c.n
    rhs = fr(qi(n) * qp(-(n - 1) // 2, kronecker_symbol(-3, n)))
    fs = _8k1_head() + [qpow(lambda k: 2 * k * k)]
    return _half_full_checks(c, fs, rhs, md(QInteger(n), *micro(n)))


@statement("S-8K1-1", PROVED,
           "sum_{k<=(n-1)/2} [8k+1](aq,q/a;q^2)_k(q;q^2)_2k(q,q^2;q^6)_k/((q^2;q^2)_2k(aq^6,q^6/a;q^6)_k(q;q)_2k) q^2k = 0",
           domain=[gt(1), coprime(6)], modulus="Phi_n(q) if n=1 mod 6, Phi_n(q)(1-aq^n)(a-q^n) if n=5 mod 6",
           symbolic=("a",))
def _8k1_1(c: Ctx):
    n = c.n
    fs = _8k1_head() + [poch(Q, 6), poch(P(q=2), 6), poch(Q, 1, -1, length=_twok), qpow(lambda k: 2 * k)]
    m = md(Cyclotomic(n)) if n % 6 == 1 else md(Cyclotomic(n), *micro(n))
    return [Check("", c.sum(fs, (n - 1) // 2), None, m)]


@statement("S-8K1-2", PROVED,
           "sum_{k<=(n-1)/2} [8k+1](aq,q/a;q^2)_k(q;q^2)_2k(q^-1,q^4;q^6)_k/((q^2;q^2)_2k(aq^6,q^6/a;q^6)_k(q^-1,q^4;q^2)_k) q^2k = 0",
           domain=[gt(1), coprime(6)], modulus="Phi_n(q)(1-aq^n)(a-q^n) if n=1 mod 6, Phi_n(q) if n=5 mod 6",
           symbolic=("a",))
def _8k1_2(c: Ctx):
    n = c.n
    fs = _8k1_head() + [poch(P(q=-1), 6), poch(P(q=4), 6), poch(P(q=-1), 2, -1), poch(P(q=4), 2, -1),
                        qpow(lambda k: 2 * k)]
    m = md(Cyclotomic(n), *micro(n)) if n % 6 == 1 else md(Cyclotomic(n))
    return [Check("", c.sum(fs, (n - 1) // 2), None, m)]


def _8k1_head_a1():
    return [qint(8, 1), poch(Q, 2, 2), poch(Q, 2, length=_twok), poch(P(q=2), 2, -1, length=_twok),
            poch(P(q=6), 6, -2)]


@statement("S-8K1-COR", PROVED,
           "a=1 cases of the two cubic-transformation sums, moduli Phi_n(q) or Phi_n(q)^3 by n mod 6",
           domain=[gt(1), coprime(6)], modulus="Phi_n(q)^3 on the matching residue class, Phi_n(q) otherwise")
def _8k1_cor(c: Ctx):
    n = c.n
    f1 = _8k1_head_a1() + [poch(Q, 6), poch(P(q=2), 6), poch(Q, 1, -1, length=_twok), qpow(lambda k: 2 * k)]
    f2 = _8k1_head_a1() + [poch(P(q=-1), 6), poch(P(q=4), 6), poch(P(q=-1), 2, -1), poch(P(q=4), 2, -1),
                           qpow(lambda k: 2 * k)]
    M = (n - 1) // 2
    e1, e2 = (1, 3) if n % 6 == 1 else (3, 1)
    return [Check("first", c.sum(f1, M), None, md((Cyclotomic(n), e1))),
            Check("second", c.sum(f2, M), None, md((Cyclotomic(n), e2)))]


def _8k1_m2_factors():
    return [qint(8, 1), poch(Q, 2, 2), poch(Q, 2, length=_twok), poch(P(q=-3), 6), poch(P(q=2), 2, -1, length=_twok),
            poch(P(q=6), 6, -1), poch(P(q=-3), 2, -1), poch(P(q=6), 2, -1), qpow(lambda k: 2 * k)]


@statement("S-8K1-M2", PROVED,
           "sum_{k<=M} [8k+1](q;q^2)_k^2(q;q^2)_2k(q^-3;q^6)_k/((q^2;q^2)_2k(q^6;q^6)_k(q^-3,q^6;q^2)_k) q^2k = 0",
           domain=[POSITIVE, coprime(6)], modulus="[n]^2", limits="n-1 and (n-1)/2")
def _8k1_m2(c: Ctx):
    n = c.n
    return _half_full_checks(c, _8k1_m2_factors(), None, md((QInteger(n), 2)))


@statement("S-8K1-QBINO", IDENTITY,
           "closed form and q-binomial form of the partial sums of the [8k+1](q^-3;q^6)_k series",
           domain=[NONNEG], modulus="exact")
def _8k1_qbino(c: Ctx):
    N = c.n
    s = c.sum(_8k1_m2_factors(), N)
    L = lambda v: (lambda k: v)  # noqa: E731
    closed = c.prod([qint(0, 4 * N + 1), qint(0, 4 * N + 3), poch(Q, 2, length=L(N + 1)), poch(Q, 2, length=L(2 * N)),
                     poch(P(q=3), 6, length=L(N)), binom_factor(lambda k: P(q=3), -1), poch(P(q=6), 6, -1, length=L(N)),
                     poch(P(q=2), 2, -1, length=L(2 * N)), poch(P(q=6), 2, -1, length=L(N))], 0)
    binom = c.prod([qint(0, 4 * N + 1), qint(0, 4 * N + 3), qint(0, 2 * N + 1), qint(0, 2), qint(0, 4),
                    qint(0, 3, power=-1), qint(0, 2 * N + 2, power=-1), qint(0, 2 * N + 4, power=-1),
                    poch(P(-1, q=1), 1, -2, length=L(N)), poch(P(-1, q=1), 1, -2, length=L(2 * N)),
                    poch(P(-1, q=3), 3, -2, length=L(N)),
                    qbinom_factor(L(2 * N), L(N)), qbinom_factor(L(4 * N), L(2 * N)), qbinom_factor(L(2 * N), L(N), t=3)], 0)
    return [Check("closed", s, closed, None), Check("binomial", s, binom, None)]


# ---------------------------------------------------------------------------
# consequences of the quartic transformation


def _quartic1(c: Ctx):
    fs = [qint(10, 2), poch(Q, 1, length=_twok), poch(Q, 2, length=lambda k: 3 * k), poch(P(q=2), 8),
          poch(P(q=9), 8, -1), poch(P(q=8), 8, -1), poch(Q, 2, -1, length=_twok), poch(P(q=5), 4, -1),
          poch(P(q=2), 2, -1), qpow(lambda k: 2 * k)]
    return c.sum(fs, (c.n - 1) // 2)


def _quartic2(c: Ctx):
    fs = [qint(10, 4), poch(Q, 2), poch(P(q=3), 2), poch(P(q=2), 2, length=lambda k: 3 * k), poch(P(q=4), 8),
          poch(P(q=11), 8, -1), poch(P(q=9), 8, -1), poch(P(q=2), 2, -1, length=_twok), poch(P(q=6), 4, -1),
          poch(P(q=2), 2, -1), qpow(lambda k: 2 * k)]
    return c.sum(fs, (c.n - 1) // 2)


@statement("S-QUARTIC-1", PROVED,
           "sum_{k<=(n-1)/2} [10k+2](q;q)_2k(q;q^2)_3k(q^2;q^8)_k/((q^9,q^8;q^8)_k(q;q^2)_2k(q^5;q^4)_k(q^2;q^2)_k) q^2k = 0",
           domain=[residue([5, 7], 8)], modulus="Phi_n(q)")
def _sq1(c: Ctx):
    return [Check("", _quartic1(c), None, md(Cyclotomic(c.n)))]


@statement("S-QUARTIC-2", PROVED,
           "sum_{k<=(n-1)/2} [10k+4](q,q^3;q^2)_k(q^2;q^2)_3k(q^4;q^8)_k/((q^11,q^9;q^8)_k(q^2;q^2)_2k(q^6;q^4)_k(q^2;q^2)_k) q^2k = 0",
           domain=[residue([5, 7], 8)], modulus="Phi_n(q)")
def _sq2(c: Ctx):
    return [Check("", _quartic2(c), None, md(Cyclotomic(c.n)))]


@statement("C-QUARTIC1-STRONG", CONJECTURE, "the [10k+2] quartic sum vanishes modulo Phi_n(q)^2",
           domain=[residue([5], 8)], modulus="Phi_n(q)^2")
def _cq1(c: Ctx):
    return [Check("", _quartic1(c), None, md((Cyclotomic(c.n), 2)))]


@statement("C-QUARTIC2-STRONG", CONJECTURE, "the [10k+4] quartic sum vanishes modulo Phi_n(q)^3",
           domain=[residue([5, 7], 8)], modulus="Phi_n(q)^3")
def _cq2(c: Ctx):
    return [Check("", _quartic2(c), None, md((Cyclotomic(c.n), 3)))]


# ---------------------------------------------------------------------------
# consequences of the nonterminating 12phi11 transformation


def _six_k(sign_: int, j: int, e: int):
    """[6k+s](q^s;q^3)_k^j (q^3;q^3)_2k / ((q^3;q^3)_k^j (q^2s;q^3)_2k) q^(ek), s = +-1."""
    s = sign_

    def build(c: Ctx):
        n = c.n
        M = (n - 1) // 3 if s == 1 else (n + 1) // 3
        fs = [qint(6, s), poch(P(q=s), 3, j), poch(P(q=3), 3, length=_twok), poch(P(q=3), 3, -j),
              poch(P(q=2 * s), 3, -1, length=_twok), qpow(lambda k: e * k)]
        return [Check("", c.sum(fs, M), None, md(Cyclotomic(n)))]

    return build


for _i, (_j, _e) in enumerate([(6, 2), (4, 0), (2, -2)], start=1):
    statement(f"S-6K1-{_i}", PROVED,
              f"sum_{{k<=(n-1)/3}} [6k+1](q;q^3)_k^{_j}(q^3;q^3)_2k/((q^3;q^3)_k^{_j}(q^2;q^3)_2k) q^({_e}k) = 0",
              domain=[residue([1], 3), gt(1)], modulus="Phi_n(q)")(_six_k(1, _j, _e))
for _i, (_j, _e) in enumerate([(6, 4), (4, 0), (2, -4)], start=1):
    statement(f"S-6KM1-{_i}", PROVED,
              f"sum_{{k<=(n+1)/3}} [6k-1](q^-1;q^3)_k^{_j}(q^3;q^3)_2k/((q^3;q^3)_k^{_j}(q^-2;q^3)_2k) q^({_e}k) = 0",
              domain=[residue([2], 3), gt(2)], modulus="Phi_n(q)")(_six_k(-1, _j, _e))


# ---------------------------------------------------------------------------
# consequences of the q-Dixon sum


def _dixon_head(shift: int, with_a: bool):
    """(1 + a q^(4k+s))/(1 + a q^s), or the a=1 form with a (1+q) denominator."""
    if with_a:
        return [binom_factor(lambda k: P(-1, q=4 * k + shift, a=1)), binom_factor(lambda k: P(-1, q=shift, a=1), -1)]
    return [binom_factor(lambda k: P(-1, q=4 * k + shift)), binom_factor(lambda k: P(-1, q=1), -1)]


def _dixon2(c: Ctx):
    fs = _dixon_head(1, False) + [poch(P(q=2), 4, 3), poch(P(q=4), 4, -3), qpow(lambda k: k)]
    return c.sum(fs, (c.n - 1) // 2)


def _dixon4(c: Ctx):
    fs = _dixon_head(-1, False) + [poch(P(q=-2), 4, 3), poch(P(q=4), 4, -3), qpow(lambda k: 7 * k)]
    return c.sum(fs, (c.n + 1) // 2)


def _dixon6(c: Ctx):
    fs = _dixon_head(1, False) + [poch(P(q=2), 4, 2), poch(P(q=-2), 4), poch(P(q=8), 4, -1), poch(P(q=4), 4, -2),
                                  qpow(lambda k: 5 * k)]
    return c.sum(fs, (c.n - 1) // 2)


def _phi_pm(n: int, e: int = 1) -> Modulus:
    return md((Cyclotomic(n), e), CyclotomicNeg(n))


@statement("S-QDIXON-1", PROVED,
           "sum_{k<=(n-1)/2} (1+aq^(4k+1))(a^2q^2,bq^2,cq^2;q^4)_k/((1+aq)(a^2q^4/b,a^2q^4/c,q^4;q^4)_k)(aq/bc)^k = 0",
           domain=[residue([3], 4)], modulus="(1-a^2q^2n)", symbolic=("a",), sampled=("b", "c"))
def _qdixon1(c: Ctx):
    n = c.n
    fs = _dixon_head(1, True) + [poch(P(q=2, a=2), 4), poch(P(q=2, b=1), 4), poch(P(q=2, c=1), 4),
                                 poch(P(q=4, a=2, b=-1), 4, -1), poch(P(q=4, a=2, c=-1), 4, -1), poch(P(q=4), 4, -1),
                                 mono(P(q=1, a=1, b=-1, c=-1))]
    return [Check("", c.sum(fs, (n - 1) // 2), None, md(OneMinusA2Q2n(n)))]


@statement("S-QDIXON-2", PROVED, "sum_{k<=(n-1)/2} (1+q^(4k+1))(q^2;q^4)_k^3/((1+q)(q^4;q^4)_k^3) q^k = 0",
           domain=[residue([3], 4)], modulus="Phi_n(q)Phi_n(-q)")
def _qdixon2(c: Ctx):
    return [Check("", _dixon2(c), None, _phi_pm(c.n))]


@statement("S-QDIXON-3", PROVED,
           "sum_{k<=(n+1)/2} (1+aq^(4k-1))(a^2/q^2,b/q^2,c/q^2;q^4)_k/((1+a/q)(a^2q^4/b,a^2q^4/c,q^4;q^4)_k)(aq^7/bc)^k = 0",
           domain=[residue([1], 4)], modulus="(1-a^2q^2n)", symbolic=("a",), sampled=("b", "c"))
def _qdixon3(c: Ctx):
    n = c.n
    fs = _dixon_head(-1, True) + [poch(P(q=-2, a=2), 4), poch(P(q=-2, b=1), 4), poch(P(q=-2, c=1), 4),
                                  poch(P(q=4, a=2, b=-1), 4, -1), poch(P(q=4, a=2, c=-1), 4, -1), poch(P(q=4), 4, -1),
                                  mono(P(q=7, a=1, b=-1, c=-1))]
    return [Check("", c.sum(fs, (n + 1) // 2), None, md(OneMinusA2Q2n(n)))]


@statement("S-QDIXON-4", PROVED, "sum_{k<=(n+1)/2} (1+q^(4k-1))(q^-2;q^4)_k^3/((1+q)(q^4;q^4)_k^3) q^7k = 0",
           domain=[residue([1], 4), gt(1)], modulus="Phi_n(q)Phi_n(-q)")
def _qdixon4(c: Ctx):
    return [Check("", _dixon4(c), None, _phi_pm(c.n))]


@statement("S-QDIXON-5", PROVED,
           "sum_{k<=(n-1)/2} (1+aq^(4k+1))(a^2q^2,q^-2,q^-2;q^4)_k/((1+aq)(a^2q^8,a^2q^8,q^4;q^4)_k) a^k q^9k = 0, and its a=1 case",
           domain=[ODD, gt(1)], modulus="(1-a^2q^2n); Phi_n(q)Phi_n(-q) at a=1", symbolic=("a",))
def _qdixon5(c: Ctx):
    n = c.n
    M = (n - 1) // 2
    fa = _dixon_head(1, True) + [poch(P(q=2, a=2), 4), poch(P(q=-2), 4, 2), poch(P(q=8, a=2), 4, -2),
                                 poch(P(q=4), 4, -1), mono(P(a=1)), qpow(lambda k: 9 * k)]
    f1 = _dixon_head(1, False) + [poch(P(q=2), 4), poch(P(q=-2), 4, 2), poch(P(q=8), 4, -2), poch(P(q=4), 4, -1),
                                  qpow(lambda k: 9 * k)]
    return [Check("a", c.sum(fa, M), None, md(OneMinusA2Q2n(n))), Check("a=1", c.sum(f1, M), None, _phi_pm(n))]


@statement("S-QDIXON-3PAR", PROVED,
           "sum_{k<=(n-1)/2} (1+aq^(4k+1))(a^2q^2,b/q^2,c/q^2;q^4)_k/((1+aq)(a^2q^8/b,a^2q^8/c,q^4;q^4)_k)(aq^9/bc)^k = 0",
           domain=[residue([3], 4)], modulus="(1-a^2q^2n)", symbolic=("a",), sampled=("b", "c"))
def _qdixon3par(c: Ctx):
    n = c.n
    fs = _dixon_head(1, True) + [poch(P(q=2, a=2), 4), poch(P(q=-2, b=1), 4), poch(P(q=-2, c=1), 4),
                                 poch(P(q=8, a=2, b=-1), 4, -1), poch(P(q=8, a=2, c=-1), 4, -1), poch(P(q=4), 4, -1),
                                 mono(P(q=9, a=1, b=-1, c=-1))]
    return [Check("", c.sum(fs, (n - 1) // 2), None, md(OneMinusA2Q2n(n)))]


@statement("S-QDIXON-6", PROVED,
           "sum_{k<=(n-1)/2} (1+aq^(4k+1))(a^2q^2,bq^2,c/q^2;q^4)_k/((1+aq)(a^2q^4/b,a^2q^8/c,q^4;q^4)_k)(aq^5/bc)^k = 0, and its a=b=c=1 case",
           domain=[residue([3], 4)], modulus="(1-a^2q^2n); Phi_n(q)Phi_n(-q) at a=b=c=1", symbolic=("a",),
           sampled=("b", "c"))
def _qdixon6(c: Ctx):
    n = c.n
    fs = _dixon_head(1, True) + [poch(P(q=2, a=2), 4), poch(P(q=2, b=1), 4), poch(P(q=-2, c=1), 4),
                                 poch(P(q=4, a=2, b=-1), 4, -1), poch(P(q=8, a=2, c=-1), 4, -1), poch(P(q=4), 4, -1),
                                 mono(P(q=5, a=1, b=-1, c=-1))]
    out = [Check("a", c.sum(fs, (n - 1) // 2), None, md(OneMinusA2Q2n(n)))]
    if c.first:
        out.append(Check("a=1", _dixon6(c), None, _phi_pm(n)))
    return out


@statement("C-QDIXON2-STRONG", CONJECTURE, "the (1+q^(4k+1))(q^2;q^4)_k^3 sum vanishes modulo Phi_n(q)^2 Phi_n(-q)",
           domain=[residue([3], 4)], modulus="Phi_n(q)^2Phi_n(-q)")
def _cqd2(c: Ctx):
    return [Check("", _dixon2(c), None, _phi_pm(c.n, 2))]


@statement("C-QDIXON4-STRONG", CONJECTURE, "the (1+q^(4k-1))(q^-2;q^4)_k^3 sum vanishes modulo Phi_n(q)^2 Phi_n(-q)",
           domain=[residue([1], 4), gt(1)], modulus="Phi_n(q)^2Phi_n(-q)")
def _cqd4(c: Ctx):
    return [Check("", _dixon4(c), None, _phi_pm(c.n, 2))]


@statement("C-QDIXON6-STRONG", CONJECTURE, "the (1+q^(4k+1))(q^2;q^4)_k^2(q^-2;q^4)_k sum vanishes modulo Phi_n(q)^2 Phi_n(-q)",
           domain=[residue([3], 4), gt(3)], modulus="Phi_n(q)^2Phi_n(-q)")
def _cqd6(c: Ctx):
    return [Check("", _dixon6(c), None, _phi_pm(c.n, 2))]


@statement("C-4K1DIXONF", CONJECTURE,
           "sum_{k<=(n-1)/2} [4k+1](q^2;q^4)_k(q^4;q^8)_k/((q^4;q^4)_k(q^8;q^8)_k) q^k = 0",
           domain=[residue([3], 4)], modulus="Phi_n(q)^2Phi_n(-q)")
def _c4k1f(c: Ctx):
    n = c.n
    fs = [qint(4, 1), poch(P(q=2), 4), poch(P(q=4), 8), poch(P(q=4), 4, -1), poch(P(q=8), 8, -1), qpow(lambda k: k)]
    return [Check("", c.sum(fs, (n - 1) // 2), None, _phi_pm(n, 2))]


@statement("S-TAURASO-Q", IDENTITY,
           "sum_{k<=n} q^-k [4k+1][2k,k]^2(-q^(k+1);q)_{n-k}^4 = q^-n [2n+1]^2 [2n,n]^2",
           domain=[NONNEG], modulus="exact")
def _central_square(c: Ctx):
    n = c.n
    fs = [qpow(lambda k: -k), qint(4, 1), qbinom_factor(lambda k: 2 * k, lambda k: k, power=2),
          poch(lambda k: P(-1, q=k + 1), 1, 4, length=lambda k: n - k)]
    rhs = c.prod([qint(0, 2 * n + 1, power=2), qbinom_factor(lambda k: 2 * n, lambda k: n, power=2)], 0) * qp(-n)
    return [Check("", c.sum(fs, n), rhs, None)]


# ---------------------------------------------------------------------------
# double-series transformation: "divergent" truncations


def _inner(upper, lower, t: int, argument):
    """Per-k terminating inner sum; ``upper``/``lower`` are functions of k."""

    def fn(k, env):
        spec = SeriesSpec(upper(k), lower(k), t=t, argument=argument, env=env)
        return truncated_sum(spec, k)

    return fn


def _irs(c: Ctx, head, inner_fn, M: int) -> FactoredRat:
    return c.sum(head + [extra(inner_fn)], M)


def _irs1(c: Ctx, with_a: bool) -> FactoredRat:
    h = AQ.qshift(0) if with_a else Q  # parameter h = aq, lower aq^2
    low = P(q=2, a=1) if with_a else P(q=2)
    head = [qint(6, 1), poch(Q, 3), poch(P(q=3), 3, -1), qpow(lambda k: -2 * k)]
    inner = _inner(lambda k: [P(q=-3 * k), P(q=3 * k + 1), Q, h], lambda k: [P(q=2), P(q=2), low], 3, P(q=3))
    return _irs(c, head, inner, (2 * c.n - 2) // 3)


def _irs2(c: Ctx, with_a: bool) -> FactoredRat:
    h = P(q=-1, a=1) if with_a else P(q=-1)
    low = P(q=-2, a=1) if with_a else P(q=-2)
    head = [qint(6, -1), poch(P(q=-1), 3), poch(P(q=3), 3, -1), qpow(lambda k: -k)]
    inner = _inner(lambda k: [P(q=-3 * k), P(q=3 * k - 1), P(q=-1), h], lambda k: [Q, Q, low], 3, P(q=3))
    return _irs(c, head, inner, (2 * c.n - 1) // 3)


def _irs3(c: Ctx, with_a: bool) -> FactoredRat:
    h = P(q=-1, a=1) if with_a else P(q=-1)
    low = AQ if with_a else Q
    head = [qint(8, 1), poch(Q, 4, 6), poch(P(q=4), 4, -6), qpow(lambda k: 5 * k)]
    inner = _inner(lambda k: [P(q=-4 * k), P(q=4 * k + 1), P(q=-1), h], lambda k: [Q, Q, low], 4, P(q=4))
    return _irs(c, head, inner, (3 * c.n - 1) // 4)


def _irs4(c: Ctx, with_a: bool) -> FactoredRat:
    h = P(q=-3, a=1) if with_a else P(q=-3)
    low = P(q=-1, a=1) if with_a else P(q=-1)
    head = [qint(8, -1), poch(P(q=-1), 4, 6), poch(P(q=4), 4, -6), qpow(lambda k: 11 * k)]
    inner = _inner(lambda k: [P(q=-4 * k), P(q=4 * k - 1), P(q=-3), h], lambda k: [P(q=-1), P(q=-1), low], 4, P(q=4))
    return _irs(c, head, inner, (3 * c.n + 1) // 4)


def _irs5_inner():
    return _inner(lambda k: [P(q=-4 * k), P(q=4 * k - 2), P(q=5)], lambda k: [P(q=-2), P(q=-2)], 4, P(q=4))


def _irs_pair(builder, mod_a: Callable[[int], Modulus], mod_1: Callable[[int], Modulus]):
    def build(c: Ctx):
        n = c.n
        out = [Check("a", builder(c, True), None, mod_a(n))]
        if c.first:
            out.append(Check("a=1", builder(c, False), None, mod_1(n)))
        return out

    return build


statement("C-IRS-1", CONJECTURE,
          "sum_{k<=(2n-2)/3} [6k+1](q;q^3)_k/(q^3;q^3)_k q^-2k 4phi3[q^-3k,q^(3k+1),q,aq; q^2,q^2,aq^2; q^3,q^3] = 0",
          domain=[residue([1], 3), gt(1)], modulus="Phi_n(q)^2; Phi_n(q)^3 at a=1", symbolic=("a",))(
    _irs_pair(_irs1, lambda n: md((Cyclotomic(n), 2)), lambda n: md((Cyclotomic(n), 3))))
statement("C-IRS-2", CONJECTURE,
          "sum_{k<=(2n-1)/3} [6k-1](q^-1;q^3)_k/(q^3;q^3)_k q^-k 4phi3[q^-3k,q^(3k-1),q^-1,aq^-1; q,q,aq^-2; q^3,q^3] = 0",
          domain=[residue([2], 3), gt(2)], modulus="Phi_n(q)^2; Phi_n(q)^3 at a=1", symbolic=("a",))(
    _irs_pair(_irs2, lambda n: md((Cyclotomic(n), 2)), lambda n: md((Cyclotomic(n), 3))))
statement("C-IRS-3", CONJECTURE,
          "sum_{k<=(3n-1)/4} [8k+1](q;q^4)_k^6/(q^4;q^4)_k^6 q^5k 4phi3[q^-4k,q^(4k+1),q^-1,aq^-1; q,q,aq; q^4,q^4] = 0",
          domain=[residue([3], 4)], modulus="[n]Phi_n(q)^2; [n]Phi_n(q)^3 at a=1", symbolic=("a",))(
    _irs_pair(_irs3, lambda n: md(QInteger(n), (Cyclotomic(n), 2)), lambda n: md(QInteger(n), (Cyclotomic(n), 3))))
statement("C-IRS-4", CONJECTURE,
          "sum_{k<=(3n+1)/4} [8k-1](q^-1;q^4)_k^6/(q^4;q^4)_k^6 q^11k 4phi3[q^-4k,q^(4k-1),q^-3,aq^-3; q^-1,q^-1,aq^-1; q^4,q^4] = 0",
          domain=[residue([1], 4), gt(1)], modulus="[n]Phi_n(q)^2; [n]Phi_n(q)^3 at a=1", symbolic=("a",))(
    _irs_pair(_irs4, lambda n: md(QInteger(n), (Cyclotomic(n), 2)), lambda n: md(QInteger(n), (Cyclotomic(n), 3))))


@statement("C-IRS-5", CONJECTURE,
           "sum_{k<=(n+1)/2} [8k-2](q^-2;q^4)_k^4/(q^4;q^4)_k^4 q^8k 3phi2[q^-4k,q^(4k-2),q^5; q^-2,q^-2; q^4,q^4] = 0",
           domain=[residue([3], 8)], modulus="Phi_n(q)^2Phi_n(-q)")
def _cirs5(c: Ctx):
    n = c.n
    head = [qint(8, -2), poch(P(q=-2), 4, 4), poch(P(q=4), 4, -4), qpow(lambda k: 8 * k)]
    return [Check("", _irs(c, head, _irs5_inner(), (n + 1) // 2), None, _phi_pm(n, 2))]


@statement("S-IRS5A", PROVED,
           "sum_{k<=(n+1)/2} [8k-2](q^-2;q^4)_k^2(aq^-2,q^-2/a;q^4)_k/((q^4;q^4)_k^2(aq^4,q^4/a;q^4)_k) q^8k 3phi2[...] = 0",
           domain=[residue([3], 8)], modulus="Phi_n(q)Phi_n(-q)", symbolic=("a",))
def _irs5a(c: Ctx):
    n = c.n
    head = [qint(8, -2), poch(P(q=-2), 4, 2), poch(P(q=-2, a=1), 4), poch(P(q=-2, a=-1), 4), poch(P(q=4), 4, -2),
            poch(P(q=4, a=1), 4, -1), poch(P(q=4, a=-1), 4, -1), qpow(lambda k: 8 * k)]
    return [Check("", _irs(c, head, _irs5_inner(), (n + 1) // 2), None, _phi_pm(n))]


# ---------------------------------------------------------------------------
# further conjectures and the weaker q-Hamme theorem


@statement("C-WITHB", CONJECTURE,
           "sum_{k<=(n-1)/2} [4k+1](bq;q^2)_k(q;q^2)_k^5/((q^2/b;q^2)_k(q^2;q^2)_k^5)(q/b)^k = [n]q^((1-n)/2) sum (q/b;q^2)_k(q;q^2)_k^3/((q^2/b;q^2)_k(q^2;q^2)_k^3) q^2k",
           domain=[ODD], modulus="[n]Phi_n(q)^2", symbolic=("b",))
def _cwithb(c: Ctx):
    n = c.n
    M = (n - 1) // 2
    lhs = c.sum([qint(4, 1), poch(P(q=1, b=1), 2), poch(Q, 2, 5), poch(P(q=2, b=-1), 2, -1), poch(P(q=2), 2, -5),
                 mono(P(q=1, b=-1))], M)
    rhs = c.sum([poch(P(q=1, b=-1), 2), poch(Q, 2, 3), poch(P(q=2, b=-1), 2, -1), poch(P(q=2), 2, -3),
                 qpow(lambda k: 2 * k)], M) * (qi(n) * qp((1 - n) // 2))
    return [Check("", lhs, rhs, md(QInteger(n), (Cyclotomic(n), 2)))]


@statement("C-112", CONJECTURE, "sum_{k<=n-1} [6k+1](q;q^3)_k^6/(q^3;q^3)_k^6 q^3k = 0",
           domain=[residue([2], 3)], modulus="[n]Phi_n(q)^3")
def _c112(c: Ctx):
    n = c.n
    return [Check("", _sixfold_3(c, n - 1), None, md(QInteger(n), (Cyclotomic(n), 3)))]


@statement("C-113", CONJECTURE, "sum_{k<=n-1} [6k-1](q^-1;q^3)_k^6/(q^3;q^3)_k^6 q^9k = 0",
           domain=[residue([1], 3), gt(1)], modulus="[n]Phi_n(q)^3")
def _c113(c: Ctx):
    n = c.n
    s = c.sum([qint(6, -1), poch(P(q=-1), 3, 6), poch(P(q=3), 3, -6), qpow(lambda k: 9 * k)], n - 1)
    return [Check("", s, None, md(QInteger(n), (Cyclotomic(n), 3)))]


@statement("S-GW", PROVED,
           "sum_{k<=(n-1)/2} [4k+1](q;q^2)_k^4/(q^2;q^2)_k^4 = q^((1-n)/2)[n] + (n^2-1)(1-q)^2/24 q^((1-n)/2)[n]^3",
           domain=[ODD], modulus="[n]Phi_n(q)^3")
def _gw(c: Ctx):
    n = c.n
    lhs = c.sum([qint(4, 1), poch(Q, 2, 4), poch(P(q=2), 2, -4)], (n - 1) // 2)
    one_minus_q = LaurentPoly(MultiPoly.one() - MultiPoly.var("q"))
    rhs = qi(n) * qp((1 - n) // 2) + (qi(n) ** 3 * one_minus_q ** 2 * qp((1 - n) // 2)).scale(Fraction(n * n - 1, 24))
    return [Check("", lhs, fr(rhs), md(QInteger(n), (Cyclotomic(n), 3)))]


@statement("C-8K1-Q4-A", CONJECTURE,
           "sum_{k<=n-1} [8k+1](q;q^4)_k^6(q^2;q^2)_2k/((q^4;q^4)_k^6(q;q^2)_2k) q^4k = 0",
           domain=[ODD], modulus="[n] if n=1 mod 4, [n]Phi_n(q)^2 if n=3 mod 4")
def _c8k1a(c: Ctx):
    n = c.n
    s = c.sum([qint(8, 1), poch(Q, 4, 6), poch(P(q=2), 2, length=_twok), poch(P(q=4), 4, -6),
               poch(Q, 2, -1, length=_twok), qpow(lambda k: 4 * k)], n - 1)
    m = md(QInteger(n)) if n % 4 == 1 else md(QInteger(n), (Cyclotomic(n), 2))
    return [Check("", s, None, m)]


@statement("C-8K1-Q4-B", CONJECTURE,
           "sum_{k<=n-1} [8k-1](q^-1;q^4)_k^6(q^2;q^2)_2k/((q^4;q^4)_k^6(q^-1;q^2)_2k) q^8k = 0",
           domain=[ODD, gt(1)], modulus="[n]Phi_n(q)^2 if n=1 mod 4, [n] if n=3 mod 4")
def _c8k1b(c: Ctx):
    n = c.n
    s = c.sum([qint(8, -1), poch(P(q=-1), 4, 6), poch(P(q=2), 2, length=_twok), poch(P(q=4), 4, -6),
               poch(P(q=-1), 2, -1, length=_twok), qpow(lambda k: 8 * k)], n - 1)
    m = md(QInteger(n), (Cyclotomic(n), 2)) if n % 4 == 1 else md(QInteger(n))
    return [Check("", s, None, m)]


def _hamme_a(c: Ctx) -> FactoredRat:
    n, r = c.n, c.v
    fs = [sign(), qpow(lambda k: k * k + (r - 2) * k), qint(4, 1),
          qbinom_factor(lambda k: 2 * k, lambda k: k, power=2 * r - 1),
          poch(lambda k: P(-1, q=k + 1), 1, 4 * r - 2, length=lambda k: n - k)]
    return c.sum(fs, n)


def _hamme_b(c: Ctx) -> FactoredRat:
    n, r = c.n, c.v
    fs = [qpow(lambda k: (r - 2) * k), qint(4, 1), qbinom_factor(lambda k: 2 * k, lambda k: k, power=2 * r),
          poch(lambda k: P(-1, q=k + 1), 1, 4 * r, length=lambda k: n - k)]
    return c.sum(fs, n)


def _qint_content(n: int) -> dict[int, int]:
    return {d: 1 for d in range(2, n + 1) if n % d == 0}


@statement("C-QHAMME-A", CONJECTURE,
           "sum_{k<=n} (-1)^k q^(k^2+(r-2)k)[4k+1][2k,k]^(2r-1)(-q^(k+1);q)_{n-k}^(4r-2) = 0",
           domain=[POSITIVE], modulus="(1+q^n)^(2r-2)[2n+1][2n,n]", family=("r", (1, 2, 3)))
def _chammea(c: Ctx):
    n, r = c.n, c.v
    opq = {d: e * (2 * r - 2) for d, e in one_plus_qn_content(n).items()}
    m = content_modulus(opq, _qint_content(2 * n + 1), binomial_content(2 * n, n))
    return [Check("", _hamme_a(c), None, m)]


@statement("C-QHAMME-B", CONJECTURE,
           "sum_{k<=n} q^((r-2)k)[4k+1][2k,k]^(2r)(-q^(k+1);q)_{n-k}^(4r) = 0",
           domain=[POSITIVE], modulus="(1+q^n)^(2r-1)[2n+1][2n,n]", family=("r", (1, 2, 3)))
def _chammeb(c: Ctx):
    n, r = c.n, c.v
    opq = {d: e * (2 * r - 1) for d, e in one_plus_qn_content(n).items()}
    m = content_modulus(opq, _qint_content(2 * n + 1), binomial_content(2 * n, n))
    return [Check("", _hamme_b(c), None, m)]


@statement("S-SUBAB-WEAK-A", PROVED, "the alternating q-Hamme sum vanishes modulo [n+1][2n+1]",
           domain=[POSITIVE], modulus="[n+1][2n+1]", family=("r", (1, 2, 3)))
def _subab_a(c: Ctx):
    n = c.n
    return [Check("", _hamme_a(c), None, md(QInteger(n + 1), QInteger(2 * n + 1)))]


@statement("S-SUBAB-WEAK-B", PROVED, "the non-alternating q-Hamme sum vanishes modulo [n+1][2n+1]",
           domain=[POSITIVE], modulus="[n+1][2n+1]", family=("r", (1, 2, 3)))
def _subab_b(c: Ctx):
    n = c.n
    return [Check("", _hamme_b(c), None, md(QInteger(n + 1), QInteger(2 * n + 1)))]


@statement("C-GENVWP-PLUS", CONJECTURE,
           "sum_{k<=M} [2dk+1](q;q^d)_k^(2d)/(q^d;q^d)_k^(2d) q^(d(d-2)k) = 0, M = ((d-1)n-1)/d or n-1",
           domain=[POSITIVE, MINUS_ONE_MOD_D], modulus="[n]Phi_n(q)^3", family=("d", (3, 4, 5)))
def _genvwp_plus(c: Ctx):
    n, d = c.n, c.v
    fs = [qint(2 * d, 1), poch(Q, d, 2 * d), poch(P(q=d), d, -2 * d), qpow(lambda k: d * (d - 2) * k)]
    ms = sorted({((d - 1) * n - 1) // d, n - 1})
    return [Check(f"M={M}", c.sum(fs, M), None, md(QInteger(n), (Cyclotomic(n), 3))) for M in ms]


@statement("C-GENVWP-MINUS", CONJECTURE,
           "sum_{k<=M} [2dk-1](q^-1;q^d)_k^(2d)/(q^d;q^d)_k^(2d) q^(d^2 k) = 0, M = ((d-1)n+1)/d or n-1",
           domain=[gt(1), ONE_MOD_D], modulus="[n]Phi_n(q)^3", family=("d", (3, 4, 5)))
def _genvwp_minus(c: Ctx):
    n, d = c.n, c.v
    fs = [qint(2 * d, -1), poch(P(q=-1), d, 2 * d), poch(P(q=d), d, -2 * d), qpow(lambda k: d * d * k)]
    ms = sorted({((d - 1) * n + 1) // d, n - 1})
    return [Check(f"M={M}", c.sum(fs, M), None, md(QInteger(n), (Cyclotomic(n), 3))) for M in ms]


# ---------------------------------------------------------------------------
# driver


def sample_values(names: tuple, count: int, seed: int) -> list[dict]:
    """Deterministic rational samples avoiding 0, +-1 and products equal to +-1."""
    rng = random.Random(f"{seed}:{','.join(names)}")
    out = []
    while len(out) < count:
        env = {}
        for v in names:
            num = rng.choice([x for x in range(-9, 10) if x])
            den = rng.randint(2, 9)
            env[v] = Fraction(num, den)
        vals = list(env.values())
        bad = any(abs(x) in (0, 1) for x in vals)
        bad |= any(abs(x * y) == 1 for i, x in enumerate(vals) for y in vals[i + 1:])
        bad |= len(set(vals)) != len(vals)
        if not bad and env not in out:
            out.append(env)
    return out


def _fmt_env(env: dict) -> str:
    return ",".join(f"{k}={v}" for k, v in sorted(env.items()))


def _envs(spec: StatementSpec, mode: str, samples: int, seed: int) -> list[dict]:
    names = tuple(spec.sampled) + (tuple(spec.symbolic) if mode == SAMPLED else ())
    if not names:
        return [{}]
    return sample_values(names, samples, seed)


def _run_check(ch: Check, env: dict, drop_mixed: bool) -> CheckResult:
    lhs, rhs = ch.lhs, ch.rhs
    if env:
        lhs = lhs.specialize(env)
        rhs = rhs.specialize(env) if rhs is not None else None
    if ch.modulus is None:
        return check_identity(lhs, rhs)
    m = strip_mixed(ch.modulus) if drop_mixed else ch.modulus
    if rhs is None:
        rhs = FactoredRat.zero()
    return check_congruent(lhs, rhs, m)


def check_statement(id: str, n: int, *, family: int | None = None, mode: str = SYMBOLIC, samples: int = 3,
                    seed: int = DEFAULT_SEED) -> CheckResult:
    """Instantiate one registry entry at n and test it.

    For entries quantified over d (or r) the default family values are all
    checked unless ``family`` picks one.
    """
    spec = get(id)
    if mode not in (SYMBOLIC, SAMPLED):
        raise ValueError(f"unknown mode {mode!r}")
    start = time.perf_counter()
    values = [family] if family is not None else (list(spec.family[1]) if spec.family else [None])
    envs = _envs(spec, mode, samples, seed)
    drop_mixed = mode == SAMPLED and "a" in spec.symbolic
    parts: list[tuple[str, CheckResult]] = []
    for v in values:
        vlabel = f"{spec.family[0]}={v}" if spec.family else ""
        reason = spec.domain_reason(n, v)
        if reason:
            parts.append((vlabel, CheckResult.skipped(reason)))
            continue
        for i, env in enumerate(envs):
            ctx = Ctx(n, v, dict(env), first=(i == 0))
            for ch in spec.build(ctx):
                label = "; ".join(x for x in (vlabel, _fmt_env(env), ch.label) if x)
                parts.append((label, _run_check(ch, env, drop_mixed)))
    res = combine(parts)
    res.time_ms = (time.perf_counter() - start) * 1000.0
    return res


@dataclass
class ScanReport:
    id: str
    instances: list[tuple[int, CheckResult]] = field(default_factory=list)

    @property
    def counts(self) -> dict[str, int]:
        out = {PASS: 0, FAIL: 0, SKIPPED: 0}
        for _, r in self.instances:
            out[r.verdict] += 1
        return out

    @property
    def tested(self) -> int:
        return sum(1 for _, r in self.instances if r.verdict != SKIPPED)

    @property
    def first_failure(self) -> int | None:
        for n, r in self.instances:
            if r.verdict == FAIL:
                return n
        return None

    def as_dict(self) -> dict:
        return {"id": self.id, "tested": self.tested, "counts": self.counts, "first_failure": self.first_failure}


def scan(id: str, n_values: Iterable[int], **kwargs) -> ScanReport:
    """check_statement over every n; inadmissible n come back as skipped."""
    get(id)
    values = list(n_values)
    if not values:
        raise ValueError("empty n range")
    rep = ScanReport(id)
    for n in values:
        rep.instances.append((n, check_statement(id, n, **kwargs)))
    return rep
