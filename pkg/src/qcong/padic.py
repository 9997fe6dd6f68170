"""Supercongruences at q = 1, checked modulo prime powers.

Truncated sums are computed exactly over the rationals and only then
reduced mod p^m.  Targets involving the p-adic Gamma function use Morita's
definition, evaluated through an integer approximant of the argument.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable

import mpmath
from mpmath import mp

from .congruence import FAIL, INF, PASS, CheckResult, FactorDetail
from .numeric import gamma_real, hyper_value

GUARD = 2


class NotPAdicallyIntegral(ValueError):
    pass


class PrimeOutOfDomain(ValueError):
    pass


class UnknownTarget(KeyError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % d for d in range(3, math.isqrt(n) + 1, 2))


def vp(x, p: int) -> float:
    """p-adic valuation of a rational (INF for 0)."""
    x = Fraction(x)
    if x == 0:
        return INF
    v = 0
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


@dataclass(frozen=True)
class PadicInt:
    """Residue mod p^m of a p-adic integer."""

    p: int
    m: int
    value: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.p**self.m)

    @classmethod
    def from_rational(cls, x, p: int, m: int) -> PadicInt:
        x = Fraction(x)
        if x.denominator % p == 0:
            raise NotPAdicallyIntegral(f"{x} is not {p}-adically integral")
        mod = p**m
        return cls(p, m, x.numerator * pow(x.denominator, -1, mod))

    @property
    def modulus(self) -> int:
        return self.p**self.m

    def valuation(self) -> float:
        if self.value == 0:
            return INF
        return vp(self.value, self.p)

    def is_unit(self) -> bool:
        return self.value % self.p != 0

    def _coerce(self, other) -> PadicInt:
        if isinstance(other, PadicInt):
            if other.p != self.p:
                raise ValueError("different primes")
            return other
        return PadicInt.from_rational(other, self.p, self.m)

    def _prec(self, other: PadicInt) -> int:
        return min(self.m, other.m)

    def __add__(self, other) -> PadicInt:
        o = self._coerce(other)
        return PadicInt(self.p, self._prec(o), self.value + o.value)

    __radd__ = __add__

    def __neg__(self) -> PadicInt:
        return PadicInt(self.p, self.m, -self.value)

    def __sub__(self, other) -> PadicInt:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> PadicInt:
        return self._coerce(other) - self

    def __mul__(self, other) -> PadicInt:
        o = self._coerce(other)
        return PadicInt(self.p, self._prec(o), self.value * o.value)

    __rmul__ = __mul__

    def inverse(self) -> PadicInt:
        if not self.is_unit():
            raise ZeroDivisionError("only units are invertible")
        return PadicInt(self.p, self.m, pow(self.value, -1, self.modulus))

    def __truediv__(self, other) -> PadicInt:
        return self * self._coerce(other).inverse()

    def __pow__(self, e: int) -> PadicInt:
        if e < 0:
            return self.inverse() ** (-e)
        return PadicInt(self.p, self.m, pow(self.value, e, self.modulus))

    def __eq__(self, other) -> bool:
        if not isinstance(other, PadicInt):
            try:
                other = self._coerce(other)
            except NotPAdicallyIntegral:
                return False
        m = self._prec(other)
        return self.p == other.p and (self.value - other.value) % self.p**m == 0

    def __hash__(self):
        return hash((self.p, self.m, self.value))

    def __str__(self) -> str:
        return f"{self.value} (mod {self.p}^{self.m})"


# ---------------------------------------------------------------------------
# Morita's Gamma


def _unit_factorial(n: int, p: int, mod: int) -> int:
    """prod of 0 < j < n with p not dividing j, mod ``mod`` (a power of p)."""
    # units in any full block of length ``mod`` multiply to -1 (p odd)
    blocks, r = divmod(n, mod)
    out = -1 if blocks % 2 else 1
    acc = 1
    for start in range(1, r, p):
        stop = min(start + p - 1, r)
        acc = acc * math.prod(range(start, stop)) % mod
    return out * acc % mod


@lru_cache(maxsize=4096)
def _gamma_cached(num: int, den: int, p: int, m: int) -> int:
    mod = p**m
    guard = p ** (m + GUARD)
    n = num * pow(den, -1, guard) % guard
    if n == 0:
        n = guard
    val = _unit_factorial(n, p, mod)
    return (-val if n % 2 else val) % mod


def padic_gamma(x, p: int, m: int) -> PadicInt:
    """Morita's Gamma_p(x) mod p^m: Gamma_p(n) = (-1)^n prod_{0<j<n, p does not divide j} j, extended by continuity."""
    if p == 2 or not is_prime(p):
        raise PrimeOutOfDomain(f"{p} is not an odd prime")
    x = Fraction(x)
    if x.denominator % p == 0:
        raise NotPAdicallyIntegral(f"{x} is not {p}-adically integral")
    return PadicInt(p, m, _gamma_cached(x.numerator, x.denominator, p, m))


# ---------------------------------------------------------------------------
# modular form coefficients


def eta_product_coeffs(N: int) -> list[int]:
    """Coefficients of q^1..q^N in q prod_{n>=1} (1 - q^(2n))^4 (1 - q^(4n))^4."""
    if N < 1:
        raise ValueError("N must be positive")
    size = N  # the product part is needed up to q^(N-1)
    poly = [0] * size
    poly[0] = 1

    def times_binomial_power(step: int, e: int):
        for _ in range(e):
            for i in range(size - 1, step - 1, -1):
                poly[i] -= poly[i - step]

    for n in range(1, size):
        if 2 * n < size:
            times_binomial_power(2 * n, 4)
        if 4 * n < size:
            times_binomial_power(4 * n, 4)
    return poly


# ---------------------------------------------------------------------------
# truncated sums


def poch(x, k: int) -> Fraction:
    """Rising factorial (x)_k = x (x+1) ... (x+k-1)."""
    x = Fraction(x)
    out = Fraction(1)
    for i in range(k):
        out *= x + i
    return out


HALF, THIRD = Fraction(1, 2), Fraction(1, 3)
fact = math.factorial


def _sum(lo: int, hi: int, term: Callable[[int], Fraction]) -> Fraction:
    return sum((term(k) for k in range(lo, hi + 1)), Fraction(0))


def s_a2(p):
    return _sum(0, (p - 1) // 2, lambda k: (-1) ** k * (4 * k + 1) * poch(HALF, k) ** 5 / fact(k) ** 5)


def s_h2(p):
    return _sum(0, (p - 1) // 2, lambda k: poch(HALF, k) ** 3 / fact(k) ** 3)


def s_m2(p):
    return _sum(0, (p - 1) // 2, lambda k: poch(HALF, k) ** 4 / fact(k) ** 4)


def s_long(p):
    return _sum(0, (p - 1) // 2, lambda k: (4 * k + 1) * poch(HALF, k) ** 6 / fact(k) ** 6)


def s_d2(p):
    return _sum(0, p - 1, lambda k: (6 * k + 1) * poch(THIRD, k) ** 6 / fact(k) ** 6)


def s_div1(p):
    return _sum(0, (p - 1) // 2, lambda k: (3 * k + 1) * poch(HALF, k) ** 3 / fact(k) ** 3 * 4**k)


def s_zud55(p):
    return _sum(0, (p - 1) // 2, lambda k: (-1) ** k * (3 * k + 1) * poch(HALF, k) ** 3 / fact(k) ** 3 * 8**k)


def s_4km1(p):
    return _sum(0, (p + 1) // 2, lambda k: (-1) ** k * (4 * k - 1) * poch(-HALF, k) ** 5 / fact(k) ** 5)


def s_4km1_rhs(p):
    return _sum(0, (p + 1) // 2, lambda k: poch(-HALF, k) ** 2 * poch(3 * HALF, k) / fact(k) ** 3)


def s_2p3(p):
    return _sum(0, (p - 1) // 2, lambda k: (4 * k + 1) * poch(-HALF, k) * poch(HALF, k) ** 3 / (fact(k + 1) * fact(k) ** 3))


def s_3km1(p):
    return _sum(0, (p + 1) // 2, lambda k: (3 * k - 1) * poch(-HALF, k) ** 2 * poch(HALF, k) / fact(k) ** 3 * 4**k)


def s_75(p):
    return _sum(0, (p - 1) // 3,
                lambda k: (6 * k + 1) * poch(THIRD, k) ** 4 * fact(2 * k) / (fact(k) ** 4 * poch(2 * THIRD, 2 * k)))


def s_76(p):
    return _sum(0, (p + 1) // 3,
                lambda k: (6 * k - 1) * poch(-THIRD, k) ** 4 * fact(2 * k) / (fact(k) ** 4 * poch(-2 * THIRD, 2 * k)))


def s_qdixon5c(p):
    return _sum(0, (p - 1) // 2,
                lambda k: (-1) ** k * (4 * k + 1) * poch(HALF, k) * poch(-HALF, k) ** 2 / (fact(k + 1) ** 2 * fact(k)))


def s_quartic1c(p):
    return _sum(0, (p - 1) // 2, lambda k: (5 * k + 1) * poch(1, 2 * k) * poch(HALF, 3 * k) * poch(Fraction(1, 4), k) / (
        32**k * poch(Fraction(9, 8), k) * poch(1, k) ** 2 * poch(HALF, 2 * k) * poch(Fraction(5, 4), k)))


def s_quartic2c(p):
    return _sum(0, (p - 1) // 2, lambda k: (5 * k + 2) * poch(HALF, k) ** 2 * poch(1, 3 * k) / (
        8**k * poch(Fraction(11, 8), k) * poch(Fraction(9, 8), k) * poch(1, 2 * k) * poch(1, k)))


# ---------------------------------------------------------------------------
# registry

THEOREM, CONJECTURE, NUMERIC = "theorem", "conjecture", "numeric"


@dataclass
class PadicTarget:
    id: str
    kind: str
    anchor: str
    power: int
    lhs: Callable[[int], Fraction] | None
    rhs: Callable[[int, int], object] | None
    residues: tuple = ()  # (residues, modulus) restriction on p
    min_p: int = 3
    note: str = ""
    extra: dict = field(default_factory=dict)

    def domain_error(self, p: int) -> str | None:
        if not is_prime(p) or p == 2:
            return f"{p} is not an odd prime"
        if self.residues:
            rs, mod = self.residues
            if p % mod not in rs:
                return f"requires p = {' or '.join(map(str, rs))} (mod {mod})"
        return None

    def summary(self) -> dict:
        out = {"id": self.id, "kind": self.kind, "anchor": self.anchor, "power": self.power}
        if self.residues:
            out["residues"] = {"values": list(self.residues[0]), "modulus": self.residues[1]}
        if self.min_p > 3:
            out["min_p"] = self.min_p
        if self.note:
            out["note"] = self.note
        return out


_TARGETS: dict[str, PadicTarget] = {}


def _reg(t: PadicTarget):
    _TARGETS[t.id] = t


def _g(x, p, m):
    return padic_gamma(x, p, m)


def _scaled(c: Fraction, g: PadicInt, p: int, m: int) -> PadicInt:
    """c * g known mod p^m, where g only needs precision m - v_p(c)."""
    shift = int(vp(c, p))
    unit = c / Fraction(p) ** shift
    return PadicInt(p, m, p**shift * PadicInt.from_rational(unit, p, g.m).value * g.value)


def _gm(x, p, m, shift):
    return padic_gamma(x, p, max(1, m - shift))


def _rhs_a2(p, m):
    if p % 4 == 1:
        return _scaled(Fraction(-p), _gm(Fraction(3, 4), p, m, 1) ** -4, p, m)
    return Fraction(0)


def _rhs_h2(p, m):
    if p % 4 == 1:
        return -(padic_gamma(Fraction(1, 4), p, m) ** 4)
    return Fraction(0)


def _rhs_d2(p, m):
    c = Fraction(-p) if p % 6 == 1 else Fraction(-(p**4), 27)
    return _scaled(c, _gm(THIRD, p, m, int(vp(c, p))) ** 9, p, m)


def _rhs_d2_corr(p, m):
    c = Fraction(-p) if p % 6 == 1 else Fraction(-10 * p**4, 27)
    return _scaled(c, _gm(THIRD, p, m, int(vp(c, p))) ** 9, p, m)


def _rhs_m2(p, m):
    return Fraction(eta_product_coeffs(p)[p - 1])


def _rhs_a2_mod_p4(p, m):
    # p = 3 (mod 4) branch lifted to p^4: -(p^3/16) Gamma_p(1/4)^4
    return _scaled(Fraction(-(p**3), 16), _gm(Fraction(1, 4), p, m, 3) ** 4, p, m)


_reg(PadicTarget("P-A2", THEOREM, "alternating (4k+1) (1/2)_k^5 / k!^5 sum to (p-1)/2", 3, s_a2, _rhs_a2))
_reg(PadicTarget("P-H2", THEOREM, "(1/2)_k^3 / k!^3 sum to (p-1)/2", 2, s_h2, _rhs_h2))
_reg(PadicTarget("P-M2", THEOREM, "(1/2)_k^4 / k!^4 sum against the eta-product coefficient a_p", 3, s_m2, _rhs_m2))
_reg(PadicTarget("P-LONG", THEOREM, "(4k+1) (1/2)_k^6 / k!^6 sum against p times the (1/2)_k^4 / k!^4 sum", 4, s_long,
                 lambda p, m: p * s_m2(p), min_p=5))
_reg(PadicTarget("P-A2H2", THEOREM, "alternating (4k+1) (1/2)_k^5 / k!^5 sum against p times the (1/2)_k^3 / k!^3 sum", 3, s_a2, lambda p, m: p * s_h2(p)))
_reg(PadicTarget("P-D2", THEOREM, "(6k+1) (1/3)_k^6 / k!^6 sum to p-1, two branches by p mod 6", 6, s_d2, _rhs_d2,
                 min_p=5))
_reg(PadicTarget("P-D2-CORR", THEOREM, "(6k+1) (1/3)_k^6 / k!^6 sum to p-1, p = 5 (mod 6) branch with -10 p^4/27", 6,
                 s_d2, _rhs_d2_corr, min_p=5,
                 note="with the constant -p^4/27 the p = 5 (mod 6) branch fails; -10 p^4/27 holds"))
_reg(PadicTarget("P-DIV1", THEOREM, "(3k+1) (1/2)_k^3 4^k / k!^3 sum", 3, s_div1, lambda p, m: Fraction(p)))
_reg(PadicTarget("P-ZUD55", THEOREM, "alternating (3k+1) (1/2)_k^3 8^k / k!^3 sum", 3, s_zud55,
                 lambda p, m: Fraction(p * (-1) ** ((p - 1) // 2))))
_reg(PadicTarget("P-4KM1COR", THEOREM, "alternating (4k-1) (-1/2)_k^5 / k!^5 sum to (p+1)/2", 3, s_4km1,
                 lambda p, m: (-1) ** ((p + 1) // 2) * p * s_4km1_rhs(p)))
_reg(PadicTarget("P-2P3COR", THEOREM, "(4k+1) (-1/2)_k (1/2)_k^3 / ((k+1)! k!^3) sum equals 2p^3", 4, s_2p3,
                 lambda p, m: Fraction(2 * p**3)))
_reg(PadicTarget("P-3KM1", CONJECTURE, "(3k-1) (-1/2)_k^2 (1/2)_k 4^k / k!^3 sum to (p+1)/2", 3, s_3km1,
                 lambda p, m: Fraction(p)))
_reg(PadicTarget("P-75", CONJECTURE, "(6k+1) (1/3)_k^4 (2k)! / (k!^4 (2/3)_2k) sum, p = 1 (mod 3)", 3, s_75,
                 lambda p, m: Fraction(p), residues=((1,), 3)))
_reg(PadicTarget("P-76", CONJECTURE, "(6k-1) (-1/3)_k^4 (2k)! / (k!^4 (-2/3)_2k) sum, p = 2 (mod 3)", 3, s_76,
                 lambda p, m: Fraction(p), residues=((2,), 3)))
_reg(PadicTarget("P-QDIXON5C", CONJECTURE, "alternating (4k+1) (1/2)_k (-1/2)_k^2 / ((k+1)!^2 k!) sum, p = 3 (mod 4)", 2,
                 s_qdixon5c, lambda p, m: Fraction(0), residues=((3,), 4)))
_reg(PadicTarget("P-QUARTIC1C", CONJECTURE, "(5k+1) sum with 32^k, p = 5 (mod 8)", 2, s_quartic1c,
                 lambda p, m: Fraction(0), residues=((5,), 8)))
_reg(PadicTarget("P-QUARTIC2C", CONJECTURE, "(5k+2) sum with 8^k, p = 5, 7 (mod 8)", 3, s_quartic2c,
                 lambda p, m: Fraction(0), residues=((5, 7), 8)))
_reg(PadicTarget("P-A2-LIU", CONJECTURE, "alternating (4k+1) (1/2)_k^5 / k!^5 sum for p = 3 (mod 4), p > 3, modulo p^4", 4, s_a2, _rhs_a2_mod_p4,
                 residues=((3,), 4), min_p=5,
                 note="target value taken as -(p^3/16) Gamma_p(1/4)^4"))
_reg(PadicTarget("P-RAM5", NUMERIC, "alternating (4k+1) (1/2)_k^5 / k!^5 series equals 2 / Gamma(3/4)^4", 30, None, None))


def list_targets() -> list[PadicTarget]:
    return list(_TARGETS.values())


def get_target(id: str) -> PadicTarget:
    try:
        return _TARGETS[id]
    except KeyError:
        raise UnknownTarget(id) from None


def _compare(lhs: Fraction, rhs, p: int, m: int) -> CheckResult:
    if isinstance(rhs, PadicInt):
        if vp(lhs, p) < 0:
            achieved = vp(lhs, p)
        else:
            diff = PadicInt.from_rational(lhs, p, rhs.m) - rhs
            achieved = diff.valuation()
            if achieved == INF:
                achieved = rhs.m  # equal to the working precision
    else:
        achieved = vp(lhs - Fraction(rhs), p)
    ok = achieved >= m
    reason = "" if ok else f"p-adic valuation of LHS - RHS is {achieved}, need {m}"
    return CheckResult(PASS if ok else FAIL, reason, [FactorDetail(f"{p}", m, achieved)])


def ram5_check(digits: int = 30) -> CheckResult:
    """Ramanujan's series as an alternating 6F5 at z = -1 against 2 / Gamma(3/4)^4."""
    start = time.perf_counter()
    prec = int(digits * 3.33) + 64
    with mp.workprec(prec):
        h = mpmath.mpf(1) / 2
        lhs = hyper_value([h, h, h, h, h, mpmath.mpf(5) / 4], [1, 1, 1, 1, mpmath.mpf(1) / 4], -1)
        rhs = 2 / gamma_real(mpmath.mpf(3) / 4, prec) ** 4
        err = abs(lhs - rhs)
        achieved = INF if err == 0 else int(-mpmath.log10(err / abs(rhs)))
    ok = achieved >= digits
    res = CheckResult(PASS if ok else FAIL, "" if ok else f"agreement to {achieved} digits, need {digits}",
                      [FactorDetail("decimal digits", digits, achieved)])
    res.time_ms = (time.perf_counter() - start) * 1000.0
    return res


def check_padic(id: str, p: int | None = None, m: int | None = None) -> CheckResult:
    """Check one supercongruence at the prime p modulo p^m (m defaults to the statement's power)."""
    t = get_target(id)
    if t.kind == NUMERIC:
        return ram5_check(m or t.power)
    if p is None:
        raise PrimeOutOfDomain("a prime is required")
    why = t.domain_error(p)
    if why:
        raise PrimeOutOfDomain(why)
    m = t.power if m is None else m
    if p < t.min_p:
        return CheckResult.skipped(f"requires p>{t.min_p - 2}")
    start = time.perf_counter()
    lhs = t.lhs(p)
    rhs = t.rhs(p, m)
    res = _compare(lhs, rhs, p, m)
    res.time_ms = (time.perf_counter() - start) * 1000.0
    return res


def admissible_primes(id: str, limit: int) -> list[int]:
    t = get_target(id)
    return [p for p in range(3, limit + 1) if t.domain_error(p) is None]


__all__ = [
    "CONJECTURE",
    "NUMERIC",
    "NotPAdicallyIntegral",
    "PadicInt",
    "PadicTarget",
    "PrimeOutOfDomain",
    "THEOREM",
    "UnknownTarget",
    "admissible_primes",
    "check_padic",
    "eta_product_coeffs",
    "get_target",
    "list_targets",
    "padic_gamma",
    "poch",
    "ram5_check",
    "vp",
]
