"""High-precision evaluation of infinite q-products and nonterminating series.

All functions work with mpmath numbers at an explicit working precision
(bits).  Series are summed term by term from their term ratio, and every
truncation comes with a :class:`TailBound`: once the ratio is majorized by
some rho' < 1 from index K on, the remaining tail is at most
|t_K| rho' / (1 - rho').
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import mpmath
from mpmath import mp, mpf

DEFAULT_PREC = 256
DEFAULT_TOL = mpf("1e-25")
MAX_TERMS = 200_000


class Inadmissible(ValueError):
    """The evaluation point violates a convergence condition."""


class PrecisionExhausted(ArithmeticError):
    """The tail bound could not be pushed below the tolerance."""


class PoleAtNonpositiveInteger(ValueError):
    pass


GEOMETRIC, PRODUCT_LOG = "geometric_ratio", "product_log"


@dataclass(frozen=True)
class TailBound:
    index: int
    bound: object
    method: str


def workprec(bits: int = DEFAULT_PREC):
    return mp.workprec(bits)


# ---------------------------------------------------------------------------
# infinite products


def qpoch_infinite(x, q, tol=DEFAULT_TOL) -> tuple:
    """(x; q)_inf with a log-tail bound.

    After J factors, |log prod_{j>=J} (1 - x q^j)| <= 2|x||q|^J / (1 - |q|)
    as soon as |x||q|^J <= 1/2, and the relative error is at most twice that.
    """
    q = mpmath.mpmathify(q)
    x = mpmath.mpmathify(x)
    aq = abs(q)
    if aq >= 1:
        raise Inadmissible(f"|q| = {mpmath.nstr(aq, 5)} must be < 1")
    if x == 0:
        return mpf(1), TailBound(0, mpf(0), PRODUCT_LOG)
    prod = mpf(1)
    term = x
    j = 0
    while True:
        mag = abs(term)
        if mag <= 0.5:
            bound = 2 * mag / (1 - aq)
            if bound <= tol / 4:
                return prod, TailBound(j, 2 * bound, PRODUCT_LOG)
        prod *= 1 - term
        term *= q
        j += 1
        if j > MAX_TERMS:
            raise PrecisionExhausted("infinite product did not converge")


def qpoch_inf(x, q, tol=DEFAULT_TOL):
    return qpoch_infinite(x, q, tol)[0]


def qpoch(x, q, k):
    """(x; q)_k for integer k >= 0 as a finite product, else as a quotient of infinite products."""
    if isinstance(k, int) and k >= 0:
        out = mpf(1)
        t = mpmath.mpmathify(x)
        for _ in range(k):
            out *= 1 - t
            t *= q
        return out
    return qpoch_inf(x, q) / qpoch_inf(x * mpmath.power(q, k), q)


def qpochs(xs: Sequence, q, k):
    out = mpf(1)
    for x in xs:
        out *= qpoch(x, q, k)
    return out


def qpoch_infs(xs: Sequence, q):
    out = mpf(1)
    for x in xs:
        out *= qpoch_inf(x, q)
    return out


# ---------------------------------------------------------------------------
# series


def series_eval(first, ratio: Callable[[int], object], tol=DEFAULT_TOL, *, limit_ratio=None,
                window: int = 8, max_terms: int = MAX_TERMS) -> tuple:
    """Sum t_0 + t_1 + ... given t_0 and r(k) = t_{k+1}/t_k.

    The tail after t_0..t_k is majorized by |t_{k+1}| rho'/(1 - rho') with
    rho' the largest of |r(j)| over a look-ahead window and |limit_ratio|
    (the value of r as k -> infinity).  Summation stops once that bound is
    below ``tol`` (relative to max(1, |S|)).  A term that vanishes exactly
    terminates the series.
    """
    total = mpmath.mpmathify(first)
    t = total
    if t == 0:
        return total, TailBound(0, mpf(0), GEOMETRIC)
    for k in range(max_terms):
        r = ratio(k)
        t = t * r
        if t == 0:
            return total, TailBound(k + 1, mpf(0), GEOMETRIC)
        total += t
        if k < window:
            continue
        rho = max([abs(ratio(j)) for j in range(k + 1, k + 1 + window)]
                  + ([abs(limit_ratio)] if limit_ratio is not None else []))
        if rho >= 1:
            continue
        bound = abs(t) * rho / (1 - rho)
        if bound <= tol * max(1, abs(total)) / 4:
            return total, TailBound(k + 1, bound, GEOMETRIC)
    raise PrecisionExhausted(f"no tail bound below {tol} after {max_terms} terms")


def phi(upper: Sequence, lower: Sequence, q, z, tol=DEFAULT_TOL) -> tuple:
    """r-phi-s with the standard [(-1)^k q^(k choose 2)]^(1+s-r) balancing factor."""
    q = mpmath.mpmathify(q)
    z = mpmath.mpmathify(z)
    r, s = len(upper), len(lower)
    balance = 1 + s - r
    if balance < 0:
        raise Inadmissible("r > s + 1 is not supported")
    if balance == 0 and abs(z) >= 1:
        raise Inadmissible(f"|z| = {mpmath.nstr(abs(z), 5)} must be < 1")

    def ratio(k):
        qk = mpmath.power(q, k)
        num = z
        for a in upper:
            num *= 1 - a * qk
        den = 1 - q * qk
        for b in lower:
            den *= 1 - b * qk
        if balance:
            num *= (-qk) ** balance
        return num / den

    limit = z if balance == 0 else 0
    return series_eval(1, ratio, tol, limit_ratio=limit)


def phi_value(upper, lower, q, z, tol=DEFAULT_TOL):
    return phi(upper, lower, q, z, tol)[0]


def hyper_value(upper: Sequence, lower: Sequence, z):
    """Ordinary pFq via mpmath (used for the q -> 1 limits, where ratios tend to 1)."""
    return mpmath.hyper(list(upper), list(lower), z)


# ---------------------------------------------------------------------------
# Gamma


def gamma_real(x, prec: int = DEFAULT_PREC):
    """Real Gamma by argument shifting and the Stirling series.

    log Gamma(z) ~ (z - 1/2) log z - z + log(2 pi)/2 + sum_j B_2j / (2j (2j-1) z^(2j-1)),
    applied at z = x + N with N chosen so the correction terms fall below
    the working epsilon; Gamma(x) = Gamma(x + N) / (x)_N.
    """
    with mp.workprec(prec + 20):
        x = mpmath.mpmathify(x)
        if x <= 0 and x == mpmath.floor(x):
            raise PoleAtNonpositiveInteger(f"Gamma has a pole at {x}")
        eps = mpmath.ldexp(1, -(prec + 10))
        threshold = mpf(prec) * mpf("0.35")
        z = x
        shift = mpf(1)
        while z < threshold:
            shift *= z
            z += 1
        lg = (z - mpf(1) / 2) * mpmath.log(z) - z + mpmath.log(2 * mp.pi) / 2
        zpow = z
        z2 = z * z
        j = 1
        while True:
            term = mpmath.bernoulli(2 * j) / (2 * j * (2 * j - 1) * zpow)
            lg += term
            if abs(term) < eps:
                break
            zpow *= z2
            j += 1
            if j > 4 * prec:
                raise PrecisionExhausted("Stirling series did not reach the working epsilon")
        value = mpmath.exp(lg) / shift
    return +value
