"""Checks of the summation and transformation formulas themselves.

Terminating instances are compared exactly: the parameters are specialized
to rationals, q stays symbolic, and both sides become FactoredRat values.
Nonterminating instances are compared numerically at seeded points with
certified series tails (see :mod:`qcong.numeric`).

Also here: the continuous q-ultraspherical polynomials and their
linearization formula, exactly for integer degrees and coefficientwise for
real degrees.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import mpmath
from mpmath import mp, mpf

from .congruence import FAIL, PASS, CheckResult, FactorDetail, check_identity, combine
from .exact_core import FactoredRat, LaurentPoly, ratfunc_sum
from .numeric import (
    DEFAULT_PREC,
    GEOMETRIC,
    Inadmissible,
    PrecisionExhausted,
    TailBound,
    gamma_real,
    hyper_value,
    qpoch_inf,
    series_eval,
)
from .qseries import P, Q, SingularTerm, Summand, binom_factor, mono, poch, truncated_sum

DEFAULT_SEED = 20181
DEFAULT_TOL = 1e-25
EXACT, NUMERIC = "exact", "numeric"


class UnknownIdentity(KeyError):
    pass


# ---------------------------------------------------------------------------
# exact side builders (rational parameters, symbolic q)


def R(c, e: int = 0):
    """The monomial c * q^e."""
    return P(Fraction(c), q=e)


def _fixed(k_value: int):
    return lambda k: k_value


def pochs_n(xs, n: int, t: int = 1) -> FactoredRat:
    """prod (x; q^t)_n over xs, as a FactoredRat."""
    return Summand([poch(x, t, length=_fixed(n)) for x in xs]).term(0)


def inv_pochs_n(xs, n: int, t: int = 1) -> FactoredRat:
    return Summand([poch(x, t, -1, length=_fixed(n)) for x in xs]).term(0)


def vwp_factors(alpha, upper, lower, *, step: int = 2, t: int = 1):
    """(1 - alpha q^(step k))/(1 - alpha) times (upper)_k/(q, lower)_k, all in base q^t."""
    fs = [binom_factor(lambda k: alpha.qshift(step * k)), binom_factor(lambda k: alpha, -1)]
    fs += [poch(x, t) for x in upper]
    fs += [poch(x, t, -1) for x in lower]
    fs.append(poch(P(q=t), t, -1))
    return fs


def _two_k(k):
    return 2 * k


def _watson_exact(n: int, prm: dict):
    a, b, c, d, e = (prm[v] for v in "abcde")
    A, B, C, D, E, F = R(a), R(b), R(c), R(d), R(e), R(1, -n)
    upper = [A, B, C, D, E, F]
    lower = [A * Q / x for x in (B, C, D, E, F)]
    arg = R(a * a / (b * c * d * e), 2 + n)
    lhs = truncated_sum(Summand(vwp_factors(A, upper, lower) + [mono(arg)]), n)
    pre = pochs_n([A * Q, A * Q / (D * E)], n) * inv_pochs_n([A * Q / D, A * Q / E], n)
    inner = [poch(A * Q / (B * C)), poch(D), poch(E), poch(F), poch(A * Q / B, 1, -1), poch(A * Q / C, 1, -1),
             poch(D * E * F / A, 1, -1), poch(Q, 1, -1), mono(Q)]
    rhs = truncated_sum(Summand(inner), n) * pre
    return lhs, rhs


def _fourteen_side(A, b, c, d, n: int) -> FactoredRat:
    B, C, D = R(b), R(c), R(d)
    upper = [A, B, C, D, A * B / C, A * B / D, A * B * R(1, n), R(1, -n)]
    lower = [A * Q / B, A * Q / C, A * Q / D, C * Q / B, D * Q / B, R(1 / b, 1 - n), A * R(1, n + 1)]
    fs = vwp_factors(A, upper, lower)
    fs += [poch(A * Q / B, 1, length=_two_k), poch(A * B, 1, -1, length=_two_k), mono(R(1 / (b * b), 2))]
    return truncated_sum(Summand(fs), n)


def _fourteen_exact(n: int, prm: dict):
    a, b, c, d = (prm[v] for v in "abcd")
    A = R(a)
    Ah = R(c * d / (a * b), -n)
    C, D = R(c), R(d)
    lhs = _fourteen_side(A, b, c, d, n)
    pre = pochs_n([A * Q, Ah * Q / C, Ah * Q / D, A * Q / (C * D)], n) * inv_pochs_n(
        [Ah * Q, A * Q / C, A * Q / D, Ah * Q / (C * D)], n)
    return lhs, _fourteen_side(Ah, b, c, d, n) * pre


def _cortf_exact(n: int, prm: dict):
    a, b, c = (prm[v] for v in "abc")
    A, B, C = R(a), R(b), R(c)
    upper = [A, B, C, A * B / C, A * B * R(1, n), R(1, -n)]
    lower = [A * Q / B, A * Q / C, C * Q / B, R(1 / b, 1 - n), A * R(1, n + 1)]
    fs = vwp_factors(A, upper, lower)
    fs += [poch(A * Q / B, 1, length=_two_k), poch(A * B, 1, -1, length=_two_k), mono(R(1 / b, 1))]
    lhs = truncated_sum(Summand(fs), n)
    inner = [poch(B), poch(C), poch(R(c / a, -n)), poch(R(1, -n)), poch(Q, 1, -1), poch(C * Q / B, 1, -1),
             poch(R(c / (a * b), 1 - n), 1, -1), poch(R(1 / b, 1 - n), 1, -1), mono(R(1 / (b * b), 2))]
    pre = pochs_n([A * Q, A * B / C], n) * inv_pochs_n([A * B, A * Q / C], n)
    return lhs, truncated_sum(Summand(inner), n) * pre


def _qdixon_exact(n: int, prm: dict):
    """b = q^-n; a = s^2 so that sqrt(a) = s is rational."""
    s, c = prm["s"], prm["c"]
    a = s * s
    A, Bq, C = R(a), R(1, -n), R(c)
    fs = [binom_factor(lambda k: R(-s, k)), binom_factor(lambda k: R(-s), -1), poch(A), poch(Bq), poch(C),
          poch(A * Q / Bq, 1, -1), poch(A * Q / C, 1, -1), poch(Q, 1, -1), mono(R(s / c, 1 + n))]
    lhs = truncated_sum(Summand(fs), n)
    rhs = pochs_n([A * Q, R(s / c, 1)], n) * inv_pochs_n([R(s, 1), A * Q / C], n)
    return lhs, rhs


def _rahman_exact(n: int, prm: dict):
    """a = q^(1-n) with n odd >= 3: the left side terminates and the right side vanishes."""
    b, c, d = (prm[v] for v in "bcd")
    A = R(1, 1 - n)
    B, C, D = R(b), R(c), R(d)
    fs = [binom_factor(lambda k: A.qshift(3 * k)), binom_factor(lambda k: A, -1),
          poch(A, 2), poch(D, 2), poch(A * Q / D, 2), poch(B), poch(C), poch(A * Q / (B * C)),
          poch(A * Q / D, 1, -1), poch(D, 1, -1), poch(Q, 1, -1),
          poch(A * R(1, 2) / B, 2, -1), poch(A * R(1, 2) / C, 2, -1), poch(B * C * Q, 2, -1), mono(Q)]
    lhs = truncated_sum(Summand(fs), (n - 1) // 2)
    return lhs, FactoredRat.zero()


# ---------------------------------------------------------------------------
# numeric term descriptions


@dataclass
class NTerm:
    """Hypergeometric-type term t_k, described through its ratio.

    ``factors`` holds (x, t, m, e): the factor (x; q^t)_(m k) raised to e.
    ``vwp`` holds (alpha, s): (1 - alpha q^(s k)) / (1 - alpha).
    The term also carries z^k, (-1)^k if ``sign`` and q^(quad k(k-1)/2).
    """

    q: object
    factors: list
    z: object = 1
    vwp: tuple = ()
    sign: bool = False
    quad: int = 0

    def ratio_at(self, qk):
        q = self.q
        r = mpmath.mpmathify(self.z)
        for x, t, m, e in self.factors:
            qkt = qk ** (t * m)
            for j in range(m):
                r *= (1 - x * q ** (t * j) * qkt) ** e
        for alpha, s in self.vwp:
            qks = qk**s
            r *= (1 - alpha * q**s * qks) / (1 - alpha * qks)
        if self.sign:
            r = -r
        if self.quad:
            r *= qk**self.quad
        return r

    def ratio(self, k: int):
        return self.ratio_at(mpmath.power(self.q, k))

    def terms(self, count: int) -> list:
        out = [mpf(1)]
        for k in range(count - 1):
            out.append(out[-1] * self.ratio(k))
        return out


def ser(q, num, den, z=1, *, vwp=(), sign=False, quad=0, tol=None):
    """Sum of an NTerm series; ``num``/``den`` entries are x, (x, t) or (x, t, m)."""
    fs = []
    for group, e in ((num, 1), (den, -1)):
        for item in group:
            if not isinstance(item, tuple):
                item = (item, 1)
            x, t = item[0], item[1]
            m = item[2] if len(item) > 2 else 1
            fs.append((x, t, m, e))
    term = NTerm(q, fs, z, tuple(vwp), sign, quad)
    return series_eval(1, term.ratio, tol if tol is not None else _inner_tol(), limit_ratio=term.ratio_at(0))[0]


def _inner_tol():
    return mpmath.ldexp(1, -int(mp.prec * 0.8))


def phi_q(upper, lower, q, z):
    """r-phi-s with the usual balancing factor (r = s + 1 assumed here)."""
    return ser(q, list(upper), [q] + list(lower), z)


def _qinf(x, q):
    return qpoch_inf(x, q, _inner_tol())


def _ip(xs, q):
    out = mpf(1)
    for x in xs:
        out *= _qinf(x, q)
    return out


# ---------------------------------------------------------------------------
# numeric identities: each returns (lhs, rhs)


def _n_watson_lim(p):
    q, a, b, c, d, e = (p[v] for v in ("q", "a", "b", "c", "d", "e"))
    lhs = ser(q, [a, b, c, d, e], [q, a * q / b, a * q / c, a * q / d, a * q / e], a * a * q * q / (b * c * d * e),
              vwp=[(a, 2)], sign=True, quad=1)
    pre = _ip([a * q, a * q / (d * e)], q) / _ip([a * q / d, a * q / e], q)
    rhs = pre * phi_q([a * q / (b * c), d, e], [a * q / b, a * q / c], q, a * q / (d * e))
    return lhs, rhs


def _n_rahman(p):
    q, a, b, c, d = (p[v] for v in "qabcd")
    lhs = ser(q, [(a, 2), (d, 2), (a * q / d, 2), b, c, a * q / (b * c)],
              [a * q / d, d, q, (a * q * q / b, 2), (a * q * q / c, 2), (b * c * q, 2)], q, vwp=[(a, 3)])
    q2 = q * q
    pre = _ip([a * q2, b * q, c * q, a * q2 / (b * c)], q2) / _ip([q, a * q2 / b, a * q2 / c, b * c * q], q2)
    rhs = pre * phi_q([b, c, a * q / (b * c)], [d * q, a * q2 / d], q2, q2)
    return lhs, rhs


def _n_cubic(p):
    q, a, c, d = (p[v] for v in "qacd")
    q3 = q**3
    lhs = ser(q, [a, q / a, (a * c, 1, 2), (d, 3), (a * c * q / d, 3)],
              [(c * q3, 3), (a * a * c * q * q, 3), (q, 1, 2), a * c * q / d, d], q, vwp=[(a * c, 4)])
    t1 = _ip([a * c * q**2, a * c * q3, d / (a * c), d * q / (a * c), a * d * q, a * q, q**2 / a, d * q**2 / a], q3) / _ip(
        [q, q**2, d * q, d * q**2, a * a * c * q**2, c * q3, d * q / (a * a * c), d / c], q3)
    pre2 = d / (a * c) * _ip([a, q / a, a * c * q], q) * _ip([q3, d, a * c * q / d, d * d * q**2 / (a * c)], q3) / (
        _ip([q, d, a * c * q / d], q) * _ip([c * q3, a * a * c * q**2, d / c, d * q / (a * a * c)], q3))
    t2 = pre2 * phi_q([d / c, d * q / (a * a * c)], [d * d * q**2 / (a * c)], q3, q3)
    return lhs, t1 + t2


def _n_quartic(p):
    q, a, b = (p[v] for v in "qab")
    q4 = q**4
    ab = a * b
    lhs = ser(q, [a, b, (ab / q, 3), (ab, 3), (ab * q, 3), (ab * ab / q**2, 4)],
              [(a * b * b * q**2, 4), (a * a * b * q**2, 4), (ab * q, 2), (ab, 2), (ab / q, 2), q], q,
              vwp=[(ab * ab / q**2, 5)])
    pre = _ip([a * q, b], q) * _qinf(-ab * q, q * q) / (
        _qinf(q, q) * _ip([b, a * b * b * q**2, a * a * b * q**2], q4))
    rhs = pre * ser(q4, [a], [q4, a * q4], b * q4, sign=True, quad=1)
    return lhs, rhs


def _n_gasper(p):
    q, a, b = (p[v] for v in "qab")
    q4 = q**4
    ab = a * b
    s1 = ser(q, [a, b, (q / b, 3), (q**2 / b, 3), (q**3 / b, 3), (ab * ab / q**2, 4)],
             [(q4, 4), (a * q4 / b, 4), (ab * q, 2), (ab, 2), (ab / q, 2), q**3 / (a * b * b)], q, vwp=[(a, 5)])
    pre = a * b**3 * _ip([a * q, b * q, 1 / b], q) * _qinf(ab * ab * q * q, q4) / (
        q * q * _ip([ab, q**3 / (a * b * b)], q) * _qinf(ab / q, q * q) * _ip([q4, a * b**3 / q**2, a * q4 / b], q4))
    s2 = pre * ser(q4, [ab * ab / q**2], [q4, ab * ab * q * q], a * b**3 * q * q, sign=True, quad=1)
    rhs = _ip([a * q, a * b * b / q**2], q) / (_qinf(ab, q) * _qinf(ab / q, q * q) * _ip([a * q4 / b, a * b**3 / q**2], q4))
    return s1 + s2, rhs


def _n_qdixon(p):
    q, a, b, c = (p[v] for v in "qabc")
    s = mpmath.sqrt(a)
    lhs = ser(q, [a, -q * s, b, c], [q, -s, a * q / b, a * q / c], q * s / (b * c))
    rhs = _ip([a * q, q * s / b, q * s / c, a * q / (b * c)], q) / _ip([a * q / b, a * q / c, q * s, q * s / (b * c)], q)
    return lhs, rhs


def _finite_phi(build: Callable[[], tuple], n: int):
    """Terminating r-phi-s with r = s + 1, summed to n.

    ``build`` returns (upper, lower, q, z) computed at the current precision.
    The terms can be far larger than the sum, so the parameters and the sum
    are recomputed with extra bits covering the largest term.
    """
    with mp.workprec(53):
        big = max(abs(t) for t in _phi_terms(*build(), n))
    extra = max(0, int(mpmath.log(big, 2))) + 20 if big > 1 else 0
    with mp.workprec(mp.prec + extra):
        total = mpmath.fsum(_phi_terms(*build(), n))
    return +total


def _phi_terms(upper, lower, q, z, n: int):
    out = []
    t = mpf(1)
    for k in range(n + 1):
        out.append(t)
        num = z
        for x in upper:
            num *= 1 - x * q**k
        den = 1 - q ** (k + 1)
        for y in lower:
            den *= 1 - y * q**k
        t = t * num / den
    return out


def _weighted_sum(term: NTerm, weight: Callable[[int], object], tol):
    """sum t_k w_k; the tail is bounded by the geometric bound on t_k times twice the largest recent |w_k|."""
    total = mpf(0)
    t = mpf(1)
    window = 8
    limit = abs(term.ratio_at(0))
    for k in range(100_000):
        w = weight(k)
        total += t * w
        t = t * term.ratio(k)
        if t == 0:
            return total
        if k < window:
            continue
        rho = max([abs(term.ratio(j)) for j in range(k + 1, k + 1 + window)] + [limit])
        if rho >= 1:
            continue
        wmax = 2 * max(abs(weight(j)) for j in range(k + 1, k + 1 + 3))
        if abs(t) * wmax / (1 - rho) <= tol * max(1, abs(total)) / 4:
            return total
    raise PrecisionExhausted("double series did not converge")


def _n_irs(p, *, unbalanced: bool = False):
    q, a, b, c, d, e, f, g, h = (p[v] for v in "qabcdefgh")
    term = NTerm(q, [(x, 1, 1, 1) for x in (a, b, c, d, e, f)]
                 + [(x, 1, 1, -1) for x in (a * q / b, a * q / c, a * q / d, a * q / e, a * q / f)],
                 a * a * q * q / (b * c * d * e * f), vwp=((a, 2),))
    # (q;q)_k is not in ``term``: include it via the ratio's missing factor
    term.factors.append((q, 1, 1, -1))
    u = a * g * h * q / (b * c)

    def inner(k):
        return _finite_phi(lambda: ([q**-k, a * q**k, g, h], [b, c, a * g * h * q / (b * c)], +q, +q), k)

    lhs = _weighted_sum(term, inner, _inner_tol())
    bcdef = b * c * d * e * f
    pre1 = _ip([a * q, a * q / (d * e), a * q / (d * f), a * q / (e * f)], q) / _ip(
        [a * q / d, a * q / e, a * q / f, a * q / (d * e * f)], q)
    s1 = phi_q([a * g * q / (b * c), a * h * q / (b * c), d, e, f], [u, a * q / b, a * q / c, d * e * f / a], q, q)
    # last denominator slot carries a^2 h q^2 / bcdef
    pre2 = _ip([a * q, d, e, f, a * a * q * q / (b * d * e * f), a * a * q * q / (c * d * e * f), a * g * q / (b * c),
                a * h * q / (b * c), a * a * g * h * q * q / bcdef], q) / _ip(
        [a * q / b, a * q / c, a * q / d, a * q / e, a * q / f, d * e * f / (a * q), u, a * a * g * q * q / bcdef,
         a * a * h * q * q / bcdef], q)
    first_upper = a * g * q / (d * e) if unbalanced else a * q / (d * e)
    s2 = phi_q([first_upper, a * q / (d * f), a * q / (e * f), a * a * g * q * q / bcdef, a * a * h * q * q / bcdef],
               [a * a * q * q / (b * d * e * f), a * a * q * q / (c * d * e * f), a * q * q / (d * e * f),
                a * a * g * h * q * q / bcdef], q, q)
    return lhs, pre1 * s1 + pre2 * s2


def irs_unbalanced_residual(point: dict, prec: int = DEFAULT_PREC):
    """|LHS - RHS| for the double series transformation with upper parameter agq/de kept in the second 5phi4."""
    with mp.workprec(prec):
        lhs, rhs = _n_irs(_to_mp(point), unbalanced=True)
        return abs(lhs - rhs)


def _n_irs54(p):
    q, a, b, c, e, f, g = (p[v] for v in "qabcefg")
    term = NTerm(q, [(x, 1, 1, 1) for x in (a, b, e, f)] + [(x, 1, 1, -1) for x in (q, a * q / b, a * q / e, a * q / f)],
                 a * q / (b * e * f), vwp=((a, 2),))

    def inner(k):
        return _finite_phi(lambda: ([q**-k, a * q**k, g], [b, c], +q, +q), k)

    lhs = _weighted_sum(term, inner, _inner_tol())
    pre1 = _ip([a * q, c / e, c / f, a * q / (e * f)], q) / _ip([c, a * q / e, a * q / f, c / (e * f)], q)
    s1 = phi_q([a * g * q / (b * c), e, f], [e * f * q / c, a * q / b], q, q)
    pre2 = _ip([a * q, e, f, a * c * q / (b * e * f), a * q / (e * f), a * g * q / (b * c)], q) / _ip(
        [c, a * q / b, a * q / e, a * q / f, e * f / c, a * q * g / (b * e * f)], q)
    s2 = phi_q([c / e, c / f, a * g * q / (b * e * f)], [a * c * q / (b * e * f), c * q / (e * f)], q, q)
    return lhs, pre1 * s1 + pre2 * s2


def _vwp12_lhs(q, a, b, upper, lower):
    return ser(q, [a, b] + upper + [(a * q / b, 1, 2)], [q, a * q / b] + lower + [(a * b, 1, 2)], q / b,
               vwp=[(a, 2)])


def _n_newtf(p):
    q, a, b, c, d = (p[v] for v in "qabcd")
    lhs = _vwp12_lhs(q, a, b, [c, d, a * b / c, a * b / d], [a * q / c, a * q / d, c * q / b, d * q / b])
    pre1 = _ip([a * q, a * b / c, a * b / d, a * q / (c * d)], q) / _ip([a * b, a * q / c, a * q / d, a * b / (c * d)], q)
    s1 = ser(q, [b, c, d, c * d / a], [q, c * q / b, d * q / b, c * d * q / (a * b)], (q / b) ** 2)
    pre2 = _ip([a * q, c, d, c * d * q / (a * b * b)], q) / _ip([a * b, c * q / b, d * q / b, c * d / (a * b)], q)
    s2 = ser(q, [b, a * b / c, a * b / d, a * b * b / (c * d)], [q, a * q / c, a * q / d, a * b * q / (c * d)], (q / b) ** 2)
    return lhs, pre1 * s1 + pre2 * s2


def _n_cora2(p):
    q, a, b, c = (p[v] for v in "qabc")
    lhs = _vwp12_lhs(q, a, b, [b * c, a * b / c, c, a / c], [a * q / (b * c), c * q / b, c * q, a * q / c])
    t1 = _ip([q, a * q, b * c, a * b / c], q) / _ip([b, c * q, a * q / c, a * b], q)
    pre2 = _ip([a * q, c, a / c, q / (b * b)], q) / _ip([a * b, c * q / b, a * q / (b * c), 1 / b], q)
    s2 = ser(q, [b, b * b, b * c, a * b / c], [q, b * q, c * q, a * q / c], (q / b) ** 2)
    return lhs, t1 + pre2 * s2


def _n_cora3(p):
    q, a, c = (p[v] for v in "qac")
    q2 = q * q
    lhs = ser(q, [a, -1, (c * c, 2), (a * a / (c * c), 2)], [q, -a * q, (c * c * q2, 2), (a * a * q2 / (c * c), 2)], -q,
              vwp=[(a * a, 4)])
    pre = _ip([q, a * q], q) / (2 * _ip([-q, -a], q))
    rhs = pre * (_ip([-c, -a / c], q) / _ip([c * q, a * q / c], q) + _ip([c, a / c], q) / _ip([-c * q, -a * q / c], q))
    return lhs, rhs


def _n_cora2b(p):
    q, a, b, c = (p[v] for v in "qabc")
    lhs = _vwp12_lhs(q, a, b, [a * b / c, b * c / q], [c * q / b, a * q * q / (b * c)])
    pre = _ip([a * q, q * q / (b * b), c, a * q / c], q) / _ip([a * b, c * q / b, a * q * q / (b * c), q / b], q)
    s = ser(q, [b * b / q, b * c / q, a * b / c], [q, a * q / c, c], (q / b) ** 2)
    return lhs, pre * s


def _n_9f8(p):
    a, b, c, d = (p[v] for v in "abcd")
    G = gamma_real
    lhs = hyper_value([a / 2 + 1, a, b, c, d, a + b - c, a + b - d, (a + 1 - b) / 2, (a + 2 - b) / 2],
                      [a / 2, a + 1 - b, a + 1 - c, a + 1 - d, c + 1 - b, d + 1 - b, (a + b) / 2, (a + b + 1) / 2], 1)
    pre1 = G(a + b) * G(a + 1 - c) * G(a + 1 - d) * G(a + b - c - d) / (
        G(a + 1) * G(a + b - c) * G(a + b - d) * G(a + 1 - c - d))
    s1 = hyper_value([b, c, d, c + d - a], [c + 1 - b, d + 1 - b, c + d + 1 - a - b], 1)
    pre2 = G(a + b) * G(c + 1 - b) * G(d + 1 - b) * G(c + d - a - b) / (G(a + 1) * G(c) * G(d) * G(c + d + 1 - a - 2 * b))
    s2 = hyper_value([b, a + b - c, a + b - d, a + 2 * b - c - d], [a + 1 - c, a + 1 - d, a + b + 1 - c - d], 1)
    return lhs, pre1 * s1 + pre2 * s2


# ---------------------------------------------------------------------------
# admissibility and sampling


def _frac(rng: random.Random, lo: float, hi: float, den: int = 97) -> Fraction:
    return Fraction(rng.randint(math.ceil(lo * den), math.floor(hi * den)), den)


def _signed(rng, lo, hi):
    x = _frac(rng, lo, hi)
    return x if rng.random() < 0.5 else -x


def _lt1(*vals):
    return all(abs(v) < mpf("0.95") for v in vals)


def _s_generic(names, lo=0.15, hi=0.9):
    def sample(rng):
        pt = {"q": _frac(rng, 0.1, 0.5)}
        for v in names:
            pt[v] = _signed(rng, lo, hi)
        return pt

    return sample


def _adm_watson_lim(p):
    return None if _lt1(p["a"] * p["q"] / (p["d"] * p["e"])) else "|aq/de| must be < 1"


def _s_watson_lim(rng):
    pt = {"q": _frac(rng, 0.1, 0.5), "a": _signed(rng, 0.1, 0.6)}
    for v in "bcde":
        pt[v] = _signed(rng, 0.5, 2.0)
    return pt


def _adm_rahman(p):
    return None


def _s_cubic(rng):
    pt = {"q": _frac(rng, 0.1, 0.45)}
    pt["a"] = _signed(rng, 0.3, 0.9)
    pt["c"] = _signed(rng, 0.2, 0.9)
    pt["d"] = _signed(rng, 0.2, 0.9)
    return pt


def _adm_qdixon(p):
    if p["a"] <= 0:
        return "a must be positive"
    return None if _lt1(p["q"] * mpmath.sqrt(p["a"]) / (p["b"] * p["c"])) else "|q sqrt(a)/bc| must be < 1"


def _s_qdixon(rng):
    pt = {"q": _frac(rng, 0.1, 0.5), "a": _frac(rng, 0.1, 0.9)}
    pt["b"] = _signed(rng, 0.5, 2.0)
    pt["c"] = _signed(rng, 0.5, 2.0)
    return pt


def _adm_irs(p):
    q, a, b, c, d, e, f = (p[v] for v in "qabcdef")
    return None if _lt1(a * a * q * q / (b * c * d * e * f)) else "|a^2q^2/bcdef| must be < 1"


def _s_irs(rng):
    pt = {"q": _frac(rng, 0.1, 0.4), "a": _signed(rng, 0.2, 0.8)}
    for v in "bcdefgh":
        pt[v] = _signed(rng, 0.4, 1.6)
    return pt


def _adm_irs54(p):
    q, a, b, e, f = (p[v] for v in "qabef")
    return None if _lt1(a * q / (b * e * f)) else "|aq/bef| must be < 1"


def _s_irs54(rng):
    pt = {"q": _frac(rng, 0.1, 0.4), "a": _signed(rng, 0.2, 0.8)}
    for v in "bcefg":
        pt[v] = _signed(rng, 0.4, 1.6)
    return pt


def _adm_qb(p):
    return None if _lt1(p["q"] / p["b"]) else "|q/b| must be < 1"


def _s_qb(names):
    def sample(rng):
        pt = {"q": _frac(rng, 0.1, 0.5), "b": _signed(rng, 1.2, 3.0)}
        for v in names:
            pt[v] = _signed(rng, 0.2, 0.95)
        return pt

    return sample


def _s_cora3(rng):
    return {"q": _frac(rng, 0.1, 0.5), "a": _signed(rng, 0.1, 0.9), "c": _signed(rng, 0.2, 0.9)}


def _adm_9f8(p):
    if p["b"] >= mpf(3) / 4:
        return "b must be < 3/4"
    return None


def _s_9f8(rng):
    # keep 3 - 4b comfortably positive so the z = 1 series converge quickly
    return {"a": _frac(rng, 0.3, 2.5), "b": -_frac(rng, 0.2, 1.0), "c": _frac(rng, 0.2, 1.5), "d": _frac(rng, 0.2, 1.5)}


def _s_exact(names, allow_one=False):
    def sample(rng):
        vals = {}
        pool = [Fraction(n, d) for n in range(-9, 10) for d in range(2, 8) if n and math.gcd(n, d) == 1]
        pool += [Fraction(n) for n in (2, 3, 5, -2, -3, 7)]
        for v in names:
            vals[v] = rng.choice(pool)
        return vals

    return sample


# ---------------------------------------------------------------------------
# registry


@dataclass
class IdentitySpec:
    id: str
    anchor: str
    exact: Callable | None = None
    numeric: Callable | None = None
    exact_sampler: Callable | None = None
    numeric_sampler: Callable | None = None
    admissible: Callable | None = None
    exact_n: tuple = (0, 4)
    exact_n_filter: Callable[[int], bool] = lambda n: True
    note: str = ""

    @property
    def modes(self) -> tuple:
        return tuple(m for m, f in ((EXACT, self.exact), (NUMERIC, self.numeric)) if f is not None)

    def summary(self) -> dict:
        out = {"id": self.id, "anchor": self.anchor, "modes": list(self.modes)}
        if self.note:
            out["note"] = self.note
        return out


_IDS: dict[str, IdentitySpec] = {}


def _reg(spec: IdentitySpec):
    _IDS[spec.id] = spec


_reg(IdentitySpec("I-WATSON", "very-well-poised 8phi7 to balanced 4phi3 transformation, f = q^-n",
                  exact=_watson_exact, exact_sampler=_s_exact("abcde"), exact_n=(0, 4)))
_reg(IdentitySpec("I-WATSON-LIM", "f -> infinity limit of the 8phi7 transformation",
                  numeric=_n_watson_lim, numeric_sampler=_s_watson_lim, admissible=_adm_watson_lim))
_reg(IdentitySpec("I-RAHMAN-QUAD", "quadratic transformation with the (1-aq^3k) factor",
                  exact=_rahman_exact, exact_sampler=_s_exact("bcd"), exact_n=(3, 9),
                  exact_n_filter=lambda n: n % 2 == 1,
                  numeric=_n_rahman, numeric_sampler=_s_generic("abcd", 0.2, 0.8), admissible=_adm_rahman))
_reg(IdentitySpec("I-GR-CUBIC", "cubic transformation with the (1-acq^4k) factor",
                  numeric=_n_cubic, numeric_sampler=_s_cubic))
_reg(IdentitySpec("I-GR-QUARTIC", "quartic transformation with the (1-a^2b^2q^(5k-2)) factor",
                  numeric=_n_quartic, numeric_sampler=_s_generic("ab", 0.2, 0.8)))
_reg(IdentitySpec("I-GASPER-QSUM", "quartic summation with the (1-aq^5k) factor",
                  numeric=_n_gasper, numeric_sampler=_s_generic("ab", 0.2, 0.8)))
_reg(IdentitySpec("I-QDIXON", "q-Dixon 4phi3 sum",
                  exact=_qdixon_exact, exact_sampler=_s_exact(("s", "c")), exact_n=(0, 6),
                  numeric=_n_qdixon, numeric_sampler=_s_qdixon, admissible=_adm_qdixon))
_reg(IdentitySpec("I-IRS", "double series transformation with an inner terminating 4phi3",
                  numeric=_n_irs, numeric_sampler=_s_irs, admissible=_adm_irs,
                  note="a^2kq^2/bcdef in the second prefactor is read as a^2hq^2/bcdef, and the second 5phi4 "
                       "has upper parameter aq/de (balanced); with agq/de the identity fails"))
_reg(IdentitySpec("I-IRS54", "double series transformation with an inner terminating 3phi2",
                  numeric=_n_irs54, numeric_sampler=_s_irs54, admissible=_adm_irs54))
_reg(IdentitySpec("I-14PHI13", "two terminating very-well-poised 14phi13 series, a-hat = q^-n cd/ab",
                  exact=_fourteen_exact, exact_sampler=_s_exact("abcd"), exact_n=(0, 3)))
_reg(IdentitySpec("I-NEWTF", "nonterminating very-well-poised 12phi11 as two 4phi3 series",
                  numeric=_n_newtf, numeric_sampler=_s_qb("acd"), admissible=_adm_qb))
_reg(IdentitySpec("I-9F8", "q -> 1 limit: very-well-poised 9F8 as two 4F3 series with Gamma prefactors",
                  numeric=_n_9f8, numeric_sampler=_s_9f8, admissible=_adm_9f8))
_reg(IdentitySpec("I-CORA2", "nonterminating very-well-poised 12phi11 summation (d = a/c)",
                  numeric=_n_cora2, numeric_sampler=_s_qb("ac"), admissible=_adm_qb))
_reg(IdentitySpec("I-CORA3", "b = -1 case: symmetric two-term evaluation",
                  numeric=_n_cora3, numeric_sampler=_s_cora3))
_reg(IdentitySpec("I-CORA2B", "nonterminating very-well-poised 10phi9 transformation (d = aq/c)",
                  numeric=_n_cora2b, numeric_sampler=_s_qb("ac"), admissible=_adm_qb))
_reg(IdentitySpec("I-CORTF", "terminating 12phi11 to 4phi3 transformation",
                  exact=_cortf_exact, exact_sampler=_s_exact("abc"), exact_n=(0, 4)))


def list_identities() -> list[IdentitySpec]:
    return list(_IDS.values())


def get_identity(id: str) -> IdentitySpec:
    try:
        return _IDS[id]
    except KeyError:
        raise UnknownIdentity(id) from None


def _exact_one(spec: IdentitySpec, n: int, prm: dict) -> CheckResult:
    lhs, rhs = spec.exact(n, prm)
    return check_identity(lhs, rhs)


def _fmt_params(prm: dict) -> str:
    return ",".join(f"{k}={v}" for k, v in prm.items())


def _residual_result(lhs, rhs, tol) -> CheckResult:
    res = abs(lhs - rhs)
    digits = INF_DIGITS if res == 0 else max(0, int(-mpmath.log10(res)))
    need = int(round(-math.log10(float(tol))))
    ok = res <= tol
    return CheckResult(PASS if ok else FAIL, "" if ok else f"residual {mpmath.nstr(res, 5)} exceeds {mpmath.nstr(tol, 3)}",
                       [FactorDetail("residual digits", need, digits)])


INF_DIGITS = math.inf


def _to_mp(pt: dict) -> dict:
    return {k: mpf(v.numerator) / v.denominator if isinstance(v, Fraction) else mpmath.mpmathify(v) for k, v in pt.items()}


def numeric_points(spec: IdentitySpec, count: int, seed: int) -> list[dict]:
    rng = random.Random(f"{seed}:{spec.id}")
    pts = []
    tries = 0
    while len(pts) < count:
        tries += 1
        if tries > 1000 * count:
            raise Inadmissible(f"could not sample admissible points for {spec.id}")
        pt = spec.numeric_sampler(rng)
        if spec.admissible is not None:
            with mp.workprec(64):
                if spec.admissible(_to_mp(pt)):
                    continue
        pts.append(pt)
    return pts


def verify_identity(id: str, mode: str | None = None, *, n: int | None = None, samples: int = 3, points: int = 5,
                    point: dict | None = None, prec: int = DEFAULT_PREC, tol: float = DEFAULT_TOL,
                    seed: int = DEFAULT_SEED) -> CheckResult:
    """Check one identity, exactly (terminating instances) or numerically.

    Exact mode runs every n in the entry's default range (or just ``n``)
    against ``samples`` rational parameter tuples.  Numeric mode evaluates
    both sides at ``points`` seeded points (or at ``point``) with ``prec``
    bits and requires |LHS - RHS| <= tol.
    """
    spec = get_identity(id)
    mode = mode or spec.modes[0]
    if mode not in spec.modes:
        raise ValueError(f"{id} has no {mode} check (available: {', '.join(spec.modes)})")
    start = time.perf_counter()
    parts = []
    if mode == EXACT:
        ns = [n] if n is not None else [m for m in range(spec.exact_n[0], spec.exact_n[1] + 1) if spec.exact_n_filter(m)]
        rng = random.Random(f"{seed}:{spec.id}:exact")
        tuples = []
        while len(tuples) < samples:
            prm = spec.exact_sampler(rng)
            try:
                for m in ns:
                    spec.exact(m, prm)
            except (SingularTerm, ZeroDivisionError):
                continue
            tuples.append(prm)
        for prm in tuples:
            for m in ns:
                parts.append((f"n={m}; {_fmt_params(prm)}", _exact_one(spec, m, prm)))
    else:
        pts = [point] if point is not None else numeric_points(spec, points, seed)
        with mp.workprec(prec):
            for pt in pts:
                mpt = _to_mp(pt)
                if spec.admissible is not None:
                    why = spec.admissible(mpt)
                    if why:
                        raise Inadmissible(why)
                lhs, rhs = spec.numeric(mpt)
                parts.append((_fmt_params(pt), _residual_result(lhs, rhs, mpf(tol))))
    res = combine(parts)
    res.time_ms = (time.perf_counter() - start) * 1000.0
    return res


def cortf_via_newtf(n: int, prm: dict, q, prec: int = DEFAULT_PREC):
    """Both sides of the 12phi11 transformation at d = q^-n, numerically (second route to I-CORTF)."""
    with mp.workprec(prec):
        pt = _to_mp({**prm, "q": q})
        qv = pt["q"]
        a, b, c = pt["a"], pt["b"], pt["c"]
        d = qv ** (-n)
        lhs = _finite_sum_vwp12(qv, a, b, c, d, n)
        pre = _fin([a * qv, a * b / c], qv, n) / _fin([a * b, a * qv / c], qv, n)
        s = _finite_phi(lambda: ([b, c, c / a * qv ** (-n), qv ** (-n)],
                                 [c * qv / b, c * qv ** (1 - n) / (a * b), qv ** (1 - n) / b], +qv, (qv / b) ** 2), n)
        return lhs, pre * s


def _fin(xs, q, n):
    out = mpf(1)
    for x in xs:
        for j in range(n):
            out *= 1 - x * q**j
    return out


def _finite_sum_vwp12(q, a, b, c, d, n):
    term = NTerm(q, [(x, 1, 1, 1) for x in (a, b, c, d, a * b / c, a * b / d)] + [(a * q / b, 1, 2, 1)]
                 + [(x, 1, 1, -1) for x in (q, a * q / b, a * q / c, a * q / d, c * q / b, d * q / b)]
                 + [(a * b, 1, 2, -1)], q / b, vwp=((a, 2),))
    return sum(term.terms(n + 1))


# ---------------------------------------------------------------------------
# continuous q-ultraspherical polynomials (beta -> variable a, z -> variable b)


BETA, ZVAR = "a", "b"


def ultraspherical_C(n: int) -> FactoredRat:
    """z^n C_n(x; beta | q) with z = e^(i theta), as a rational function of beta (a), z (b) and q."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    beta = P(a=1)
    fs = [poch(beta), poch(beta, length=lambda k: n - k), poch(Q, 1, -1), poch(Q, 1, -1, length=lambda k: n - k),
          mono(P(b=2), exponent=lambda k: n - k)]
    return truncated_sum(Summand(fs), n)


def rogers_coefficient(m: int, n: int, k: int) -> FactoredRat:
    """Coefficient of C_(m+n-2k) in the linearization of C_m C_n."""
    beta = P(a=1)
    L = _fixed
    fs = [poch(Q, length=L(m + n - 2 * k)), poch(beta, length=L(m - k)), poch(beta, length=L(n - k)),
          poch(beta, length=L(k)), poch(P(a=2), length=L(m + n - k)),
          poch(P(a=2), 1, -1, length=L(m + n - 2 * k)), poch(Q, 1, -1, length=L(m - k)),
          poch(Q, 1, -1, length=L(n - k)), poch(Q, 1, -1, length=L(k)), poch(P(q=1, a=1), 1, -1, length=L(m + n - k)),
          binom_factor(lambda j: P(q=m + n - 2 * k, a=1)), binom_factor(lambda j: beta, -1)]
    return Summand(fs).term(0)


def verify_rogers_linearization(m: int, n: int) -> CheckResult:
    """C_m C_n against the linearization sum, as exact rational functions (both sides times z^(m+n))."""
    if m < 0 or n < 0:
        raise ValueError("degrees must be nonnegative")
    lhs = ultraspherical_C(m) * ultraspherical_C(n)
    terms = []
    for k in range(min(m, n) + 1):
        zpow = LaurentPoly.monomial((0, 0, 2 * k, 0, 0))
        terms.append(rogers_coefficient(m, n, k) * ultraspherical_C(m + n - 2 * k) * zpow)
    return check_identity(lhs, ratfunc_sum(terms))


def _qp_real(x, q, s):
    """(x; q)_s for real s (finite product when s is a nonnegative integer, reciprocal product when negative)."""
    if s == int(s):
        s = int(s)
        if s >= 0:
            return _fin([x], q, s)
        return 1 / _fin([x * q**s], q, -s)
    return _qinf(x, q) / _qinf(x * q**s, q)


def _inv_qp_real(x, q, s):
    if s == int(s):
        s = int(s)
        if s >= 0:
            return 1 / _fin([x], q, s)
        return _fin([x * q**s], q, -s)
    return _qinf(x * q**s, q) / _qinf(x, q)


def F_coeff(nu, k: int, beta, q):
    """Coefficient of z^(2k) in F_nu(z; beta | q)."""
    inv = _inv_qp_real(q, q, k) * _inv_qp_real(q, q, nu - k)
    if inv == 0:
        return inv
    return inv * _qp_real(beta, q, k) * _qp_real(beta, q, nu - k)


def linearF_coefficient(mu, nu, k: int, beta, q):
    """Coefficient of z^(2k) F_(mu+nu-2k) in the linearization of F_mu F_nu."""
    s = mu + nu
    inv = (_inv_qp_real(beta * beta, q, s - 2 * k) * _inv_qp_real(q, q, mu - k) * _inv_qp_real(q, q, nu - k)
           * _inv_qp_real(q, q, k) * _inv_qp_real(q * beta, q, s - k))
    if inv == 0:
        # integer degrees: the sum stops at min(mu, nu)
        return inv
    return (inv * _qp_real(q, q, s - 2 * k) * _qp_real(beta, q, mu - k) * _qp_real(beta, q, nu - k)
            * _qp_real(beta, q, k) * _qp_real(beta * beta, q, s - k) * (1 - beta * q ** (s - 2 * k)) / (1 - beta))


def verify_linearF(mu, nu, point: dict, order: int = 10, prec: int = DEFAULT_PREC, tol: float = DEFAULT_TOL) -> CheckResult:
    """Compare F_mu F_nu with the generalized linearization sum coefficientwise up to z^(2 order)."""
    start = time.perf_counter()
    with mp.workprec(prec):
        z, beta, q = (mpmath.mpmathify(point[v]) for v in ("z", "beta", "q"))
        mu, nu = mpmath.mpmathify(mu), mpmath.mpmathify(nu)
        if not abs(q) < 1:
            raise Inadmissible("|q| must be < 1")
        if not abs(q * z * z / beta) < 1:
            raise Inadmissible("|q z^2 / beta| must be < 1")
        worst = mpf(0)
        for j in range(order + 1):
            left = sum(F_coeff(mu, i, beta, q) * F_coeff(nu, j - i, beta, q) for i in range(j + 1))
            right = sum(linearF_coefficient(mu, nu, k, beta, q) * F_coeff(mu + nu - 2 * k, j - k, beta, q)
                        for k in range(j + 1))
            err = abs(left - right) / max(1, abs(left))
            worst = max(worst, err)
        res = _residual_result(worst, 0, mpf(tol))
    res.time_ms = (time.perf_counter() - start) * 1000.0
    return res


__all__ = [
    "EXACT",
    "NUMERIC",
    "GEOMETRIC",
    "IdentitySpec",
    "Inadmissible",
    "PrecisionExhausted",
    "TailBound",
    "UnknownIdentity",
    "cortf_via_newtf",
    "irs_unbalanced_residual",
    "get_identity",
    "list_identities",
    "numeric_points",
    "rogers_coefficient",
    "ultraspherical_C",
    "verify_identity",
    "verify_linearF",
    "verify_rogers_linearization",
]
