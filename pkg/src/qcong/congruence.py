"""The congruence relation A = B (mod P) for factored rational functions.

A = B (mod P) means P divides the numerator of the reduced form of A - B.
The reduced form is never computed.  For a cyclotomic factor Phi_d the
check compares valuations: the numerator's valuation minus the multiplicity
of Phi_d in the denominator atoms (known in closed form).  Parameter
factors such as 1 - a q^n are decided by substituting the root a = q^-n;
denominator atoms involving a are coprime to them unless they vanish there
too, which is reported as an error rather than guessed around.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

from .exact_core import (
    FactoredRat,
    LaurentPoly,
    ModFactor,
    Modulus,
    cyclotomic_q,
    q_valuation,
    ratfunc_sum,
    substitute_a,
)

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"
INF = math.inf


class NonCoprimeDenominator(ArithmeticError):
    """A denominator atom shares a root with a parameter modulus factor."""


class ZeroDenominator(ZeroDivisionError):
    """A denominator atom is identically zero."""


@dataclass
class FactorDetail:
    factor: str
    required: int
    achieved: float  # int, or INF when A - B vanishes identically

    def as_dict(self) -> dict:
        ach = "inf" if self.achieved == INF else int(self.achieved)
        return {"factor": self.factor, "required": self.required, "achieved": ach}


@dataclass
class CheckResult:
    verdict: str
    reason: str = ""
    detail: list[FactorDetail] = field(default_factory=list)
    time_ms: float = 0.0

    @property
    def passed(self) -> bool:
        return self.verdict == PASS

    @staticmethod
    def skipped(reason: str) -> CheckResult:
        return CheckResult(SKIPPED, reason)

    def __str__(self) -> str:
        s = self.verdict.upper()
        return f"{s} ({self.reason})" if self.reason else s


def combine(results: list[tuple[str, CheckResult]]) -> CheckResult:
    """Merge labelled sub-results: any fail fails, all skipped skips, else pass."""
    detail: list[FactorDetail] = []
    elapsed = 0.0
    verdicts = []
    reasons = []
    for label, r in results:
        verdicts.append(r.verdict)
        elapsed += r.time_ms
        prefix = f"{label}: " if label else ""
        detail.extend(FactorDetail(prefix + d.factor, d.required, d.achieved) for d in r.detail)
        if r.reason and r.verdict != PASS:
            reasons.append((r.verdict, prefix + r.reason))
    if not verdicts:
        return CheckResult(SKIPPED, "no instances", [], 0.0)
    if FAIL in verdicts:
        verdict = FAIL
    elif all(v == SKIPPED for v in verdicts):
        verdict = SKIPPED
    else:
        verdict = PASS
    if verdict == SKIPPED:
        reason = reasons[0][1] if reasons else ""
    elif verdict == FAIL:
        reason = "; ".join(r for v, r in reasons if v == FAIL)
    else:
        reason = ""
    return CheckResult(verdict, reason, detail, elapsed)


def _denominator_multiplicity(fr: FactoredRat, d: int) -> int:
    return sum(atom.cyclotomic_multiplicity(d) * m for atom, m in fr.den.items())


def _roots_for(f: ModFactor) -> list[LaurentPoly]:
    """Values of a that make the parameter factor vanish."""
    n = f.n
    if f.kind == "one_minus_aqn":
        return [LaurentPoly.q_power(-n)]
    if f.kind == "a_minus_qn":
        return [LaurentPoly.q_power(n)]
    if f.kind == "one_minus_a2q2n":
        return [LaurentPoly.q_power(-n), LaurentPoly.q_power(-n, -1)]
    raise ValueError(f"{f} is not a parameter factor")


def _mixed_achieved(diff: FactoredRat, f: ModFactor) -> int:
    roots = _roots_for(f)
    for atom in diff.den:
        if "a" not in atom.poly().variables():
            continue
        for r in roots:
            if substitute_a(atom.poly(), r).is_zero():
                raise NonCoprimeDenominator(f"denominator atom {atom} vanishes on {f}")
    for r in roots:
        if not substitute_a(diff.num, r).is_zero():
            return 0
    return 1


def check_zero(A: FactoredRat, m: Modulus) -> CheckResult:
    """Is A = 0 modulo m?"""
    return _check(A, m)


def check_congruent(A: FactoredRat, B: FactoredRat, m: Modulus) -> CheckResult:
    """Is A = B modulo m?"""
    start = time.perf_counter()
    diff = ratfunc_sum([A, -B])
    res = _check(diff, m)
    res.time_ms = (time.perf_counter() - start) * 1000.0
    return res


def check_identity(A: FactoredRat, B: FactoredRat) -> CheckResult:
    """Is A = B exactly, as rational functions?"""
    start = time.perf_counter()
    diff = ratfunc_sum([A, -B])
    zero = diff.num.is_zero()
    detail = [FactorDetail("exact", 1, INF if zero else 0)]
    res = CheckResult(PASS if zero else FAIL, "" if zero else "difference is nonzero", detail)
    res.time_ms = (time.perf_counter() - start) * 1000.0
    return res


def _check(diff: FactoredRat, m: Modulus) -> CheckResult:
    start = time.perf_counter()
    expanded = m.expanded()
    for f, e in expanded:
        if f.is_mixed() and e > 1:
            return CheckResult(SKIPPED, f"exponent {e} on {f} is not supported", [], 0.0)
    for atom in diff.den:
        if atom.poly().is_zero():
            raise ZeroDenominator(f"atom {atom} is identically zero")
    detail = []
    zero = diff.num.is_zero()
    for f, e in expanded:
        if zero:
            achieved = INF
        elif f.kind == "cyclotomic":
            dv = _denominator_multiplicity(diff, f.n)
            achieved = q_valuation(diff.num.poly, cyclotomic_q(f.n)) - dv
        else:
            achieved = _mixed_achieved(diff, f)
        detail.append(FactorDetail(str(f), e, achieved))
    verdict = PASS if all(d.achieved >= d.required for d in detail) else FAIL
    return CheckResult(verdict, "", detail, (time.perf_counter() - start) * 1000.0)
