from fractions import Fraction

from hypothesis import given, strategies as st

from qcong.congruence import FAIL, INF, PASS, SKIPPED, CheckResult, check_congruent, check_identity, check_zero, combine
from qcong.exact_core import (
    AMinusQn,
    Cyclotomic,
    CyclotomicNeg,
    FactoredRat,
    LaurentPoly,
    Modulus,
    MultiPoly,
    OneMinusAQn,
    QInteger,
    cyclotomic_q,
    qint_q,
)
from qcong.qseries import P, qbinomial


def fr_q(coeffs) -> FactoredRat:
    return FactoredRat(LaurentPoly.from_poly(MultiPoly.from_q(coeffs)))


def fr_poly(p: MultiPoly) -> FactoredRat:
    return FactoredRat(LaurentPoly.from_poly(p))


def test_qinteger_modulus_expands_to_cyclotomics():
    m = Modulus([(QInteger(12), 1), (Cyclotomic(12), 1)])
    assert [(str(f), e) for f, e in m.expanded()] == [
        ("Phi_2(q)", 1), ("Phi_3(q)", 1), ("Phi_4(q)", 1), ("Phi_6(q)", 1), ("Phi_12(q)", 2)]


def test_cyclotomic_neg():
    # Phi_3(-q) = q^2 - q + 1 = Phi_6(q)
    r = check_zero(fr_q(cyclotomic_q(6)), Modulus([(CyclotomicNeg(3), 1)]))
    assert r.verdict == PASS


def test_known_true_and_false():
    n = 7
    qb = qbinomial(2 * n - 1, n - 1)
    # [2n-1, n-1] = 1 mod [n]^2 fails, mod [n] holds ... at the level of Phi_n
    one = FactoredRat.one()
    assert check_congruent(qb, one, Modulus([(Cyclotomic(n), 1)])).verdict == PASS
    r = check_congruent(qb, one, Modulus([(Cyclotomic(n), 3)]))
    assert r.verdict == FAIL
    assert r.detail[0].achieved == 1


def test_identity_gives_infinite_valuation():
    x = fr_q(qint_q(5))
    r = check_congruent(x, x, Modulus([(Cyclotomic(5), 4)]))
    assert r.verdict == PASS and r.detail[0].achieved == INF
    assert check_identity(x, x).verdict == PASS
    assert check_identity(x, fr_q([1])).verdict == FAIL


def test_mixed_factors():
    a = MultiPoly.var("a")
    q3 = MultiPoly.from_q([0, 0, 0, 1])
    x = (MultiPoly.one() - a * q3) * (a - q3) * MultiPoly.from_q([1, 1])
    m = Modulus([(OneMinusAQn(3), 1), (AMinusQn(3), 1)])
    assert check_zero(fr_poly(x), m).verdict == PASS
    y = (MultiPoly.one() - a * q3) * MultiPoly.from_q([1, 1])
    r = check_zero(fr_poly(y), m)
    assert r.verdict == FAIL
    assert [d.achieved for d in r.detail] == [1, 0]
    assert check_zero(fr_poly(x), Modulus([(OneMinusAQn(3), 2)])).verdict == SKIPPED


def test_denominator_factor_lowers_valuation():
    num = fr_q(cyclotomic_q(5)) ** 2
    den = qbinomial(5, 1)  # [5] = Phi_5
    inv = FactoredRat(num.num, {atom: m for atom, m in den.den.items()})
    # [5] = (1 - q^5)/(1 - q); dividing by its numerator-free form keeps Phi_5^2 in the numerator
    r = check_zero(inv, Modulus([(Cyclotomic(5), 2)]))
    assert r.verdict == PASS


def test_combine():
    p, f, s = CheckResult(PASS), CheckResult(FAIL, "bad"), CheckResult.skipped("domain")
    assert combine([("x", p), ("y", s)]).verdict == PASS
    c = combine([("x", p), ("y", f)])
    assert c.verdict == FAIL and "y: bad" in c.reason
    assert combine([("x", s)]).verdict == SKIPPED
    assert combine([]).verdict == SKIPPED


small = st.lists(st.integers(-4, 4), min_size=1, max_size=6)


@given(small, small, st.integers(2, 12), st.integers(1, 3))
def test_adding_multiple_of_modulus_keeps_verdict(a, b, n, e):
    m = Modulus([(Cyclotomic(n), e)])
    A, B = fr_q(a), fr_q(b)
    base = check_congruent(A, B, m).verdict
    shifted = A + fr_q(cyclotomic_q(n) ** e) * fr_q(b)
    assert check_congruent(shifted, B, m).verdict == base


@given(small, st.integers(2, 10))
def test_multiple_of_modulus_is_zero(a, n):
    x = fr_q(a) * fr_q(cyclotomic_q(n) ** 2)
    assert check_zero(x, Modulus([(Cyclotomic(n), 2)])).verdict == PASS


@given(st.fractions(-3, 3, max_denominator=4))
def test_rational_constant_mod_cyclotomic(c):
    r = check_zero(fr_q([c]), Modulus([(Cyclotomic(3), 1)]))
    assert r.verdict == (PASS if c == 0 else FAIL)


def test_worked_examples():
    from qcong.theorems import check_statement

    q3 = fr_q(qint_q(3))
    assert check_zero(q3 * q3, Modulus([(Cyclotomic(3), 2)])).verdict == PASS
    assert check_zero(fr_q([1, 1]), Modulus([(Cyclotomic(3), 1)])).verdict == FAIL
    assert check_zero(fr_q(cyclotomic_q(5) * cyclotomic_q(2)), Modulus([(Cyclotomic(5), 1)])).verdict == PASS
    assert check_statement("S-FIRST-HALF", 3).verdict == PASS
    assert check_statement("S-FOURTH", 2, family=3).verdict == PASS
    assert check_statement("S-6TH", 5).verdict == PASS


def resultant_divides(num_coeffs, d):
    import sympy

    q = sympy.Symbol("q")
    num = sum(sympy.Rational(c) * q**i for i, c in enumerate(num_coeffs))
    if num == 0:
        return True
    return sympy.resultant(num, sympy.cyclotomic_poly(d, q), q) == 0


@given(small, small, st.integers(2, 9), st.integers(0, 2))
def test_agrees_with_resultant_oracle(a, b, d, k):
    # multiply by a random power of Phi_d so both outcomes occur
    A = fr_q(a) * fr_q(cyclotomic_q(d) ** k)
    B = fr_q(b)
    diff = [x - y for x, y in zip(a + [0] * 20, b + [0] * 20)]
    ours = check_congruent(fr_q(a), B, Modulus([(Cyclotomic(d), 1)])).verdict == PASS
    assert ours == resultant_divides(diff, d)
    assert check_congruent(A, B, Modulus([(Cyclotomic(d), 1)])).verdict == check_congruent(B, A, Modulus([(Cyclotomic(d), 1)])).verdict


@given(small, st.integers(2, 12))
def test_qinteger_equals_all_divisor_factors(a, n):
    from qcong.exact_core import divisors

    x = fr_q(a) * fr_q(qint_q(n))
    y = fr_q(a)
    for A in (x, y):
        whole = check_zero(A, Modulus([(QInteger(n), 1)])).verdict
        parts = all(check_zero(A, Modulus([(Cyclotomic(d), 1)])).verdict == PASS for d in divisors(n) if d > 1)
        assert (whole == PASS) == parts


@given(small, st.integers(2, 8), st.integers(0, 3))
def test_exponent_monotone(a, d, k):
    A = fr_q(a) * fr_q(cyclotomic_q(d) ** k)
    verdicts = [check_zero(A, Modulus([(Cyclotomic(d), e)])).verdict for e in range(1, 5)]
    seen_fail = False
    for v in verdicts:
        if v == FAIL:
            seen_fail = True
        assert not (seen_fail and v == PASS)
