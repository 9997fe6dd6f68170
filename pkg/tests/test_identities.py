from fractions import Fraction

import mpmath
import pytest
from mpmath import mpf

from qcong.congruence import FAIL, PASS, check_identity
from qcong.identities import (
    EXACT,
    NUMERIC,
    UnknownIdentity,
    cortf_via_newtf,
    get_identity,
    irs_unbalanced_residual,
    list_identities,
    numeric_points,
    rogers_coefficient,
    ultraspherical_C,
    verify_identity,
    verify_linearF,
    verify_rogers_linearization,
)
from qcong.numeric import Inadmissible


def brute_poch(x, q, k):
    out = Fraction(1)
    for j in range(k):
        out *= 1 - x * q**j
    return out


def brute_watson(a, b, c, d, e, n, q):
    """Both sides of the terminating 8phi7 -> 4phi3 transformation by direct rational arithmetic."""
    f = q**-n
    lhs = Fraction(0)
    for k in range(n + 1):
        num = brute_poch(a, q, k) * brute_poch(b, q, k) * brute_poch(c, q, k) * brute_poch(d, q, k) \
            * brute_poch(e, q, k) * brute_poch(f, q, k)
        den = brute_poch(q, q, k)
        for x in (b, c, d, e, f):
            den *= brute_poch(a * q / x, q, k)
        lhs += (1 - a * q ** (2 * k)) / (1 - a) * num / den * (a * a * q * q / (b * c * d * e * f)) ** k
    inner = Fraction(0)
    for k in range(n + 1):
        num = brute_poch(a * q / (b * c), q, k) * brute_poch(d, q, k) * brute_poch(e, q, k) * brute_poch(f, q, k)
        den = brute_poch(q, q, k) * brute_poch(a * q / b, q, k) * brute_poch(a * q / c, q, k) \
            * brute_poch(d * e * f / a, q, k)
        inner += num / den * q**k
    pre = brute_poch(a * q, q, n) * brute_poch(a * q / (d * e), q, n) / (
        brute_poch(a * q / d, q, n) * brute_poch(a * q / e, q, n))
    return lhs, pre * inner


def test_registry():
    ids = {s.id for s in list_identities()}
    assert {"I-WATSON", "I-NEWTF", "I-9F8", "I-CORTF", "I-IRS", "I-IRS54"} <= ids
    for s in list_identities():
        assert s.modes
        assert s.summary()["id"] == s.id
    with pytest.raises(UnknownIdentity):
        get_identity("I-NOPE")
    with pytest.raises(ValueError):
        verify_identity("I-WATSON", NUMERIC)


def test_watson_worked_example():
    prm = dict(zip("abcde", (Fraction(2, 3), Fraction(5), Fraction(7, 2), Fraction(1, 5), Fraction(3))))
    lhs, rhs = get_identity("I-WATSON").exact(2, prm)
    assert check_identity(lhs, rhs).verdict == PASS
    for qv in (Fraction(1, 3), Fraction(-5, 2)):
        bl, br = brute_watson(*prm.values(), 2, qv)
        assert bl == br
        assert lhs.evaluate({"q": qv}) == bl


def test_watson_detects_perturbation():
    prm = dict(zip("abcde", (Fraction(2, 3), Fraction(5), Fraction(7, 2), Fraction(1, 5), Fraction(3))))
    lhs, rhs = get_identity("I-WATSON").exact(2, prm)
    assert check_identity(lhs, rhs * Fraction(1001, 1000)).verdict == FAIL


def test_upper_parameter_one_collapses():
    prm = dict(zip("abcde", (Fraction(2, 3), Fraction(1), Fraction(7, 2), Fraction(1, 5), Fraction(3))))
    lhs, rhs = get_identity("I-WATSON").exact(3, prm)
    assert lhs.evaluate({"q": Fraction(1, 3)}) == 1
    assert check_identity(lhs, rhs).verdict == PASS


@pytest.mark.parametrize("iid", ["I-QDIXON", "I-RAHMAN-QUAD"])
def test_other_exact(iid):
    assert verify_identity(iid, EXACT, samples=2).verdict == PASS


def test_newtf_worked_example():
    pt = {"q": mpf("0.3"), "b": mpf("2.5"), "a": mpf("0.45"), "c": mpf("0.7"), "d": mpf("0.9")}
    r = verify_identity("I-NEWTF", NUMERIC, point=pt, prec=256, tol=1e-25)
    assert r.verdict == PASS
    assert r.detail[0].achieved >= 25


def test_numeric_points_are_seeded():
    spec = get_identity("I-NEWTF")
    assert numeric_points(spec, 3, 1) == numeric_points(spec, 3, 1)
    assert numeric_points(spec, 3, 1) != numeric_points(spec, 3, 2)


def test_inadmissible_point_is_rejected():
    pt = {"q": mpf("0.3"), "b": mpf("0.2"), "a": mpf("0.45"), "c": mpf("0.7"), "d": mpf("0.9")}
    with pytest.raises(Inadmissible):
        verify_identity("I-NEWTF", NUMERIC, point=pt)


@pytest.mark.parametrize("iid", ["I-WATSON-LIM", "I-GR-QUARTIC", "I-CORA3"])
def test_numeric_single_point(iid):
    assert verify_identity(iid, NUMERIC, points=1).verdict == PASS


def test_unbalanced_irs_form_fails():
    spec = get_identity("I-IRS")
    pt = numeric_points(spec, 1, 20181)[0]
    assert irs_unbalanced_residual(pt) > mpf("1e-10")


@pytest.mark.parametrize("n", range(0, 5))
def test_cortf_two_routes_agree(n):
    prm = {"a": Fraction(2, 3), "b": Fraction(5, 2), "c": Fraction(1, 7)}
    q = Fraction(1, 3)
    lhs, rhs = get_identity("I-CORTF").exact(n, prm)
    exact = lhs.evaluate({"q": q})
    assert exact == rhs.evaluate({"q": q})
    with mpmath.workprec(256):
        nl, nr = cortf_via_newtf(n, prm, q)
        ref = mpf(exact.numerator) / exact.denominator
        assert abs(nl - ref) <= mpf("1e-40") * max(1, abs(ref))
        assert abs(nr - ref) <= mpf("1e-40") * max(1, abs(ref))


def test_ultraspherical_small_cases():
    pt = {"q": Fraction(1, 3), "a": Fraction(2, 5), "b": Fraction(3, 2)}
    assert ultraspherical_C(0).evaluate(pt) == 1
    q, beta, z = pt["q"], pt["a"], pt["b"]
    assert ultraspherical_C(1).evaluate(pt) == (1 - beta) / (1 - q) * (1 + z * z)
    # beta = q: all ratios are 1
    pt["a"] = pt["q"]
    for n in range(5):
        assert ultraspherical_C(n).evaluate(pt) == sum(z ** (2 * j) for j in range(n + 1))


def test_rogers_trivial_case():
    for n in range(4):
        assert rogers_coefficient(0, n, 0).evaluate({"q": Fraction(1, 3), "a": Fraction(2, 5)}) == 1


@pytest.mark.parametrize("m,n", [(0, 3), (1, 1), (3, 2), (2, 4)])
def test_rogers_linearization(m, n):
    assert verify_rogers_linearization(m, n).verdict == PASS


def test_linearF_integer_degrees_and_zero_z():
    pt = {"z": mpf("0.4"), "beta": mpf("0.3"), "q": mpf("0.2")}
    assert verify_linearF(2, 3, pt).verdict == PASS
    assert verify_linearF(2, 3, {**pt, "z": 0}).verdict == PASS


def test_linearF_fractional():
    pt = {"z": mpf("0.5"), "beta": mpf("0.3"), "q": mpf("0.2")}
    r = verify_linearF(mpf("0.5"), mpf("1.25"), pt, order=10, tol=1e-20)
    assert r.verdict == PASS


def test_linearF_detects_wrong_coefficient():
    from qcong import identities

    pt = {"z": mpf("0.5"), "beta": mpf("0.3"), "q": mpf("0.2")}
    orig = identities.linearF_coefficient
    try:
        identities.linearF_coefficient = lambda mu, nu, k, b, q: orig(mu, nu, k, b, q) * (1 + mpf("1e-6") * k)
        assert verify_linearF(mpf("0.5"), mpf("1.25"), pt, order=6).verdict == FAIL
    finally:
        identities.linearF_coefficient = orig
