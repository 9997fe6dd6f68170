import mpmath
import pytest
from hypothesis import given, strategies as st
from mpmath import mp, mpf

from qcong.numeric import (
    DEFAULT_PREC,
    Inadmissible,
    PoleAtNonpositiveInteger,
    PrecisionExhausted,
    gamma_real,
    hyper_value,
    phi,
    qpoch,
    qpoch_inf,
    qpoch_infinite,
    series_eval,
)


@pytest.fixture(autouse=True)
def _prec():
    with mp.workprec(DEFAULT_PREC):
        yield


def close(x, y, digits=60):
    return abs(x - y) <= mpf(10) ** -digits * max(1, abs(y))


@pytest.mark.parametrize("x,q", [("0.3", "0.5"), ("-0.7", "0.2"), ("2.5", "-0.6"), ("0.9", "0.9")])
def test_qpoch_inf_matches_mpmath(x, q):
    got, tb = qpoch_infinite(mpf(x), mpf(q), tol=mpf(10) ** -70)
    assert close(got, mpmath.qp(mpf(x), mpf(q)))
    assert tb.bound <= mpf(10) ** -70


def test_qpoch_finite_and_general_index_agree():
    q = mpf("0.4")
    assert close(qpoch(mpf("0.3"), q, 5), mpmath.qp(mpf("0.3"), q, 5))
    # (x; q)_k for real k via the product quotient
    assert close(qpoch(mpf("0.3"), q, mpf(5)), qpoch(mpf("0.3"), q, 5), 24)


def test_qpoch_inf_rejects_unit_q():
    with pytest.raises(Inadmissible):
        qpoch_inf(mpf("0.5"), mpf(1))


@pytest.mark.parametrize("upper,lower,z", [
    (["0.3", "0.5"], ["0.7"], "0.25"),
    (["-0.4"], [], "0.6"),
    (["0.2", "0.3", "0.4"], ["0.6", "-0.5"], "0.1"),
])
def test_phi_matches_qhyper(upper, lower, z):
    q = mpf("0.35")
    u, l = [mpf(x) for x in upper], [mpf(x) for x in lower]
    got, tb = phi(u, l, q, mpf(z), tol=mpf(10) ** -60)
    assert close(got, mpmath.qhyper(u, l, q, mpf(z)), 55)


def test_q_gauss_sum():
    # 2phi1(a, b; c; q, c/(ab)) = (c/a, c/b; q)_inf / (c, c/(ab); q)_inf
    a, b, c, q = mpf("0.5"), mpf("-0.8"), mpf("0.15"), mpf("0.6")
    z = c / (a * b)
    got = phi([a, b], [c], q, z, tol=mpf(10) ** -40)[0]
    t = mpf(10) ** -45
    ref = qpoch_inf(c / a, q, t) * qpoch_inf(c / b, q, t) / (qpoch_inf(c, q, t) * qpoch_inf(z, q, t))
    assert close(got, ref, 35)


def test_phi_inadmissible_argument():
    with pytest.raises(Inadmissible):
        phi([mpf("0.3"), mpf("0.2")], [mpf("0.4")], mpf("0.5"), mpf(2))


def test_series_eval_terminates_on_zero_term():
    total, tb = series_eval(1, lambda k: mpf(3 - k) / (k + 1))
    assert total == 8 and tb.bound == 0


def test_series_eval_reports_divergence():
    with pytest.raises(PrecisionExhausted):
        series_eval(1, lambda k: mpf(1), max_terms=200)


@given(st.floats(min_value=0.05, max_value=60).filter(lambda x: abs(x - round(x)) > 1e-6 or x >= 1))
def test_gamma_real_matches_mpmath(x):
    x = mpf(x)
    assert close(gamma_real(x), mpmath.gamma(x), 70)


@given(st.floats(min_value=-20, max_value=-0.01).filter(lambda x: abs(x - round(x)) > 1e-3))
def test_gamma_real_negative(x):
    x = mpf(x)
    assert close(gamma_real(x), mpmath.gamma(x), 60)


def test_gamma_reflection_quarter():
    assert close(gamma_real(mpf(1) / 4) * gamma_real(mpf(3) / 4), mp.pi * mpmath.sqrt(2), 70)
    assert close(gamma_real(mpf(1) / 2) ** 2, mp.pi, 70)


@pytest.mark.parametrize("x", [0, -1, -7])
def test_gamma_pole(x):
    with pytest.raises(PoleAtNonpositiveInteger):
        gamma_real(x)


def test_hyper_value_gauss():
    a, b, c = mpf("0.25"), mpf("-0.5"), mpf("1.75")
    ref = gamma_real(c) * gamma_real(c - a - b) / (gamma_real(c - a) * gamma_real(c - b))
    assert close(hyper_value([a, b], [c], 1), ref, 60)


def test_euler_function_pentagonal():
    q = mpf("0.5")
    ref = mpf(0)
    for k in range(-40, 41):
        ref += (-1) ** (k % 2) * q ** (k * (3 * k - 1) // 2)
    assert close(qpoch_inf(q, q, mpf(10) ** -70), ref, 65)


def test_product_split():
    q = mpf("0.37")
    t = mpf(10) ** -70
    assert close(qpoch_inf(q * q, q * q, t) * qpoch_inf(q, q * q, t), qpoch_inf(q, q, t), 65)


@given(st.floats(-0.95, 0.95), st.floats(-0.9, 0.9).filter(lambda v: abs(v) > 0.01))
def test_qpoch_shift(x, q):
    x, q = mpf(x), mpf(q)
    if abs(1 - x) < mpf("1e-3"):
        return
    t = mpf(10) ** -60
    assert close(qpoch_inf(x, q, t) / (1 - x), qpoch_inf(x * q, q, t), 55)


def test_upper_one_is_exactly_one():
    got, tb = phi([mpf(1), mpf("0.3")], [mpf("0.5")], mpf("0.4"), mpf("0.2"))
    assert got == 1 and tb.bound == 0


def test_terminating_series_matches_exact():
    from fractions import Fraction

    from qcong.qseries import P, SeriesSpec, truncated_sum

    n = 5
    spec = SeriesSpec([P(q=-n), P(a=1), P(b=1)], [P(c=1), P(d=1)], argument=P(q=1))
    pt = {"q": Fraction(2, 5), "a": Fraction(3, 4), "b": Fraction(-7, 3), "c": Fraction(1, 6), "d": Fraction(7, 2)}
    exact = truncated_sum(spec, n).evaluate(pt)
    m = {k: mpf(v.numerator) / v.denominator for k, v in pt.items()}
    got = phi([m["q"] ** -n, m["a"], m["b"]], [m["c"], m["d"]], m["q"], m["q"])[0]
    ref = mpf(exact.numerator) / exact.denominator
    assert abs(got - ref) <= abs(ref) * mpf(2) ** -(DEFAULT_PREC // 4)


def test_gamma_small_values():
    assert gamma_real(1) == 1 or close(gamma_real(1), mpf(1), 75)
    assert close(gamma_real(mpf(1) / 2), mpmath.sqrt(mp.pi), 75)
