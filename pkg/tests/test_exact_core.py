from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from qcong.exact_core import (
    FactoredRat,
    LaurentPoly,
    MultiPoly,
    NotDivisible,
    cyclotomic_q,
    divisors,
    kronecker_symbol,
    mobius,
    poly_exact_div,
    q_valuation,
    qint_q,
    ratfunc_sum,
    valuation,
    cyclotomic,
)

Q = sympy.Symbol("q")


@pytest.mark.parametrize("n", list(range(1, 61)) + [105, 210])
def test_cyclotomic_matches_sympy(n):
    ref = sympy.Poly(sympy.cyclotomic_poly(n, Q), Q).all_coeffs()[::-1]
    got = [int(c) for c in cyclotomic_q(n).coeffs()]
    assert got == [int(c) for c in ref]


@pytest.mark.parametrize("n", range(1, 40))
def test_qint_is_product_of_cyclotomics(n):
    prod = cyclotomic_q(1) ** 0
    for d in divisors(n):
        if d > 1:
            prod *= cyclotomic_q(d)
    assert prod == qint_q(n)


def test_mobius_small():
    assert [mobius(n) for n in range(1, 13)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]


@given(st.integers(-200, 200), st.integers(1, 199).filter(lambda n: n % 2))
def test_kronecker_matches_jacobi_for_odd(a, n):
    assert kronecker_symbol(a, n) == sympy.jacobi_symbol(a, n)


@pytest.mark.parametrize("a,n,expected", [(3, 2, -1), (1, 2, 1), (2, 2, 0), (-1, -1, -1), (5, 8, -1), (7, 8, 1), (0, 1, 1)])
def test_kronecker_even_and_negative(a, n, expected):
    assert kronecker_symbol(a, n) == expected


coef = st.fractions(min_value=-5, max_value=5, max_denominator=7)
exps = st.tuples(*[st.integers(0, 3) for _ in range(5)])
polys = st.dictionaries(exps, coef, max_size=5).map(MultiPoly.from_terms)


@given(polys, polys, polys)
def test_ring_laws(x, y, z):
    assert x + y == y + x
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x - x == MultiPoly.zero()


@given(polys, polys, st.fractions(-3, 3, max_denominator=5), st.fractions(-3, 3, max_denominator=5))
def test_evaluate_is_a_homomorphism(x, y, qv, av):
    pt = {"q": qv, "a": av, "b": Fraction(2), "c": Fraction(-1, 3), "d": Fraction(5, 2)}
    assert (x * y).evaluate(pt) == x.evaluate(pt) * y.evaluate(pt)
    assert (x + y).evaluate(pt) == x.evaluate(pt) + y.evaluate(pt)


@given(polys, polys.filter(lambda p: not p.is_zero()))
def test_exact_division_roundtrip(x, y):
    assert poly_exact_div(x * y, y) == x


def test_exact_division_rejects_remainder():
    with pytest.raises(NotDivisible):
        poly_exact_div(MultiPoly.from_q([1, 0, 1]), MultiPoly.from_q([1, 1]))


@pytest.mark.parametrize("d,k", [(3, 1), (5, 3), (6, 2), (12, 4)])
def test_valuation_counts_multiplicity(d, k):
    p = MultiPoly.from_q(cyclotomic_q(d)) ** k * MultiPoly.from_q([2, 1])
    assert valuation(p, cyclotomic(d)) == k
    assert q_valuation(p, cyclotomic_q(d)) == k


def test_laurent_negative_powers():
    x = LaurentPoly.q_power(-3, 2) + LaurentPoly.q_power(2)
    assert x.evaluate({"q": Fraction(2)}) == Fraction(2, 8) + 4
    assert (x * LaurentPoly.q_power(3)).to_poly() == MultiPoly.from_q([2, 0, 0, 0, 0, 1])


def test_factored_rat_sum_and_evaluate():
    from qcong.qseries import P, qbinomial

    s = ratfunc_sum(qbinomial(5, k) for k in range(6))
    # sum of q-binomials [5,k] at q = 2: the Galois numbers
    assert s.evaluate({"q": 2}) == 374
    half = FactoredRat(LaurentPoly.from_poly(MultiPoly.const(Fraction(1, 2))))
    assert (half + half).evaluate({"q": 3}) == 1


def test_worked_examples():
    assert cyclotomic_q(1) == cyclotomic_q(1).__class__([-1, 1])
    assert cyclotomic_q(6) == cyclotomic_q(6).__class__([1, -1, 1])
    assert [mobius(n) for n in (1, 4, 6)] == [1, 0, 1]
    assert kronecker_symbol(-3, 1) == 1
    assert kronecker_symbol(0, 9) == 0
    # squares mod 5 are {1, 4}; -3 = 2 is not one of them
    assert kronecker_symbol(-3, 5) == -1
    assert poly_exact_div(MultiPoly.from_q([-1, 0, 1]), MultiPoly.from_q([-1, 1])) == MultiPoly.from_q([1, 1])
    all15 = cyclotomic(3) * cyclotomic(5) * cyclotomic(15)
    assert poly_exact_div(all15, cyclotomic(15)) == cyclotomic(3) * cyclotomic(5)
    q3 = MultiPoly.from_q(qint_q(3))
    assert valuation(q3 * q3, cyclotomic(3)) == 2
    assert valuation(MultiPoly.from_q([-1, 1]), cyclotomic(3)) == 0
    assert valuation(MultiPoly.from_q(qint_q(9)), cyclotomic(3)) == 1


def test_ratfunc_sum_keeps_atoms():
    from qcong.exact_core import DenAtom

    one = FactoredRat(LaurentPoly.from_poly(MultiPoly.one()))
    qq = FactoredRat(LaurentPoly.q_power(1))
    s = ratfunc_sum([one, qq])
    assert s.num.to_poly() == MultiPoly.from_q([1, 1]) and not s.den
    _, _, atom = DenAtom.one_minus(1, (1, 0, 0, 0, 0))
    s = ratfunc_sum([FactoredRat(one.num, {atom: 1}), FactoredRat(qq.num, {atom: 1})])
    assert s.den == {atom: 1}
    assert s.evaluate({"q": Fraction(1, 3)}) == Fraction(4, 3) / Fraction(2, 3)


def test_substitute_a():
    from qcong.exact_core import substitute_a

    a, one = MultiPoly.var("a"), MultiPoly.one()
    q = lambda e: MultiPoly.from_q([0] * e + [1])
    assert substitute_a(one - a * q(3), LaurentPoly.q_power(-3)).is_zero()
    assert substitute_a(a - q(3), LaurentPoly.q_power(3)).is_zero()
    # (1 - aq)(a - q) = a (1 - aq)(1 - q/a); at a = q^n it is q^n (1 - q^(n+1))(1 - q^(1-n))
    n = 4
    got = substitute_a((one - a * q(1)) * (a - q(1)), LaurentPoly.q_power(n))
    ref = LaurentPoly.q_power(n) * (LaurentPoly.q_power(0) - LaurentPoly.q_power(n + 1)) * (
        LaurentPoly.q_power(0) - LaurentPoly.q_power(1 - n))
    assert got == ref


@given(polys, st.integers(1, 5))
def test_substitute_a_detects_factor(p, n):
    from qcong.exact_core import substitute_a

    f = MultiPoly.var("a") - MultiPoly.from_q([0] * n + [1])
    assert substitute_a(p * f, LaurentPoly.q_power(n)).is_zero()


@pytest.mark.parametrize("n", [3, 5, 7, 9, 15, 21])
def test_cyclotomic_at_q_squared(n):
    c = cyclotomic_q(n)
    sq = c.__class__([x for k, co in enumerate(c.coeffs()) for x in ((co, 0) if k < c.degree() else (co,))])
    assert sq == cyclotomic_q(n) * cyclotomic_q(2 * n)


small_q = st.lists(st.integers(-3, 3), min_size=1, max_size=5).filter(any)


@given(small_q, small_q, st.integers(2, 9))
def test_valuation_is_additive(x, y, d):
    px, py = MultiPoly.from_q(x), MultiPoly.from_q(y)
    phi = cyclotomic(d)
    assert valuation(px * py, phi) == valuation(px, phi) + valuation(py, phi)
