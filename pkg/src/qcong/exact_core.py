"""Exact arithmetic core.

Polynomials live in Q[q, a, b, c, d].  The q-direction is stored densely
(one ``flint.fmpq_poly`` per parameter monomial) because every object in
this package has large q-degree and only a handful of parameter monomials.

Denominators are never expanded.  A :class:`FactoredRat` keeps them as a
multiset of binomial atoms ``x^u - c*x^v`` whose cyclotomic content is known
in closed form, so reduced-form questions become valuation arithmetic.
"""

from __future__ import annotations

import threading
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from flint import fmpq, fmpq_poly

VARS = ("q", "a", "b", "c", "d")
NVARS = len(VARS)
_ZERO_PARAMS = (0, 0, 0, 0)
_ZERO_EXPS = (0, 0, 0, 0, 0)


class NotDivisible(ArithmeticError):
    """Raised by exact division when the remainder is nonzero."""


class ValuationOfZero(ValueError):
    """The valuation of the zero polynomial is undefined (it is infinite)."""


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, fmpq):
        return Fraction(int(x.p), int(x.q))
    return Fraction(x)


def to_fmpq(x) -> fmpq:
    if isinstance(x, fmpq):
        return x
    if isinstance(x, int):
        return fmpq(x)
    x = to_fraction(x)
    return fmpq(x.numerator, x.denominator)


def var_index(name: str) -> int:
    try:
        return VARS.index(name)
    except ValueError:
        raise ValueError(f"unknown variable {name!r}; expected one of {VARS}") from None


# ---------------------------------------------------------------------------
# number theory helpers


def divisors(n: int) -> list[int]:
    if n < 1:
        raise ValueError("divisors of a positive integer only")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def mobius(n: int) -> int:
    """Moebius function of a positive integer."""
    if n < 1:
        raise ValueError("mobius(n) needs n >= 1")
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


def kronecker_symbol(a: int, n: int) -> int:
    """Jacobi-Kronecker symbol (a/n) for arbitrary integers."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    # factor out powers of two from the bottom
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 == 1 and a % 8 in (3, 5):
            result = -result
    # Jacobi symbol for odd positive n
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


# ---------------------------------------------------------------------------
# polynomials


class MultiPoly:
    """Sparse polynomial over Q in q, a, b, c, d.

    Internally a map from the parameter exponents (a, b, c, d) to a nonzero
    univariate ``fmpq_poly`` in q.  Instances are treated as immutable.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[tuple, fmpq_poly] | None = None, _trusted: bool = False):
        if coeffs is None:
            self._c = {}
        elif _trusted:
            self._c = coeffs
        else:
            self._c = {tuple(k): fmpq_poly(v) for k, v in coeffs.items() if not fmpq_poly(v).is_zero()}

    # construction -------------------------------------------------------
    @classmethod
    def zero(cls) -> MultiPoly:
        return cls({}, True)

    @classmethod
    def one(cls) -> MultiPoly:
        return cls.const(1)

    @classmethod
    def const(cls, c) -> MultiPoly:
        c = to_fmpq(c)
        if c == 0:
            return cls.zero()
        return cls({_ZERO_PARAMS: fmpq_poly([c])}, True)

    @classmethod
    def from_q(cls, p, params: tuple = _ZERO_PARAMS) -> MultiPoly:
        """Univariate polynomial in q (an ``fmpq_poly`` or coefficient list)."""
        p = p if isinstance(p, fmpq_poly) else fmpq_poly([to_fmpq(x) for x in p])
        if p.is_zero():
            return cls.zero()
        return cls({tuple(params): p}, True)

    @classmethod
    def monomial(cls, exps: Iterable[int], coeff=1) -> MultiPoly:
        exps = tuple(exps)
        if len(exps) != NVARS or min(exps) < 0:
            raise ValueError("monomial needs 5 nonnegative exponents")
        c = to_fmpq(coeff)
        if c == 0:
            return cls.zero()
        return cls({exps[1:]: fmpq_poly([c]).left_shift(exps[0])}, True)

    @classmethod
    def var(cls, name: str) -> MultiPoly:
        e = [0] * NVARS
        e[var_index(name)] = 1
        return cls.monomial(e)

    @classmethod
    def from_terms(cls, terms: Mapping[tuple, object]) -> MultiPoly:
        """Build from a map (e_q, e_a, e_b, e_c, e_d) -> rational coefficient."""
        grouped: dict[tuple, dict[int, fmpq]] = {}
        for exps, coef in terms.items():
            if len(exps) != NVARS or min(exps) < 0:
                raise ValueError(f"bad exponent vector {exps!r}")
            grouped.setdefault(tuple(exps[1:]), {})[exps[0]] = to_fmpq(coef)
        out = {}
        for key, row in grouped.items():
            dense = [fmpq(0)] * (max(row) + 1)
            for e, c in row.items():
                dense[e] += c
            p = fmpq_poly(dense)
            if not p.is_zero():
                out[key] = p
        return cls(out, True)

    # inspection ---------------------------------------------------------
    def terms(self) -> dict[tuple, Fraction]:
        out = {}
        for key, p in self._c.items():
            for e, c in enumerate(p.coeffs()):
                if c != 0:
                    out[(e,) + key] = to_fraction(c)
        return out

    def coeff_items(self):
        """Pairs (parameter exponents, q-polynomial)."""
        return self._c.items()

    def is_zero(self) -> bool:
        return not self._c

    def is_constant(self) -> bool:
        if not self._c:
            return True
        return list(self._c) == [_ZERO_PARAMS] and self._c[_ZERO_PARAMS].degree() == 0

    def is_univariate(self) -> bool:
        return all(k == _ZERO_PARAMS for k in self._c)

    def q_poly(self) -> fmpq_poly:
        if not self.is_univariate():
            raise ValueError("polynomial involves parameters")
        return self._c.get(_ZERO_PARAMS, fmpq_poly([]))

    def variables(self) -> set[str]:
        used = set()
        for key, p in self._c.items():
            if p.degree() > 0:
                used.add("q")
            for i, e in enumerate(key):
                if e:
                    used.add(VARS[i + 1])
        return used

    def degree(self, name: str = "q") -> int:
        if not self._c:
            return -1
        i = var_index(name)
        if i == 0:
            return max(p.degree() for p in self._c.values())
        return max(k[i - 1] for k in self._c)

    def min_exponents(self) -> tuple:
        """Componentwise minimum exponent over all terms (zero gives all zeros)."""
        if not self._c:
            return _ZERO_EXPS
        mq = min(_low_degree(p) for p in self._c.values())
        keys = list(self._c)
        return (mq,) + tuple(min(k[i] for k in keys) for i in range(NVARS - 1))

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, fmpq)):
            other = MultiPoly.const(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        if self._c.keys() != other._c.keys():
            return False
        return all(self._c[k] == other._c[k] for k in self._c)

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.terms().items())))

    def __repr__(self) -> str:
        return f"MultiPoly({self})"

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for exps, coef in sorted(self.terms().items(), reverse=True):
            mono = "*".join(
                f"{v}^{e}" if e > 1 else v for v, e in zip(VARS, exps) if e
            )
            if not mono:
                parts.append(str(coef))
            elif coef == 1:
                parts.append(mono)
            elif coef == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{coef}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    # arithmetic ---------------------------------------------------------
    @staticmethod
    def _coerce(x) -> MultiPoly:
        if isinstance(x, MultiPoly):
            return x
        if isinstance(x, (int, Fraction, fmpq)):
            return MultiPoly.const(x)
        raise TypeError(f"cannot use {type(x).__name__} as a polynomial")

    def __add__(self, other) -> MultiPoly:
        other = self._coerce(other)
        out = dict(self._c)
        for k, p in other._c.items():
            s = out.get(k)
            s = p if s is None else s + p
            if s.is_zero():
                out.pop(k, None)
            else:
                out[k] = s
        return MultiPoly(out, True)

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        return MultiPoly({k: -p for k, p in self._c.items()}, True)

    def __sub__(self, other) -> MultiPoly:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> MultiPoly:
        return self._coerce(other) - self

    def __mul__(self, other) -> MultiPoly:
        if isinstance(other, (int, Fraction, fmpq)):
            return self.scale(other)
        other = self._coerce(other)
        if not self._c or not other._c:
            return MultiPoly.zero()
        if len(other._c) == 1 and len(self._c) > 1:
            self, other = other, self
        out: dict[tuple, fmpq_poly] = {}
        for k1, p1 in self._c.items():
            for k2, p2 in other._c.items():
                k = (k1[0] + k2[0], k1[1] + k2[1], k1[2] + k2[2], k1[3] + k2[3])
                prod = p1 * p2
                s = out.get(k)
                out[k] = prod if s is None else s + prod
        return MultiPoly({k: p for k, p in out.items() if not p.is_zero()}, True)

    __rmul__ = __mul__

    def scale(self, c) -> MultiPoly:
        c = to_fmpq(c)
        if c == 0:
            return MultiPoly.zero()
        return MultiPoly({k: p * c for k, p in self._c.items()}, True)

    def __pow__(self, e: int) -> MultiPoly:
        if e < 0:
            raise ValueError("negative power of a polynomial")
        if self.is_univariate():
            return MultiPoly.from_q(self.q_poly() ** e) if e else MultiPoly.one()
        result = MultiPoly.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def shift(self, exps: Iterable[int]) -> MultiPoly:
        """Multiply by the monomial with the given nonnegative exponents."""
        exps = tuple(exps)
        if exps == _ZERO_EXPS:
            return self
        if min(exps) < 0:
            raise ValueError("negative shift; use LaurentPoly")
        s, rest = exps[0], exps[1:]
        return MultiPoly(
            {tuple(a + b for a, b in zip(k, rest)): p.left_shift(s) for k, p in self._c.items()},
            True,
        )

    def unshift(self, exps: Iterable[int]) -> MultiPoly:
        """Divide by a monomial that is known to divide every term."""
        exps = tuple(exps)
        if exps == _ZERO_EXPS:
            return self
        s, rest = exps[0], exps[1:]
        return MultiPoly(
            {tuple(a - b for a, b in zip(k, rest)): p.right_shift(s) for k, p in self._c.items()},
            True,
        )

    def div_q(self, d: fmpq_poly) -> MultiPoly | None:
        """Exact division by a univariate polynomial in q, or None."""
        out = {}
        for k, p in self._c.items():
            quo, rem = divmod(p, d)
            if not rem.is_zero():
                return None
            out[k] = quo
        return MultiPoly(out, True)

    def evaluate(self, point: Mapping[str, object]):
        """Evaluate at a point given as {var: value}; missing vars stay unset (error)."""
        vals = [point[v] if v in point else None for v in VARS]
        total = 0
        for exps, coef in self.terms().items():
            term = coef
            for v, e in zip(vals, exps):
                if e:
                    if v is None:
                        raise ValueError("evaluation point misses a variable")
                    term = term * v**e
            total = total + term
        return total

    def evaluate_fast(self, point: Mapping[str, object]) -> Fraction:
        """Exact evaluation at a rational point using Horner in q."""
        qv = to_fmpq(point.get("q", 0))
        total = fmpq(0)
        for key, p in self._c.items():
            term = p(qv)
            for i, e in enumerate(key):
                if e:
                    term *= to_fmpq(point[VARS[i + 1]]) ** e
            total += term
        return to_fraction(total)

    def specialize(self, assignment: Mapping[str, object]) -> MultiPoly:
        """Substitute rational values for some parameters (not q)."""
        idx = {var_index(v): to_fmpq(x) for v, x in assignment.items()}
        if 0 in idx:
            raise ValueError("specialize() keeps q symbolic")
        out: dict[tuple, fmpq_poly] = {}
        for key, p in self._c.items():
            c = fmpq(1)
            newkey = list(key)
            for i, val in idx.items():
                e = key[i - 1]
                if e:
                    c *= val**e
                    newkey[i - 1] = 0
            newkey = tuple(newkey)
            s = out.get(newkey)
            out[newkey] = p * c if s is None else s + p * c
        return MultiPoly({k: p for k, p in out.items() if not p.is_zero()}, True)

    def param_coefficients(self, keep: Iterable[str] = ()) -> dict[tuple, MultiPoly]:
        """Split by the exponents of all parameters not in ``keep``."""
        keep_idx = {var_index(v) - 1 for v in keep}
        out: dict[tuple, dict] = {}
        for key, p in self._c.items():
            outer = tuple(e if i not in keep_idx else 0 for i, e in enumerate(key))
            inner = tuple(e if i in keep_idx else 0 for i, e in enumerate(key))
            out.setdefault(outer, {})[inner] = p
        return {k: MultiPoly(v, True) for k, v in out.items()}


def _low_degree(p: fmpq_poly) -> int:
    if p.is_zero():
        return 0
    # cheap probe first: most polynomials here have a nonzero constant term
    if p[0] != 0:
        return 0
    coeffs = p.coeffs()
    for i, c in enumerate(coeffs):
        if c != 0:
            return i
    return 0


def q_monomial_poly(m: int) -> fmpq_poly:
    return fmpq_poly([1]).left_shift(m)


# ---------------------------------------------------------------------------
# Laurent polynomials


class LaurentPoly:
    """``poly * x^shift`` where the shift may have negative entries.

    Normalized so that ``poly`` has no monomial factor; zero has shift 0.
    """

    __slots__ = ("poly", "shift")

    def __init__(self, poly: MultiPoly, shift: Iterable[int] = _ZERO_EXPS, normalize: bool = True):
        shift = tuple(shift)
        if len(shift) != NVARS:
            raise ValueError("shift needs 5 entries")
        poly = MultiPoly._coerce(poly)
        if poly.is_zero():
            self.poly, self.shift = poly, _ZERO_EXPS
            return
        if normalize:
            low = poly.min_exponents()
            if low != _ZERO_EXPS:
                poly = poly.unshift(low)
                shift = tuple(s + l for s, l in zip(shift, low))
        self.poly, self.shift = poly, shift

    @classmethod
    def from_poly(cls, p: MultiPoly) -> LaurentPoly:
        return cls(p)

    @classmethod
    def monomial(cls, exps: Iterable[int], coeff=1) -> LaurentPoly:
        return cls(MultiPoly.const(coeff), exps, normalize=False)

    @classmethod
    def q_power(cls, s: int, coeff=1) -> LaurentPoly:
        return cls.monomial((s, 0, 0, 0, 0), coeff)

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, MultiPoly)):
            other = LaurentPoly(MultiPoly._coerce(other))
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.shift == other.shift and self.poly == other.poly

    def __hash__(self):
        return hash((self.shift, self.poly))

    def __repr__(self) -> str:
        mono = "*".join(f"{v}^{e}" for v, e in zip(VARS, self.shift) if e)
        return f"LaurentPoly(({self.poly}){'*' + mono if mono else ''})"

    def _aligned(self, other: LaurentPoly):
        low = tuple(min(x, y) for x, y in zip(self.shift, other.shift))
        p1 = self.poly.shift(tuple(s - l for s, l in zip(self.shift, low)))
        p2 = other.poly.shift(tuple(s - l for s, l in zip(other.shift, low)))
        return p1, p2, low

    def __add__(self, other) -> LaurentPoly:
        other = _as_laurent(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        p1, p2, low = self._aligned(other)
        return LaurentPoly(p1 + p2, low)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly(-self.poly, self.shift, normalize=False)

    def __sub__(self, other) -> LaurentPoly:
        return self + (-_as_laurent(other))

    def __rsub__(self, other) -> LaurentPoly:
        return _as_laurent(other) - self

    def __mul__(self, other) -> LaurentPoly:
        other = _as_laurent(other)
        return LaurentPoly(
            self.poly * other.poly,
            tuple(x + y for x, y in zip(self.shift, other.shift)),
            normalize=False,
        )

    __rmul__ = __mul__

    def scale(self, c) -> LaurentPoly:
        return LaurentPoly(self.poly.scale(c), self.shift, normalize=False)

    def __pow__(self, e: int) -> LaurentPoly:
        return LaurentPoly(self.poly**e, tuple(s * e for s in self.shift), normalize=False)

    def mul_poly(self, p: MultiPoly) -> LaurentPoly:
        return LaurentPoly(self.poly * p, self.shift, normalize=False)

    def normalized(self) -> LaurentPoly:
        return LaurentPoly(self.poly, self.shift)

    def to_poly(self) -> MultiPoly:
        """Back to a polynomial; fails if a negative power remains."""
        n = self.normalized()
        if min(n.shift) < 0:
            raise ValueError("Laurent polynomial has negative powers")
        return n.poly.shift(n.shift)

    def evaluate(self, point: Mapping[str, object]):
        val = self.poly.evaluate_fast(point) if self.poly.is_univariate() or all(
            v in point for v in VARS[1:] if v in self.poly.variables()
        ) else self.poly.evaluate(point)
        for v, e in zip(VARS, self.shift):
            if e:
                val = val * Fraction(to_fraction(point[v])) ** e
        return val

    def specialize(self, assignment: Mapping[str, object]) -> LaurentPoly:
        c = Fraction(1)
        shift = list(self.shift)
        for v, x in assignment.items():
            i = var_index(v)
            if shift[i]:
                c *= to_fraction(x) ** shift[i]
                shift[i] = 0
        return LaurentPoly(self.poly.specialize(assignment).scale(c), shift)


def _as_laurent(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    return LaurentPoly(MultiPoly._coerce(x))


def substitute_a(p, value, var: str = "a") -> LaurentPoly:
    """Replace the parameter ``var`` (default a) by a Laurent polynomial in q.

    ``p`` may be a MultiPoly or LaurentPoly.  When ``value`` is a monomial the
    substitution is a pure regrouping of coefficients.
    """
    lp = _as_laurent(p)
    val = _as_laurent(value)
    if val.poly.variables() - {"q"} or any(val.shift[1:]):
        raise ValueError("substituted value must be a Laurent polynomial in q")
    i = var_index(var)
    if i == 0:
        raise ValueError("cannot substitute for q")
    base_shift = list(lp.shift)
    ext = base_shift[i]
    base_shift[i] = 0
    if val.poly.is_constant():
        # monomial c*q^s: regroup coefficients by the remaining parameter exponents
        cval = to_fmpq(next(iter(val.poly.terms().values())))
        s = val.shift[0]
        buckets: dict[tuple, list] = {}
        for key, qp in lp.poly.coeff_items():
            e = key[i - 1] + ext
            rest = list(key)
            rest[i - 1] = 0
            buckets.setdefault(tuple(rest), []).append((e, qp))
        out = LaurentPoly(MultiPoly.zero())
        for rest, items in buckets.items():
            low = min(e * s for e, _ in items)
            acc = fmpq_poly([])
            for e, qp in items:
                acc += (qp * cval**e if e >= 0 else qp / cval ** (-e)).left_shift(e * s - low)
            out = out + LaurentPoly(MultiPoly.from_q(acc, rest), (low, 0, 0, 0, 0))
        return out * LaurentPoly.monomial(base_shift)
    # general value: Horner-free direct sum
    out = LaurentPoly(MultiPoly.zero())
    for key, qp in lp.poly.coeff_items():
        e = key[i - 1] + ext
        rest = list(key)
        rest[i - 1] = 0
        term = LaurentPoly(MultiPoly.from_q(qp, rest))
        if e >= 0:
            term = term * val**e
        else:
            raise ValueError("negative power needs a monomial value")
        out = out + term
    return out * LaurentPoly.monomial(base_shift)


# ---------------------------------------------------------------------------
# cyclotomic polynomials

_CYCLO_CACHE: dict[int, fmpq_poly] = {}
_CYCLO_LOCK = threading.Lock()


def cyclotomic_q(n: int) -> fmpq_poly:
    """Phi_n as an fmpq_poly, from the Moebius product with exact division."""
    if n < 1:
        raise ValueError("cyclotomic(n) needs n >= 1")
    hit = _CYCLO_CACHE.get(n)
    if hit is not None:
        return hit
    num = fmpq_poly([1])
    den = fmpq_poly([1])
    for d in divisors(n):
        mu = mobius(d)
        if mu == 0:
            continue
        factor = q_monomial_poly(n // d) - 1
        if mu == 1:
            num *= factor
        else:
            den *= factor
    quo, rem = divmod(num, den)
    if not rem.is_zero():  # pragma: no cover - mathematically impossible
        raise ArithmeticError("Moebius product did not divide")
    with _CYCLO_LOCK:
        _CYCLO_CACHE.setdefault(n, quo)
    return _CYCLO_CACHE[n]


def cyclotomic(n: int) -> MultiPoly:
    return MultiPoly.from_q(cyclotomic_q(n))


def qint_q(n: int) -> fmpq_poly:
    if n < 1:
        raise ValueError("[n] needs n >= 1")
    return fmpq_poly([1] * n)


# ---------------------------------------------------------------------------
# division and valuations


def poly_exact_div(p: MultiPoly, d: MultiPoly) -> MultiPoly:
    """Exact quotient p/d; raises NotDivisible if d does not divide p."""
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return MultiPoly.zero()
    if d.is_univariate():
        res = p.div_q(d.q_poly())
        if res is None:
            raise NotDivisible(f"{d} does not divide the polynomial")
        return res
    return _mpoly_exact_div(p, d)


def _mpoly_exact_div(p: MultiPoly, d: MultiPoly) -> MultiPoly:
    from flint import fmpq_mpoly_ctx

    ctx = fmpq_mpoly_ctx.get(VARS, "lex")
    fp = ctx.from_dict({k: to_fmpq(v) for k, v in p.terms().items()})
    fd = ctx.from_dict({k: to_fmpq(v) for k, v in d.terms().items()})
    quo, rem = divmod(fp, fd)
    if not rem.is_zero():
        raise NotDivisible(f"{d} does not divide the polynomial")
    return MultiPoly.from_terms({tuple(int(e) for e in k): to_fraction(v) for k, v in quo.to_dict().items()})


def valuation(p: MultiPoly, d: MultiPoly, cap: int | None = None) -> int:
    """Largest e with d^e | p (stops early at ``cap`` if given)."""
    if p.is_zero():
        raise ValuationOfZero("valuation of the zero polynomial is infinite")
    if d.is_constant():
        raise ValueError("valuation needs a non-constant divisor")
    e = 0
    while cap is None or e < cap:
        try:
            p = poly_exact_div(p, d)
        except NotDivisible:
            break
        e += 1
    return e


def q_valuation(p: MultiPoly, d: fmpq_poly, cap: int | None = None) -> int:
    """Valuation of p at a univariate q-polynomial d, taken over all parameter coefficients."""
    if p.is_zero():
        raise ValuationOfZero("valuation of the zero polynomial is infinite")
    best = None
    for _, qp in p.coeff_items():
        e = 0
        while (cap is None or e < cap) and (best is None or e < best):
            quo, rem = divmod(qp, d)
            if not rem.is_zero():
                break
            qp = quo
            e += 1
        best = e if best is None else min(best, e)
        if best == 0:
            break
    return best or 0


# ---------------------------------------------------------------------------
# denominator atoms


def _order_key(exps: tuple) -> tuple:
    return (exps[0], sum(exps[1:]), exps[1:])


@dataclass(frozen=True)
class DenAtom:
    """Binomial ``x^lead - coef * x^tail`` with disjoint supports.

    Canonical: ``lead`` sorts before ``tail`` (q-exponent first), so
    ``1 - q^m``, ``1 - a q^m``, ``a - q^m`` and ``1 + q^m`` all keep the
    shape written here.
    """

    lead: tuple
    coef: Fraction
    tail: tuple

    @staticmethod
    def one_minus(coef, exps: Iterable[int]):
        """Factor ``1 - coef*x^exps`` as ``unit * x^shift * atom``.

        Returns (unit, shift, atom); atom is None when the factor is a
        constant, in which case ``unit`` is that constant (possibly 0).
        """
        coef = to_fraction(coef)
        exps = tuple(exps)
        if coef == 0:
            return Fraction(1), _ZERO_EXPS, None
        if not any(exps):
            return 1 - coef, _ZERO_EXPS, None
        plus = tuple(max(e, 0) for e in exps)
        minus = tuple(max(-e, 0) for e in exps)
        shift = tuple(-m for m in minus)
        if _order_key(minus) <= _order_key(plus):
            return Fraction(1), shift, DenAtom(minus, coef, plus)
        return -coef, shift, DenAtom(plus, 1 / coef, minus)

    @staticmethod
    def q_factor(m: int) -> DenAtom:
        """The atom 1 - q^m."""
        if m < 1:
            raise ValueError("1 - q^m needs m >= 1")
        return DenAtom(_ZERO_EXPS, Fraction(1), (m, 0, 0, 0, 0))

    def poly(self) -> MultiPoly:
        return _atom_poly(self)

    def is_pure_q(self) -> bool:
        return not any(self.lead) and not any(self.tail[1:])

    def cyclotomic_content(self) -> dict[int, int]:
        """Multiplicity of each Phi_d in this atom (empty if coprime to all)."""
        if not self.is_pure_q():
            return {}
        m = self.tail[0]
        if self.coef == 1:
            return {d: 1 for d in divisors(m)}
        if self.coef == -1:
            return {d: 1 for d in divisors(2 * m) if m % d}
        return {}

    def cyclotomic_multiplicity(self, d: int) -> int:
        if not self.is_pure_q():
            return 0
        m = self.tail[0]
        if self.coef == 1:
            return 1 if m % d == 0 else 0
        if self.coef == -1:
            return 1 if (2 * m) % d == 0 and m % d else 0
        return 0

    def evaluate(self, point: Mapping[str, object]):
        def mono(exps):
            v = Fraction(1)
            for name, e in zip(VARS, exps):
                if e:
                    v *= to_fraction(point[name]) ** e
            return v

        return mono(self.lead) - self.coef * mono(self.tail)

    def __str__(self) -> str:
        def mono(exps):
            s = "*".join(f"{v}^{e}" if e > 1 else v for v, e in zip(VARS, exps) if e)
            return s or "1"

        c = self.coef
        t = mono(self.tail)
        if c == 1:
            return f"({mono(self.lead)} - {t})"
        if c == -1:
            return f"({mono(self.lead)} + {t})"
        return f"({mono(self.lead)} - {c}*{t})"


_ATOM_POLY: dict[DenAtom, MultiPoly] = {}


def _atom_poly(atom: DenAtom) -> MultiPoly:
    p = _ATOM_POLY.get(atom)
    if p is None:
        p = MultiPoly.monomial(atom.lead) - MultiPoly.monomial(atom.tail, atom.coef)
        _ATOM_POLY[atom] = p
    return p


def atoms_product(atoms: Mapping[DenAtom, int]) -> MultiPoly:
    """Expanded product of atoms with multiplicities."""
    pure = fmpq_poly([1])
    mixed = MultiPoly.one()
    for atom, mult in sorted(atoms.items(), key=lambda kv: _atom_sort_key(kv[0])):
        if mult <= 0:
            continue
        if atom.is_pure_q():
            pure *= atom.poly().q_poly() ** mult
        else:
            mixed = mixed * atom.poly() ** mult
    return mixed * MultiPoly.from_q(pure)


def _atom_sort_key(atom: DenAtom):
    return (atom.lead, atom.tail, atom.coef)


# ---------------------------------------------------------------------------
# factored rational functions


class FactoredRat:
    """``num / prod(atom^mult)`` with the numerator expanded."""

    __slots__ = ("num", "den")

    def __init__(self, num, den: Mapping[DenAtom, int] | None = None):
        self.num = _as_laurent(num)
        self.den = {a: m for a, m in (den or {}).items() if m > 0}

    @classmethod
    def zero(cls) -> FactoredRat:
        return cls(LaurentPoly(MultiPoly.zero()))

    @classmethod
    def one(cls) -> FactoredRat:
        return cls(LaurentPoly(MultiPoly.one()))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __repr__(self) -> str:
        den = "*".join(f"{a}^{m}" if m > 1 else str(a) for a, m in sorted(self.den.items(), key=lambda kv: _atom_sort_key(kv[0])))
        return f"FactoredRat({self.num!r} / {den or '1'})"

    def __mul__(self, other) -> FactoredRat:
        if not isinstance(other, FactoredRat):
            return FactoredRat(self.num * _as_laurent(other), self.den)
        den = Counter(self.den)
        den.update(other.den)
        return FactoredRat(self.num * other.num, den)

    __rmul__ = __mul__

    def scale(self, c) -> FactoredRat:
        return FactoredRat(self.num.scale(c), self.den)

    def __neg__(self) -> FactoredRat:
        return FactoredRat(-self.num, self.den)

    def __add__(self, other) -> FactoredRat:
        if not isinstance(other, FactoredRat):
            other = FactoredRat(_as_laurent(other))
        return ratfunc_sum([self, other])

    __radd__ = __add__

    def __sub__(self, other) -> FactoredRat:
        if not isinstance(other, FactoredRat):
            other = FactoredRat(_as_laurent(other))
        return ratfunc_sum([self, -other])

    def __pow__(self, e: int) -> FactoredRat:
        if e < 0:
            raise ValueError("negative power of a FactoredRat")
        return FactoredRat(self.num**e, {a: m * e for a, m in self.den.items()})

    def evaluate(self, point: Mapping[str, object]) -> Fraction:
        val = self.num.evaluate(point)
        for atom, m in self.den.items():
            v = atom.evaluate(point)
            if v == 0:
                raise ZeroDivisionError(f"denominator atom {atom} vanishes at the point")
            val = val / v**m
        return val

    def specialize(self, assignment: Mapping[str, object]) -> FactoredRat:
        """Substitute rational values for parameters in numerator and atoms."""
        num = self.num.specialize(assignment)
        den: Counter = Counter()
        for atom, m in self.den.items():
            unit, shift, new = _specialize_atom(atom, assignment)
            if new is None:
                if unit == 0:
                    raise ZeroDivisionError(f"atom {atom} vanishes under the specialization")
                num = num.scale(Fraction(1) / unit**m)
                continue
            num = num * LaurentPoly.monomial(tuple(-s * m for s in shift), Fraction(1) / unit**m)
            den[new] += m
        return FactoredRat(num, den)


def _specialize_atom(atom: DenAtom, assignment):
    """Rewrite a specialized atom in canonical form: atom_old = unit*x^shift*new."""
    def split(exps):
        c = Fraction(1)
        e = list(exps)
        for v, x in assignment.items():
            i = var_index(v)
            if e[i]:
                c *= to_fraction(x) ** e[i]
                e[i] = 0
        return c, tuple(e)

    c1, e1 = split(atom.lead)
    c2, e2 = split(atom.tail)
    # c1 x^e1 - coef c2 x^e2 = c1 x^e1 (1 - (coef c2/c1) x^(e2-e1))
    ratio = atom.coef * c2 / c1
    unit, shift, new = DenAtom.one_minus(ratio, tuple(b - a for a, b in zip(e1, e2)))
    return c1 * unit, tuple(s + a for s, a in zip(shift, e1)), new


def ratfunc_sum(terms: Iterable[FactoredRat]) -> FactoredRat:
    """Sum over the union (max multiplicity) of the denominators, no reduction.

    Accumulates left to right, so nested denominators (the usual case for
    truncated hypergeometric sums) cost one cofactor product per step.
    """
    acc_num = LaurentPoly(MultiPoly.zero())
    acc_den: dict[DenAtom, int] = {}
    for t in terms:
        new_den = dict(acc_den)
        for atom, m in t.den.items():
            if new_den.get(atom, 0) < m:
                new_den[atom] = m
        grow_acc = {a: m - acc_den.get(a, 0) for a, m in new_den.items() if m > acc_den.get(a, 0)}
        grow_t = {a: m - t.den.get(a, 0) for a, m in new_den.items() if m > t.den.get(a, 0)}
        if grow_acc and not acc_num.is_zero():
            acc_num = acc_num.mul_poly(atoms_product(grow_acc))
        tnum = t.num.mul_poly(atoms_product(grow_t)) if grow_t else t.num
        acc_num = acc_num + tnum
        acc_den = new_den
    return FactoredRat(acc_num, acc_den)


# ---------------------------------------------------------------------------
# moduli


@dataclass(frozen=True, order=True)
class ModFactor:
    """One factor kind of a modulus.

    kinds: "cyclotomic" Phi_n(q); "cyclotomic_neg" Phi_n(-q); "one_minus_aqn"
    1 - a q^n; "a_minus_qn" a - q^n; "one_minus_a2q2n" 1 - a^2 q^(2n);
    "qinteger" [n].
    """

    kind: str
    n: int

    KINDS = ("cyclotomic", "cyclotomic_neg", "one_minus_aqn", "a_minus_qn", "one_minus_a2q2n", "qinteger")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown modulus factor kind {self.kind!r}")
        if self.n < 1:
            raise ValueError("modulus factor index must be positive")

    def is_mixed(self) -> bool:
        return self.kind in ("one_minus_aqn", "a_minus_qn", "one_minus_a2q2n")

    def __str__(self) -> str:
        n = self.n
        return {
            "cyclotomic": f"Phi_{n}(q)",
            "cyclotomic_neg": f"Phi_{n}(-q)",
            "one_minus_aqn": f"(1-a*q^{n})",
            "a_minus_qn": f"(a-q^{n})",
            "one_minus_a2q2n": f"(1-a^2*q^{2 * n})",
            "qinteger": f"[{n}]",
        }[self.kind]


def Cyclotomic(d: int) -> ModFactor:
    return ModFactor("cyclotomic", d)


def CyclotomicNeg(n: int) -> ModFactor:
    return ModFactor("cyclotomic_neg", n)


def OneMinusAQn(n: int) -> ModFactor:
    return ModFactor("one_minus_aqn", n)


def AMinusQn(n: int) -> ModFactor:
    return ModFactor("a_minus_qn", n)


def OneMinusA2Q2n(n: int) -> ModFactor:
    return ModFactor("one_minus_a2q2n", n)


def QInteger(n: int) -> ModFactor:
    return ModFactor("qinteger", n)


class Modulus:
    """Product of tagged factors with positive exponents."""

    __slots__ = ("factors",)

    def __init__(self, factors: Iterable[tuple[ModFactor, int]] = ()):
        merged: dict[ModFactor, int] = {}
        for f, e in factors:
            if e < 0:
                raise ValueError("modulus exponents must be nonnegative")
            if e:
                merged[f] = merged.get(f, 0) + e
        self.factors = tuple(merged.items())

    def __mul__(self, other: Modulus) -> Modulus:
        return Modulus(self.factors + other.factors)

    def __eq__(self, other) -> bool:
        return isinstance(other, Modulus) and dict(self.factors) == dict(other.factors)

    def __hash__(self):
        return hash(frozenset(self.factors))

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return "*".join(f"{f}^{e}" if e > 1 else str(f) for f, e in self.factors)

    __repr__ = __str__

    def expanded(self) -> list[tuple[ModFactor, int]]:
        """Rewrite [n] and Phi_n(-q) as cyclotomic factors in q; merge exponents.

        The order is stable: cyclotomic factors by index, then mixed factors
        in their original order.
        """
        cyc: dict[int, int] = {}
        mixed: list[tuple[ModFactor, int]] = []
        for f, e in self.factors:
            if f.kind == "cyclotomic":
                cyc[f.n] = cyc.get(f.n, 0) + e
            elif f.kind == "qinteger":
                for d in divisors(f.n):
                    if d > 1:
                        cyc[d] = cyc.get(d, 0) + e
            elif f.kind == "cyclotomic_neg":
                for d, m in _cyclotomic_neg_content(f.n).items():
                    cyc[d] = cyc.get(d, 0) + e * m
            else:
                mixed.append((f, e))
        return [(Cyclotomic(d), cyc[d]) for d in sorted(cyc)] + mixed


def _cyclotomic_neg_content(n: int) -> dict[int, int]:
    """Phi_n(-q) up to sign as a product of Phi_d(q)."""
    if n == 1:
        return {2: 1}
    if n == 2:
        return {1: 1}
    if n % 2:
        return {2 * n: 1}
    if n % 4 == 0:
        return {n: 1}
    return {n // 2: 1}
