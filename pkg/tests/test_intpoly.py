"""Exact integer polynomial arithmetic."""

import pytest
from hypothesis import given, settings, strategies as st

from haruspex.algebra.intpoly import (
    IntPoly,
    NEG_INF,
    _kron_mul,
    gcd_int_poly,
    unify,
)

x = IntPoly.variable("x")
s = IntPoly.variable("s")
t = IntPoly.variable("t")
y = IntPoly.variable("y")


def _poly_strategy(vars=("x",), max_deg=6, max_coeff=40, max_terms=6):
    vs = tuple(vars)
    exps = st.tuples(*(st.integers(0, max_deg) for _ in vs))
    coeff = st.integers(-max_coeff, max_coeff)
    return st.lists(st.tuples(exps, coeff), max_size=max_terms).map(
        lambda ts: IntPoly.from_terms(vs, ts)
    )


polys1 = _poly_strategy(("x",))
polys2 = _poly_strategy(("s", "x"), max_deg=4, max_terms=5)
polys3 = _poly_strategy(("t", "s", "x"), max_deg=3, max_terms=4)


class TestConstruction:
    def test_zero_degree_convention(self):
        z = IntPoly.zero(("x",))
        assert z.is_zero
        assert z.degree() == NEG_INF
        assert z.degree("x") == NEG_INF

    def test_trimming(self):
        p = IntPoly.from_terms(("x",), [((3,), 1), ((3,), -1), ((1,), 2)])
        assert p.degree() == 1
        assert p == 2 * x

    def test_constant_across_vars(self):
        assert IntPoly.const((), 7) == IntPoly.const(("s", "x"), 7)

    def test_variable(self):
        assert x.degree("x") == 1
        assert x.coeff_of("x", 1) == 1

    def test_from_terms_merges(self):
        p = IntPoly.from_terms(("x",), [((2,), 3), ((2,), 4)])
        assert p == 7 * x**2


class TestArithmetic:
    def test_small_product(self):
        assert (1 - x) * (1 + x) == 1 - x**2

    def test_pow(self):
        assert (1 + x) ** 3 == 1 + 3 * x + 3 * x**2 + x**3

    def test_mixed_vars(self):
        p = (1 + s) * (1 + x)
        assert p.coeff_of("s", 1) == 1 + x
        assert p.coeff_of("s", 0) == 1 + x

    @given(polys1, polys1, polys1)
    def test_ring_axioms_univariate(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c

    @given(polys2, polys2, polys2)
    @settings(max_examples=50)
    def test_ring_axioms_bivariate(self, a, b, c):
        assert (a + b) * c == a * c + b * c
        assert a - a == IntPoly.zero(a.vars)

    @given(polys2, st.integers(-5, 5), st.integers(-5, 5))
    def test_evaluation_homomorphism(self, a, vs, vx):
        b = 1 + s * x - x**2
        lhs = (a * b).evaluate(s=vs, x=vx)
        assert lhs == a.evaluate(s=vs, x=vx) * b.evaluate(s=vs, x=vx)


class TestExactDivision:
    def test_univariate(self):
        assert ((1 - x) ** 3).exact_div(1 - x) == (1 - x) ** 2

    def test_bivariate(self):
        p = (1 - s * x) ** 2 * (1 + s)
        assert p.exact_div(1 - s * x) == (1 - s * x) * (1 + s)

    def test_not_divisible(self):
        with pytest.raises(ValueError):
            (1 + x**2).exact_div(1 - x)

    @given(polys2, polys2)
    @settings(max_examples=60)
    def test_product_roundtrip(self, a, b):
        if b.is_zero:
            return
        assert (a * b).exact_div(b) == a

    @given(polys3, polys3)
    @settings(max_examples=30)
    def test_product_roundtrip_trivariate(self, a, b):
        if b.is_zero:
            return
        assert (a * b).exact_div(b) == a

    def test_divides(self):
        assert (1 - x).divides((1 - x**6))
        assert not (1 - x + x**2).divides(1 - x**4)


class TestKronecker:
    @given(polys2, polys2)
    @settings(max_examples=40)
    def test_matches_schoolbook(self, a, b):
        assert _kron_mul(a, b) == a * b

    def test_large_coefficients(self):
        a = IntPoly.from_terms(("x",), [((0,), 10**30), ((5,), -(10**28))])
        b = IntPoly.from_terms(("x",), [((1,), -(10**25)), ((7,), 3)])
        assert _kron_mul(a, b) == a * b

    def test_negative_heavy(self):
        a = -((1 + x) ** 9)
        b = -((1 - x) ** 8)
        assert _kron_mul(a, b) == a * b


class TestCalculus:
    def test_partial(self):
        p = s**2 * x + 3 * s
        assert p.partial("s") == 2 * s * x + 3

    def test_subs_poly(self):
        p = 1 - s * x
        assert p.subs("s", x) == 1 - x**2

    def test_subs_int(self):
        p = (1 - x) ** 2
        assert p.subs("x", 3) == 4

    def test_shift(self):
        assert (1 + x).shifted("x", 2) == x**2 + x**3


class TestGcd:
    def test_shared_factor(self):
        a = (1 - x) ** 3 * (1 + x)
        b = (1 - x) * (1 + x) ** 2
        assert gcd_int_poly(a, b) == (1 - x) * (1 + x)

    def test_coprime(self):
        assert gcd_int_poly(1 + x + x**2, 1 + x**2).is_constant()

    def test_bivariate(self):
        g = 1 - s * x
        assert gcd_int_poly(g * (1 + s), g * (1 - x)) == g

    @given(polys2, polys2)
    @settings(max_examples=30, deadline=None)
    def test_divides_both(self, a, b):
        if a.is_zero or b.is_zero:
            return
        g = gcd_int_poly(a, b)
        assert g.divides(a) and g.divides(b)

    @given(polys1, polys1, polys1)
    @settings(max_examples=30, deadline=None)
    def test_common_factor_found(self, a, b, g):
        if a.is_zero or b.is_zero or g.is_zero:
            return
        d = gcd_int_poly(a * g, b * g)
        assert g.divides(d)


class TestVariableBookkeeping:
    def test_lift_drop(self):
        p = 1 - x
        q = p.lift(("s", "x"))
        assert q.vars == ("s", "x")
        assert q.drop_unused() == p

    def test_unify(self):
        a, b = unify(1 + s, 1 + x)
        assert a.vars == b.vars == ("s", "x")
        assert a + b == 2 + s + x

    def test_equality_across_vars(self):
        assert (1 - x).lift(("s", "x")) == 1 - x
