"""Valued-field layer: series arithmetic, valuation, parsing, value group."""

import random
from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lbldg import valfield as vf
from lbldg.errors import (
    DuplicateExponent,
    NegativeInput,
    NotASquare,
    NotInRing,
    PrecisionError,
    SeriesSyntaxError,
)
from lbldg.valfield.lam import BOTTOM, LambdaVal, LexPair


def _rand_exact(rng, max_terms=4):
    n = rng.randint(0, max_terms)
    pairs = []
    for _ in range(n):
        e = Q(rng.randint(-6, 6), rng.choice([1, 1, 2, 3]))
        c = Q(rng.randint(-9, 9), rng.randint(1, 5))
        pairs.append((e, c))
    return vf.PuiseuxElem.from_terms(pairs)


def _rand_nonzero(rng):
    while True:
        x = _rand_exact(rng)
        if not x.is_zero:
            return x


# --- LambdaVal / LexPair -----------------------------------------------------


class TestLambdaVal:
    def test_bottom_absorbs_and_orders(self):
        x = LambdaVal.of(Q(3, 2))
        assert (BOTTOM + x).is_bottom
        assert (x + BOTTOM).is_bottom
        assert BOTTOM < x
        assert BOTTOM < LambdaVal.of(-10**9)
        assert max(BOTTOM, x) == x

    def test_finite_group_ops(self):
        x, y = LambdaVal.of(Q(1, 2)), LambdaVal.of(Q(-2))
        assert (x + y).finite_value == Q(-3, 2)
        assert (-y).finite_value == Q(2)
        assert abs(y).finite_value == Q(2)
        assert (x * 4).finite_value == Q(2)
        assert (x / 2).finite_value == Q(1, 4)

    def test_bottom_partial_ops(self):
        assert (BOTTOM * 3).is_bottom
        with pytest.raises(ValueError):
            -BOTTOM
        with pytest.raises(ValueError):
            abs(BOTTOM)

    def test_lexpair_ordering(self):
        a = LexPair(Q(1), Q(0))
        b = LexPair(Q(1), Q(5))
        c = LexPair(Q(2), Q(-100))
        assert a < b < c
        assert a + b == LexPair(Q(2), Q(5))
        assert (c / 2) == LexPair(Q(1), Q(-50))
        assert abs(LexPair(Q(-1), Q(3))) == LexPair(Q(1), Q(-3))

    def test_lexpair_inside_lambdaval(self):
        x = LambdaVal.of(LexPair(Q(0), Q(1)))
        y = LambdaVal.of(LexPair(Q(0), Q(-1)))
        assert y < x
        assert BOTTOM < y
        assert (x + y).finite_value == LexPair(Q(0), Q(0))


# --- parse / print -----------------------------------------------------------


class TestParsePrint:
    def test_spec_encodings(self):
        x = vf.parse("3/2*t^(1/2) + 1")
        assert x.terms == ((Q(1, 2), Q(3, 2)), (Q(0), Q(1)))
        assert x.floor is None
        y = vf.parse("t^2 - t^(-1) + O(t^(-5))")
        assert y.terms == ((Q(2), Q(1)), (Q(-1), Q(-1)))
        assert y.floor == Q(-5)
        z = vf.parse("0")
        assert z.terms == () and z.floor is None

    def test_grammar_variants(self):
        assert vf.parse("t") == vf.T
        assert vf.parse("t^3") == vf.monomial(3)
        assert vf.parse("t^-2") == vf.monomial(-2)
        assert vf.parse("  -5/3 * t ^ ( 7/2 ) ") == vf.monomial(Q(7, 2), Q(-5, 3))
        assert vf.parse("2 - t") == vf.sub(vf.from_rational(2), vf.T)

    def test_syntax_errors_carry_offsets(self):
        with pytest.raises(SeriesSyntaxError) as ei:
            vf.parse("t^2 + + 3")
        assert isinstance(ei.value.offset, int)
        with pytest.raises(SeriesSyntaxError):
            vf.parse("1/0")
        with pytest.raises(SeriesSyntaxError):
            vf.parse("t + O(t^(0)) + 1")
        with pytest.raises(DuplicateExponent):
            vf.parse("t^2 + 3*t^2")

    def test_round_trip_100_random(self):
        rng = random.Random(20260816)
        done = 0
        while done < 100:
            x = _rand_exact(rng)
            if rng.random() < 0.4:
                lo = min((e for e, _ in x.terms), default=Q(0))
                x = vf.with_floor(x, lo - rng.randint(1, 3))
            s = vf.to_str(x)
            assert vf.parse(s) == x, s
            done += 1

    def test_canonical_forms(self):
        assert vf.to_str(vf.monomial(1)) == "t"
        assert vf.to_str(vf.monomial(2)) == "t^2"
        assert vf.to_str(vf.monomial(-1)) == "t^(-1)"
        assert vf.to_str(vf.monomial(Q(1, 2), Q(3, 2))) == "3/2*t^(1/2)"
        assert vf.to_str(vf.ZERO) == "0"
        assert vf.to_str(vf.with_floor(vf.ZERO, Q(-5))) == "0 + O(t^(-5))"


# --- ring/field operations ---------------------------------------------------


class TestArithmetic:
    def test_trivial_products(self):
        t = vf.T
        assert vf.mul(t + 1, t - 1) == vf.parse("t^2 - 1")
        assert vf.mul(vf.monomial(Q(1, 2)), vf.monomial(Q(1, 2))) == t

    def test_add_interval_semantics(self):
        a = vf.parse("t^2 + O(t^(0))")
        assert vf.to_str(vf.add(a, vf.ONE)) == "t^2 + O(t^(0))"

    def test_mul_floor_propagation(self):
        a = vf.parse("t + O(t^(-2))")
        b = vf.parse("t^3 + 1")
        out = vf.mul(a, b)
        # floor_a + negval(b) = -2 + 3 = 1 masks everything up to t^1
        assert out.floor == Q(1)
        assert out.terms == ((Q(4), Q(1)),)

    def test_field_laws_random(self):
        rng = random.Random(7)
        for _ in range(200):
            a, b, c = (_rand_exact(rng) for _ in range(3))
            assert vf.add(a, b) == vf.add(b, a)
            assert vf.mul(a, b) == vf.mul(b, a)
            assert vf.add(vf.add(a, b), c) == vf.add(a, vf.add(b, c))
            assert vf.mul(vf.mul(a, b), c) == vf.mul(a, vf.mul(b, c))
            assert vf.mul(a, vf.add(b, c)) == vf.add(vf.mul(a, b), vf.mul(a, c))
            assert vf.add(a, vf.neg(a)).is_zero

    @given(
        st.lists(
            st.tuples(
                st.fractions(min_value=-6, max_value=6, max_denominator=3),
                st.fractions(min_value=-9, max_value=9, max_denominator=5),
            ),
            max_size=4,
        ),
        st.lists(
            st.tuples(
                st.fractions(min_value=-6, max_value=6, max_denominator=3),
                st.fractions(min_value=-9, max_value=9, max_denominator=5),
            ),
            max_size=4,
        ),
    )
    @settings(max_examples=60, deadline=None)
    def test_mul_matches_naive_convolution(self, ta, tb):
        a = vf.PuiseuxElem.from_terms(ta)
        b = vf.PuiseuxElem.from_terms(tb)
        acc = {}
        for ea, ca in a.terms:
            for eb, cb in b.terms:
                acc[ea + eb] = acc.get(ea + eb, Q(0)) + ca * cb
        want = vf.PuiseuxElem.from_terms(acc.items())
        assert vf.mul(a, b) == want


# --- valuation and order -----------------------------------------------------


class TestValuation:
    def test_spec_values(self):
        assert vf.negval(vf.parse("t^(3/2) + 2")).finite_value == Q(3, 2)
        assert vf.negval(vf.ONE).finite_value == 0
        assert vf.negval(vf.ZERO).is_bottom
        with pytest.raises(PrecisionError):
            vf.negval(vf.parse("0 + O(t^(0))"))

    def test_order_examples(self):
        assert vf.cmp(vf.T, vf.from_rational(10**6)) == vf.GT
        assert vf.cmp(vf.monomial(-1), vf.ZERO) == vf.GT
        with pytest.raises(PrecisionError):
            vf.cmp(vf.parse("1 + O(t^(0))"), vf.ONE)

    def test_order_compatibility_random(self):
        rng = random.Random(11)
        for _ in range(200):
            a, b = _rand_nonzero(rng), _rand_nonzero(rng)
            if vf.cmp(b, vf.ZERO) != vf.GT:
                b = vf.neg(b)
            big = vf.add(a if vf.cmp(a, vf.ZERO) == vf.GT else vf.neg(a), b)
            # big >= b > 0 so negval(big) >= negval(b)
            assert not vf.negval(big) < vf.negval(b)

    def test_multiplicativity_and_ultrametric(self):
        rng = random.Random(13)
        for _ in range(200):
            a, b = _rand_nonzero(rng), _rand_nonzero(rng)
            assert vf.negval(vf.mul(a, b)) == vf.negval(a) + vf.negval(b)
            s = vf.add(a, b)
            hi = max(vf.negval(a), vf.negval(b))
            assert not vf.negval(s) > hi
            if vf.negval(a) != vf.negval(b):
                assert vf.negval(s) == hi

    def test_ring_membership(self):
        assert vf.in_O(vf.parse("t^(-2) + 5"))
        assert not vf.in_O(vf.T)
        assert not vf.is_unit(vf.monomial(-1))
        assert vf.is_unit(vf.parse("2 + t^(-1)"))
        assert vf.in_O(vf.ZERO) and not vf.is_unit(vf.ZERO)
        assert vf.in_O(vf.parse("0 + O(t^(0))"))
        with pytest.raises(PrecisionError):
            vf.in_O(vf.parse("0 + O(t^(2))"))

    def test_residue(self):
        assert vf.residue(vf.parse("3 + t^(-1)")) == 3
        assert vf.residue(vf.monomial(-5)) == 0
        with pytest.raises(NotInRing):
            vf.residue(vf.T)
        with pytest.raises(PrecisionError):
            vf.residue(vf.parse("1 + O(t^(0))"))


# --- inverse and square root -------------------------------------------------


class TestInvSqrt:
    def test_inv_examples(self):
        assert vf.inv(vf.T, Q(-99)) == vf.monomial(-1)
        got = vf.inv(vf.parse("1 - t^(-1)"), Q(-3))
        assert vf.to_str(got) == "1 + t^(-1) + t^(-2) + t^(-3) + O(t^(-4))"
        with pytest.raises(ZeroDivisionError):
            vf.inv(vf.ZERO, Q(-1))
        with pytest.raises(PrecisionError):
            vf.inv(vf.parse("0 + O(t^(3))"), Q(-1))

    def test_inv_correctness_random(self):
        rng = random.Random(17)
        for _ in range(100):
            a = _rand_nonzero(rng)
            f = Q(rng.randint(-8, -2))
            b = vf.inv(a, f)
            assert b.floor is None or b.floor <= f
            r = vf.sub(vf.mul(a, b), vf.ONE)
            bound = f + vf.negval(a).finite_value
            if r.terms:
                assert r.terms[0][0] <= bound
            elif r.floor is not None:
                assert r.floor <= bound

    def test_sqrt_examples(self):
        assert vf.sqrt_pos(vf.monomial(2)) == vf.T
        got = vf.sqrt_pos(vf.parse("1 + t^(-1)"), Q(-3))
        assert got.floor == Q(-7, 2)
        lead = dict(got.terms)
        assert lead[Q(0)] == 1 and lead[Q(-1)] == Q(1, 2) and lead[Q(-2)] == Q(-1, 8)
        with pytest.raises(NotASquare):
            vf.sqrt_pos(vf.from_rational(2), Q(-3))
        with pytest.raises(NegativeInput):
            vf.sqrt_pos(vf.neg(vf.T), Q(-3))
        with pytest.raises(NegativeInput):
            vf.sqrt_pos(vf.ZERO, Q(-3))

    def test_sqrt_squares_back(self):
        rng = random.Random(19)
        for _ in range(50):
            x = _rand_nonzero(rng)
            a = vf.mul(x, x)
            b = vf.sqrt_pos(a, Q(-10))
            r = vf.sub(vf.mul(b, b), a)
            if not r.is_zero:
                ub = r.terms[0][0] if r.terms else r.floor
                assert ub <= Q(-10) + vf.negval(a).finite_value / 2

    def test_fractional_leading_exponent(self):
        # negval(result) = negval(a)/2 without any parity constraint
        a = vf.add(vf.monomial(Q(1, 3)), vf.ONE)
        b = vf.sqrt_pos(a, Q(-2))
        assert b.terms[0][0] == Q(1, 6)


def test_backend_is_reported():
    assert vf.backend_name() in ("cython", "pure")
