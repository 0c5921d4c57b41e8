"""Unit tests for the exact-arithmetic building blocks."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quadrichk.exact import (
    PiecewisePolynomial,
    Polynomial,
    binomial,
    dim_projective,
    dim_quadric,
    dim_spinor,
    sec_tan_coefficient,
    spinor_rank,
)

rationals = st.fractions(
    min_value=-10, max_value=10, max_denominator=97
)


class TestBinomial:
    def test_values(self):
        assert binomial(4, 4) == 1
        assert binomial(14, 4) == 1001
        assert binomial(10, 0) == 1

    def test_out_of_range_is_zero(self):
        assert binomial(3, 4) == 0
        assert binomial(-1, 0) == 0
        assert binomial(5, -2) == 0

    @given(st.integers(0, 60), st.integers(0, 60))
    def test_pascal(self, m, k):
        assert binomial(m + 1, k + 1) == binomial(m, k) + binomial(m, k + 1)


class TestDimensionCounters:
    def test_projective_examples(self):
        # Sections of O(m) on P^N.
        assert dim_projective(4, 0) == 1
        assert dim_projective(4, 1) == 5
        assert dim_projective(4, -1) == 0
        assert dim_projective(3, 2) == 10

    def test_quadric_examples(self):
        assert dim_quadric(3, 0) == 1
        assert dim_quadric(3, 1) == 5
        assert dim_quadric(3, 2) == 14
        assert dim_quadric(3, -1) == 0

    @given(st.integers(3, 9), st.integers(1, 50))
    @settings(max_examples=60)
    def test_quadric_is_hypersurface_difference(self, n, m):
        # Hilbert function of a degree-2 hypersurface in P^{n+1}.
        assert dim_quadric(n, m) == dim_projective(n + 1, m) - dim_projective(
            n + 1, m - 2
        )

    def test_spinor_examples(self):
        assert spinor_rank(3) == 2
        assert spinor_rank(4) == 4
        assert dim_spinor(3, 0) == 0
        assert dim_spinor(3, 1) == 4
        assert dim_spinor(3, 6) == 224

    @given(st.integers(3, 8), st.integers(-3, 0))
    def test_spinor_no_sections_in_nonpositive_twists(self, n, m):
        assert dim_spinor(n, m) == 0


def _series_coefficients(max_d: int) -> list[Fraction]:
    """Power-series oracle: coefficients of sec x + tan x by series division.

    Built directly from sin/cos Taylor series, independently of the
    boustrophedon recurrence under test.
    """
    sin = [
        Fraction((-1) ** (k // 2), math.factorial(k)) if k % 2 else Fraction(0)
        for k in range(max_d + 1)
    ]
    cos = [
        Fraction((-1) ** (k // 2), math.factorial(k)) if k % 2 == 0 else Fraction(0)
        for k in range(max_d + 1)
    ]
    num = [Fraction(1) + sin[0]] + sin[1:]  # 1 + sin x
    # Solve (sec + tan) * cos = 1 + sin term by term.
    out = []
    for d in range(max_d + 1):
        acc = num[d]
        for k in range(1, d + 1):
            acc -= cos[k] * out[d - k]
        out.append(acc / cos[0])
    return out


class TestSecTanCoefficients:
    def test_examples(self):
        assert sec_tan_coefficient(1) == 1
        assert sec_tan_coefficient(2) == Fraction(1, 2)
        assert sec_tan_coefficient(4) == Fraction(5, 24)
        assert sec_tan_coefficient(5) == Fraction(2, 15)
        assert sec_tan_coefficient(11) == Fraction(353792, 39916800)

    def test_against_series_oracle(self):
        oracle = _series_coefficients(14)
        for d in range(1, 15):
            assert sec_tan_coefficient(d) == oracle[d]

    def test_zigzag_integrality(self):
        for d in range(1, 20):
            value = sec_tan_coefficient(d) * math.factorial(d)
            assert value.denominator == 1
            assert value > 0


class TestPolynomial:
    def test_evaluation_and_arith(self):
        f = Polynomial([1, 2, 3])  # 1 + 2x + 3x^2
        g = Polynomial([0, 1])
        assert f(2) == 17
        assert (f + g)(2) == 19
        assert (f - f) == Polynomial.zero()
        assert (f * g)(Fraction(1, 2)) == f(Fraction(1, 2)) / 2

    def test_shifted_power(self):
        f = Polynomial.shifted_power(Fraction(3, 2), 3)
        assert f(Fraction(3, 2)) == 0
        assert f(Fraction(5, 2)) == 1
        assert f.degree == 3

    def test_antiderivative(self):
        f = Polynomial([0, 0, 1])  # x^2
        F = f.antiderivative()
        assert F(2) - F(0) == Fraction(8, 3)

    @given(
        st.lists(rationals, max_size=5),
        st.lists(rationals, max_size=5),
        rationals,
    )
    @settings(max_examples=60)
    def test_mul_matches_pointwise(self, a, b, x):
        f, g = Polynomial(a), Polynomial(b)
        assert (f * g)(x) == f(x) * g(x)
        assert (f + g)(x) == f(x) + g(x)


class TestPiecewisePolynomial:
    def _simple(self):
        return PiecewisePolynomial(
            [Fraction(0), Fraction(1), Fraction(2)],
            [Polynomial([0, 0, 1]), Polynomial([0, 1])],
        )

    def test_evaluation(self):
        f = self._simple()
        assert f(Fraction(1, 2)) == Fraction(1, 4)
        assert f(Fraction(3, 2)) == Fraction(3, 2)
        assert f(Fraction(5)) == 0
        assert f(Fraction(-1)) == 0

    def test_integrate(self):
        f = self._simple()
        assert f.integrate() == Fraction(1, 3) + Fraction(3, 2)
        assert f.integral(Fraction(1, 2), Fraction(3, 2)) == Fraction(
            1, 3
        ) - Fraction(1, 24) + Fraction(5, 8)

    def test_refine_preserves_values_and_integral(self):
        f = self._simple()
        g = f.refine([Fraction(1, 3), Fraction(7, 4)])
        assert g.integrate() == f.integrate()
        for k in range(0, 9):
            x = Fraction(k, 4)
            assert g(x) == f(x)

    def test_continuity_detection(self):
        cont = PiecewisePolynomial(
            [Fraction(0), Fraction(1), Fraction(2)],
            [Polynomial([0, 1]), Polynomial([0, 1])],
        )
        assert cont.is_continuous()
        jump = PiecewisePolynomial(
            [Fraction(0), Fraction(1), Fraction(2)],
            [Polynomial([0, 1]), Polynomial([5])],
        )
        assert not jump.is_continuous()

    def test_agrees_with_exclusion(self):
        f = self._simple()
        g = PiecewisePolynomial(
            [Fraction(0), Fraction(1), Fraction(2)],
            [Polynomial([0, 0, 1]), Polynomial([7])],
        )
        assert not f.agrees_with(g)
        assert f.agrees_with(g, exclude=(Fraction(1), Fraction(2)))

    def test_breakpoints_must_increase(self):
        with pytest.raises(ValueError):
            PiecewisePolynomial(
                [Fraction(1), Fraction(0)], [Polynomial([1])]
            )
