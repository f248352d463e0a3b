import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate, special

from fracfield.errors import DomainError, NonIntegrableError, SmoothnessError
from fracfield.fracops import (
    FracSpec,
    SampledFunction,
    Scheme,
    branchcut_series_limit,
    branchcut_series_partial,
    branchcut_series_terms,
    caputo_derivative,
    caputo_monomial_rule,
    cauchy_like_fracderiv,
    cauchy_like_monomial_rule,
    fd_weights,
    frac_monomial_rule,
    rl_integral,
)

SQRT_PI = math.sqrt(math.pi)


def mono(p):
    return lambda t: np.asarray(t, dtype=float) ** p


def one(t):
    return np.ones_like(np.asarray(t, dtype=float))


class TestMonomialRule:
    def test_trivial(self):
        assert frac_monomial_rule(0, 1, 1) == pytest.approx(1.0, rel=1e-15)
        assert frac_monomial_rule(1, 1, 2) == pytest.approx(2.0, rel=1e-15)

    def test_half_order(self):
        assert 4 / (3 * SQRT_PI) == pytest.approx(0.7522527780636751, rel=1e-15)
        assert frac_monomial_rule(1, 0.5, 1) == pytest.approx(4 / (3 * SQRT_PI), rel=1e-13)

    @pytest.mark.parametrize("p,alpha", [(0.5, 0.3), (2.0, 1.7), (3.0, 0.5)])
    def test_against_quadrature(self, p, alpha):
        z = 1.3
        # t^p and (z - t)^(alpha-1) both go in the algebraic weight
        ref = integrate.quad(lambda t: 1.0, 0, z, weight="alg", wvar=(p, alpha - 1), epsabs=0, epsrel=1e-13)[0]
        ref /= math.gamma(alpha)
        assert frac_monomial_rule(p, alpha, z) == pytest.approx(ref, rel=1e-12)

    @pytest.mark.parametrize("args", [(-1, 0.5, 1), (0, 0.5, 0), (0, 0, 1), (0, -0.5, 1)])
    def test_domain(self, args):
        with pytest.raises(DomainError):
            frac_monomial_rule(*args)

    def test_caputo_rule(self):
        assert caputo_monomial_rule(0, 0.5, 1) == 0.0
        assert caputo_monomial_rule(1, 1.5, 2) == 0.0
        assert caputo_monomial_rule(2, 0.5, 1) == pytest.approx(8 / (3 * SQRT_PI), rel=1e-13)
        with pytest.raises(DomainError):
            caputo_monomial_rule(0.5, 1.5, 1)

    def test_cauchy_like_rule(self):
        # prefactor sin(pi a) Gamma(a+1) / pi, integral z^(p-a) / (p-a)
        expected = math.sin(0.5 * math.pi) * math.gamma(1.5) / math.pi * 1.0 / 1.5
        assert cauchy_like_monomial_rule(2, 0.5, 1) == pytest.approx(expected, rel=1e-14)
        with pytest.raises(DomainError):
            cauchy_like_monomial_rule(0.5, 0.5, 1)


class TestRLIntegral:
    def test_ordinary_integral(self):
        assert rl_integral(mono(1), FracSpec(1.0), 2.0) == pytest.approx(2.0, rel=1e-12)

    def test_constant_half(self):
        assert rl_integral(one, FracSpec(0.5), 1.0) == pytest.approx(2 / SQRT_PI, rel=1e-12)

    def test_linear_half(self):
        assert rl_integral(mono(1), FracSpec(0.5), 1.0) == pytest.approx(4 / (3 * SQRT_PI), rel=1e-12)

    @pytest.mark.parametrize("alpha", [0.25, 0.5, 0.75, 1.5])
    @pytest.mark.parametrize("p", [0, 1, 2])
    def test_accuracy_at_2048(self, alpha, p):
        got = rl_integral(mono(p), FracSpec(alpha), 1.0)
        assert abs(got - frac_monomial_rule(p, alpha, 1.0)) <= 1e-6

    def test_convergence_order(self):
        exact = frac_monomial_rule(2, 0.5, 1.0)
        errs = [abs(rl_integral(mono(2), FracSpec(0.5, n_nodes=n), 1.0) - exact) for n in (64, 128, 256, 512)]
        ratios = [a / b for a, b in zip(errs, errs[1:])]
        assert min(ratios) >= 3.0

    def test_rough_integrand_converges(self):
        # sqrt(t): derivative blows up at the base point
        exact = frac_monomial_rule(0.5, 0.5, 1.0)
        errs = [abs(rl_integral(mono(0.5), FracSpec(0.5, n_nodes=n), 1.0) - exact) for n in (128, 256, 512)]
        assert errs[2] < errs[1] < errs[0]
        assert errs[2] < 1e-5

    def test_shifted_base_point(self):
        # I^(1/2) e^t from 1 to 2 = e^2 * P(1/2, 1)
        expected = math.e**2 * special.gammainc(0.5, 1.0)
        got = rl_integral(np.exp, FracSpec(0.5, z0=1.0), 2.0)
        assert got == pytest.approx(expected, rel=1e-6)

    @pytest.mark.parametrize("p", [0, 1, 3, 7])
    def test_gauss_jacobi_exact_for_polynomials(self, p):
        spec = FracSpec(0.5, scheme=Scheme.GAUSS_JACOBI, n_nodes=8)
        assert rl_integral(mono(p), spec, 1.0) == pytest.approx(frac_monomial_rule(p, 0.5, 1.0), rel=1e-13)

    def test_scheme_from_string(self):
        assert FracSpec(0.5, scheme="gauss_jacobi").scheme is Scheme.GAUSS_JACOBI

    def test_pointwise_evaluator(self):
        f = SampledFunction(lambda t: math.cos(t), smoothness_hint=5)
        vec = rl_integral(np.cos, FracSpec(0.5, n_nodes=256), 1.0)
        assert rl_integral(f, FracSpec(0.5, n_nodes=256), 1.0) == pytest.approx(vec, rel=1e-15)

    @pytest.mark.parametrize("alpha,z", [(0.0, 1.0), (-0.5, 1.0), (0.5, 0.0), (0.5, -1.0)])
    def test_domain(self, alpha, z):
        with pytest.raises(DomainError):
            rl_integral(one, FracSpec(alpha), z)

    def test_too_few_nodes(self):
        with pytest.raises(DomainError):
            FracSpec(0.5, n_nodes=1)

    @pytest.mark.parametrize("a,b", [(0.5, 0.5), (0.3, 0.7)])
    @pytest.mark.parametrize("p", [0, 2])
    def test_semigroup(self, a, b, p):
        spec = FracSpec(a, n_nodes=512)

        def inner(t):
            return np.array([rl_integral(mono(p), spec, x) if x > 0 else 0.0 for x in np.atleast_1d(t)])

        got = rl_integral(inner, FracSpec(b, n_nodes=512), 1.0)
        assert got == pytest.approx(frac_monomial_rule(p, a + b, 1.0), rel=1e-5)

    @settings(max_examples=40, deadline=None)
    @given(
        a=st.floats(-5, 5),
        b=st.floats(-5, 5),
        alpha=st.floats(0.1, 2.0),
    )
    def test_linearity(self, a, b, alpha):
        spec = FracSpec(alpha, n_nodes=128)
        combo = rl_integral(lambda t: a * np.sin(t) + b * t**2, spec, 1.5)
        parts = a * rl_integral(np.sin, spec, 1.5) + b * rl_integral(mono(2), spec, 1.5)
        assert combo == pytest.approx(parts, rel=1e-12, abs=1e-13)


class TestCaputo:
    @pytest.mark.parametrize("alpha", [0.25, 0.5, 0.75])
    def test_kills_constants(self, alpha):
        assert abs(caputo_derivative(lambda t: 3.0 + 0 * t, FracSpec(alpha), 1.0)) <= 1e-10

    def test_linear(self):
        assert caputo_derivative(mono(1), FracSpec(0.5), 1.0) == pytest.approx(2 / SQRT_PI, rel=1e-9)

    def test_quadratic(self):
        assert 8 / (3 * SQRT_PI) == pytest.approx(1.5045055561273502, rel=1e-15)
        assert caputo_derivative(mono(2), FracSpec(0.5), 1.0) == pytest.approx(8 / (3 * SQRT_PI), rel=1e-9)

    @pytest.mark.parametrize("alpha,p,tol", [(1.5, 3, 1e-7), (0.3, 2, 1e-7), (2.5, 4, 1e-6)])
    def test_higher_orders(self, alpha, p, tol):
        # third differences at step 1e-4 carry ~eps/h^3 rounding
        got = caputo_derivative(mono(p), FracSpec(alpha), 1.0)
        assert got == pytest.approx(caputo_monomial_rule(p, alpha, 1.0), rel=tol)

    def test_shifted(self):
        # Caputo of (t - 1)^2 from 1 equals that of t^2 from 0 at the shifted point
        got = caputo_derivative(lambda t: (t - 1.0) ** 2, FracSpec(0.5, z0=1.0), 2.0)
        assert got == pytest.approx(caputo_monomial_rule(2, 0.5, 1.0), rel=1e-8)

    @pytest.mark.parametrize("alpha", [1.0, 2.0, 0.0, -0.5])
    def test_integer_or_negative_order(self, alpha):
        with pytest.raises(DomainError):
            caputo_derivative(mono(2), FracSpec(alpha), 1.0)

    def test_smoothness(self):
        f = SampledFunction(np.abs, smoothness_hint=0)
        with pytest.raises(SmoothnessError):
            caputo_derivative(f, FracSpec(0.5), 1.0)
        f2 = SampledFunction(mono(3), smoothness_hint=1)
        with pytest.raises(SmoothnessError):
            caputo_derivative(f2, FracSpec(1.5), 1.0)
        assert caputo_derivative(SampledFunction(mono(1), 1), FracSpec(0.5), 1.0) == pytest.approx(
            2 / SQRT_PI, rel=1e-9
        )

    def test_smoothness_error_is_domain_error(self):
        assert issubclass(SmoothnessError, DomainError)


class TestCauchyLike:
    def test_constant_negative_half(self):
        expected = -2 / SQRT_PI
        assert expected == pytest.approx(-1.1283791670955126, rel=1e-15)
        assert cauchy_like_fracderiv(one, -0.5, 0.0, 1.0) == pytest.approx(expected, rel=1e-8)

    def test_magnitude_matches_rl(self):
        got = cauchy_like_fracderiv(one, -0.5, 0.0, 1.0)
        assert abs(got) == pytest.approx(rl_integral(one, FracSpec(0.5), 1.0), rel=1e-8)

    def test_direct_quadrature(self):
        # prefactor and integral evaluated independently
        a = -0.3
        ref = integrate.quad(lambda t: math.cos(t), 0, 1, weight="alg", wvar=(-(a + 1), 0))[0]
        ref *= math.sin(math.pi * a) * math.gamma(a + 1) / math.pi
        assert cauchy_like_fracderiv(np.cos, a, 0.0, 1.0) == pytest.approx(ref, rel=1e-6)
        fine = cauchy_like_fracderiv(np.cos, a, 0.0, 1.0, n_nodes=8192)
        assert fine == pytest.approx(ref, rel=1e-7)

    @pytest.mark.parametrize("alpha,p", [(0.5, 2), (0.5, 1), (1.5, 3), (-0.5, 0.5)])
    def test_positive_orders(self, alpha, p):
        got = cauchy_like_fracderiv(mono(p), alpha, 0.0, 1.0)
        assert got == pytest.approx(cauchy_like_monomial_rule(p, alpha, 1.0), rel=1e-6)

    def test_singular_quotient(self):
        # f / t is itself singular here, so accuracy drops to the first-cell error
        got = cauchy_like_fracderiv(mono(0.75), 0.25, 0.0, 1.0)
        assert got == pytest.approx(cauchy_like_monomial_rule(0.75, 0.25, 1.0), rel=1e-4)

    def test_zero_function(self):
        for a in (-0.5, 0.5, 1.5):
            assert cauchy_like_fracderiv(lambda t: 0.0 * t, a, 0.0, 1.0) == 0.0

    @pytest.mark.parametrize("alpha", [0.0, 1.0, -1.0, 2.0])
    def test_integer_alpha(self, alpha):
        with pytest.raises(DomainError):
            cauchy_like_fracderiv(one, alpha, 0.0, 1.0)

    @pytest.mark.parametrize("f,alpha", [(one, 0.5), (mono(1), 1.5), (mono(0.5), 0.7)])
    def test_non_integrable(self, f, alpha):
        with pytest.raises(NonIntegrableError):
            cauchy_like_fracderiv(f, alpha, 0.0, 1.0)

    def test_bad_interval(self):
        with pytest.raises(DomainError):
            cauchy_like_fracderiv(one, -0.5, 1.0, 1.0)

    @settings(max_examples=40, deadline=None)
    @given(a=st.floats(-5, 5), b=st.floats(-5, 5), alpha=st.floats(-0.9, -0.1))
    def test_linearity(self, a, b, alpha):
        combo = cauchy_like_fracderiv(lambda t: a * np.exp(t) + b * t, alpha, 0.0, 1.0, n_nodes=128)
        parts = a * cauchy_like_fracderiv(np.exp, alpha, 0.0, 1.0, n_nodes=128) + b * cauchy_like_fracderiv(
            mono(1), alpha, 0.0, 1.0, n_nodes=128
        )
        assert combo == pytest.approx(parts, rel=1e-12, abs=1e-13)


class TestBranchCutSeries:
    def test_ratio_zero(self):
        sums = branchcut_series_partial(0.5, 0.0, 2.0, 5)
        assert sums[0] == branchcut_series_limit(0.5, 0.0, 2.0)
        assert all(s == sums[0] for s in sums)

    def test_length(self):
        assert len(branchcut_series_partial(-0.5, 0.3, 1.0, 1)) == 1
        assert len(branchcut_series_partial(-0.5, 0.3, 1.0, 17)) == 17

    @pytest.mark.parametrize("n", [1, 5, 10, 20, 40])
    def test_geometric_tail(self, n):
        # f = 1, alpha = -1/2: the terms are bounded by M 0.5^k with M the first term
        sums = branchcut_series_partial(-0.5, 0.5, 1.0, n)
        limit = branchcut_series_limit(-0.5, 0.5, 1.0)
        M = abs(sums[0])
        assert abs(sums[-1] - limit) <= M * 0.5**n / (1 - 0.5)

    @pytest.mark.parametrize("alpha", [-0.5, 0.5, 1.5])
    def test_converges(self, alpha):
        sums = branchcut_series_partial(alpha, 0.25, 1.0, 80)
        assert sums[-1] == pytest.approx(branchcut_series_limit(alpha, 0.25, 1.0), rel=1e-13)

    def test_m_test(self):
        sums = np.array(branchcut_series_partial(-0.5, 0.5, 1.0, 42))
        diffs = np.abs(np.diff(sums))
        M = diffs[0]
        assert np.all(diffs <= M * 0.5 ** np.arange(diffs.size) * (1 + 1e-12))

    def test_terms(self):
        terms = branchcut_series_terms(0.5, 0.2, 4)
        assert [t.index for t in terms] == [0, 1, 2, 3]
        assert [t.power_of_denominator for t in terms] == [1.5, 2.5, 3.5, 4.5]
        assert terms[0].coefficient == 1.0
        assert terms[1].coefficient == pytest.approx(1.5 * 0.2, rel=1e-15)
        z = 1.3
        partial = branchcut_series_partial(0.5, 0.2, z, 4)[-1]
        assert sum(t.coefficient / z**t.power_of_denominator for t in terms) == pytest.approx(partial, rel=1e-14)

    @pytest.mark.parametrize("z0,z,n", [(1.0, 1.0, 3), (-2.0, 1.0, 3), (0.5, 0.0, 3), (0.5, -1.0, 3), (0.1, 1.0, 0)])
    def test_domain(self, z0, z, n):
        with pytest.raises(DomainError):
            branchcut_series_partial(0.5, z0, z, n)


class TestFiniteDifferences:
    def test_central_second(self):
        assert fd_weights([-1, 0, 1], 2) == [1, -2, 1]

    def test_central_first(self):
        assert fd_weights([-1, 0, 1], 1) == [Fraction(-1, 2), 0, Fraction(1, 2)]

    def test_forward_first(self):
        assert fd_weights([0, 1, 2], 1) == [Fraction(-3, 2), 2, Fraction(-1, 2)]

    @pytest.mark.parametrize("offsets,order", [([-2, -1, 0, 1, 2], 3), ([0, 1, 2, 3, 4], 2), ([0, -1, -2, -3], 2)])
    def test_exact_on_polynomials(self, offsets, order):
        w = fd_weights(offsets, order)
        for deg in range(len(offsets)):
            approx = sum(c * Fraction(o) ** deg for c, o in zip(w, offsets))
            exact = math.factorial(deg) if deg == order else 0
            assert approx == exact
