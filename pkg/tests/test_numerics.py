"""High-precision checks: Gamma quotients, accelerated series, quadrature."""

from fractions import Fraction

import pytest
from mpmath import mp

from catconv.hyperseries import DegenerateLambda
from catconv.numerics import (
    GammaQuotientSpec,
    NonConvergent,
    PoleError,
    dixon_check,
    dminus_check,
    gamma_quotient,
    gamma_selftest,
    integral_check,
    integral_value,
    jacobi_rule,
    linear4f3_check,
    log_gamma,
)

F = Fraction


def as_mpf(x):
    if isinstance(x, Fraction):
        return mp.mpf(x.numerator) / mp.mpf(x.denominator)
    return mp.mpf(x)


def close(x, y, eps):
    with mp.workdps(80):
        scale = max(1, abs(as_mpf(y)))
        return abs(as_mpf(x) - as_mpf(y)) <= mp.mpf(eps) * scale


class TestLogGamma:
    def test_gamma_one_is_one(self):
        assert close(log_gamma(1, 40), 0, "1e-38")

    def test_gamma_half_is_sqrt_pi(self):
        with mp.workdps(60):
            value = mp.e ** log_gamma(F(1, 2), 50)
            assert close(value, mp.sqrt(mp.pi), "1e-45")

    def test_nonpositive_rejected(self):
        with pytest.raises(ValueError):
            log_gamma(0)
        with pytest.raises(ValueError):
            log_gamma(F(-1, 2))

    def test_precision_floor(self):
        with pytest.raises(ValueError):
            log_gamma(1, precision=5)


class TestGammaQuotient:
    def test_full_cancellation(self):
        spec = GammaQuotientSpec((F(7, 3),), (F(7, 3),))
        assert close(gamma_quotient(spec, 40), 1, "1e-39")

    def test_reflection_product(self):
        # Gamma(1/4) Gamma(3/4) = pi sqrt(2)
        spec = GammaQuotientSpec((F(1, 4), F(3, 4)), ())
        with mp.workdps(60):
            assert close(gamma_quotient(spec, 40), mp.pi * mp.sqrt(2), "1e-38")

    def test_negative_half_integer_argument(self):
        # Gamma(-3/2) = 4 sqrt(pi) / 3
        spec = GammaQuotientSpec((F(-3, 2),), ())
        with mp.workdps(60):
            expected = 4 * mp.sqrt(mp.pi) / 3
            assert close(gamma_quotient(spec, 40), expected, "1e-38")

    def test_negative_arguments_cancel_in_ratio(self):
        # Gamma(-3/2)/Gamma(-1/2) = -2/3 by the recurrence
        spec = GammaQuotientSpec((F(-3, 2),), (F(-1, 2),))
        assert close(gamma_quotient(spec, 40), F(-2, 3), "1e-38")

    def test_append_invariance(self):
        base = GammaQuotientSpec((F(5, 3), F(1, 2)), (F(9, 4),))
        extended = GammaQuotientSpec(
            (F(5, 3), F(1, 2), F(11, 7)), (F(9, 4), F(11, 7))
        )
        for precision in (20, 40, 60):
            a = gamma_quotient(base, precision)
            b = gamma_quotient(extended, precision)
            assert close(a, b, mp.mpf(10) ** -(precision - 2))

    def test_exact_pole_rejected(self):
        with pytest.raises(PoleError):
            gamma_quotient(GammaQuotientSpec((F(-3),), ()), 40)
        with pytest.raises(PoleError):
            gamma_quotient(GammaQuotientSpec((F(1),), (F(0),)), 40)

    def test_near_pole_rejected(self):
        # within 10^-20 of the pole at -2 when precision is 40
        x = F(-2) + F(1, 10**30)
        with pytest.raises(PoleError):
            gamma_quotient(GammaQuotientSpec((x,), ()), 40)

    def test_just_outside_near_pole_band_accepted(self):
        x = F(-2) + F(1, 10**10)
        gamma_quotient(GammaQuotientSpec((x,), ()), 40)


class TestGammaSelftest:
    @pytest.mark.parametrize("precision", [20, 40, 60])
    def test_all_nine_checks_pass(self, precision):
        report = gamma_selftest(precision)
        assert report.ok
        assert report.cases_run == 9


class TestSeriesChecks:
    def test_dixon_convergent_point(self):
        report = dixon_check(F(1, 2), F(1, 4), F(1, 4), precision=40)
        assert report.ok, report.failures

    @pytest.mark.parametrize("a", [-2, -4, -6])
    def test_dixon_terminating_matches_exact(self, a):
        report = dixon_check(a, F(1, 3), F(1, 5), precision=40)
        assert report.ok, report.failures

    def test_dixon_pole_in_lower_parameter(self):
        # 1 + a - c = 0
        with pytest.raises(PoleError):
            dixon_check(1, 2, 2, precision=40)

    def test_dixon_nonconvergent_margin(self):
        with pytest.raises(NonConvergent):
            dixon_check(1, F(3, 2), F(3, 2), precision=40)

    def test_dminus_convergent_point(self):
        report = dminus_check(3, F(1, 2), F(1, 2), precision=40)
        assert report.ok, report.failures

    @pytest.mark.parametrize("a", [-3, -5])
    def test_dminus_terminating(self, a):
        report = dminus_check(a, F(1, 3), F(1, 5), precision=40)
        assert report.ok, report.failures

    def test_linear4f3_convergent_point(self):
        report = linear4f3_check(4, F(1, 2), F(1, 2), 1, precision=40)
        assert report.ok, report.failures

    def test_linear4f3_lambda_equals_c_minus_one(self):
        report = linear4f3_check(6, F(3, 2), 1, F(1, 2), precision=40)
        assert report.ok, report.failures

    @pytest.mark.parametrize("case", [(-2, 2), (-4, 2), (-7, 3)])
    def test_linear4f3_terminating(self, case):
        a, lam = case
        report = linear4f3_check(a, F(1, 3), F(1, 5), lam, precision=40)
        assert report.ok, report.failures

    def test_linear4f3_zero_lambda_rejected(self):
        with pytest.raises(DegenerateLambda):
            linear4f3_check(4, F(1, 2), F(1, 2), 0, precision=40)

    def test_higher_precision_still_converges(self):
        report = dixon_check(F(1, 2), F(1, 4), F(1, 4), precision=60)
        assert report.ok


class TestJacobiRule:
    def test_legendre_two_point_nodes(self):
        rule = jacobi_rule(0, 0, 2, precision=40)
        with mp.workdps(60):
            low = (3 - mp.sqrt(3)) / 6
            high = (3 + mp.sqrt(3)) / 6
            nodes = sorted(rule.nodes)
            assert close(nodes[0], low, "1e-38")
            assert close(nodes[1], high, "1e-38")
            for w in rule.weights:
                assert close(w, F(1, 2), "1e-38")

    def test_single_node_half_integer_weight(self):
        rule = jacobi_rule(F(1, 2), F(-1, 2), 1, precision=40)
        with mp.workdps(60):
            assert close(rule.nodes[0], F(1, 4), "1e-38")
            assert close(rule.weights[0], mp.pi / 2, "1e-38")

    def test_mass_is_beta_moment(self):
        rule = jacobi_rule(F(1, 2), F(3, 2), 5, precision=40)
        with mp.workdps(60):
            expected = mp.beta(mp.mpf(5) / 2, mp.mpf(3) / 2)
            assert close(rule.mass(), expected, "1e-37")

    def test_degree_exactness(self):
        # m nodes must integrate x^d exactly for d <= 2m - 1.
        alpha, beta, m = F(1, 2), F(-1, 2), 6
        rule = jacobi_rule(alpha, beta, m, precision=40)
        with mp.workdps(70):
            for d in range(2 * m):
                quad = mp.fsum(
                    w * x**d for x, w in zip(rule.nodes, rule.weights)
                )
                exact = mp.beta(as_mpf(beta + 1 + d), as_mpf(alpha + 1))
                assert close(quad, exact, "1e-36"), d

    def test_weight_exponents_must_exceed_minus_one(self):
        with pytest.raises(ValueError):
            jacobi_rule(-1, 0, 3)
        with pytest.raises(ValueError):
            jacobi_rule(0, F(-3, 2), 3)

    def test_node_count_must_be_positive(self):
        with pytest.raises(ValueError):
            jacobi_rule(0, 0, 0)

    def test_degenerate_parameter_sum(self):
        # alpha + beta = -1 exercises the cancelled first off-diagonal term
        rule = jacobi_rule(F(-1, 2), F(-1, 2), 4, precision=40)
        assert all(0 < node < 1 for node in rule.nodes)
        with mp.workdps(60):
            assert close(rule.mass(), mp.pi, "1e-37")


class TestIntegrals:
    def test_base_case_is_pi_squared_over_four(self):
        quadrature, closed, _ = integral_value("thm-a", 0, 0, precision=40)
        with mp.workdps(60):
            assert close(closed, mp.pi**2 / 4, "1e-38")
            assert close(quadrature, mp.pi**2 / 4, "1e-32")

    def test_symmetric_weight_odd_case_vanishes(self):
        quadrature, closed, mass = integral_value("thm-a", 3, 1, precision=40)
        assert closed == 0
        with mp.workdps(60):
            assert abs(quadrature) <= mp.mpf("1e-32") * mass

    def test_skew_weight_small_case(self):
        _, closed, _ = integral_value("thm-b", 2, 1, precision=40)
        with mp.workdps(60):
            assert close(closed, 3 * mp.pi**2 / 256, "1e-38")

    @pytest.mark.parametrize("which", ["thm-a", "thm-b"])
    @pytest.mark.parametrize("n", range(0, 7))
    def test_check_passes_both_parities(self, which, n):
        report = integral_check(which, n, 2, precision=40)
        assert report.ok, report.failures

    def test_more_nodes_than_needed_changes_nothing(self):
        for m in (4, 8, 12):
            report = integral_check("thm-a", 4, 1, precision=40, m=m)
            assert report.ok, (m, report.failures)

    def test_caps_enforced(self):
        with pytest.raises(ValueError):
            integral_check("thm-a", 13, 0)
        with pytest.raises(ValueError):
            integral_check("thm-b", 2, 7)

    def test_unknown_family_rejected(self):
        with pytest.raises(ValueError):
            integral_value("thm-z", 0, 0)
