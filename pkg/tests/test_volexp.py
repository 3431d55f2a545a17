"""Variance-expansion assembly: coefficients, moneyness conventions, dual paths."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from asianvol.errors import DomainError
from asianvol.params import MarketParams, ReducedParams
from asianvol.volexp import (
    Order,
    b_coeffs,
    c_coeffs,
    forward_price,
    implied_variance,
    implied_variance_reduced,
    log_moneyness,
    reduced_subleading_coeffs,
    sigma0_sq,
)

# 50-digit reference values
SIGMA0_SQ_AT_2 = 0.3774965079546070
SIGMA0_SQ_AT_E01 = 0.3399597960713152
FWD_5PCT = 1.0254219275204808


def mkt(spot=1.0, rate=0.0, sigma=0.2, maturity=1.0, dividend=0.0):
    return MarketParams(spot=spot, rate=rate, sigma=sigma, maturity=maturity, dividend=dividend)


class TestForwardPrice:
    def test_zero_drift(self):
        assert forward_price(mkt(spot=3.7)) == 3.7

    def test_five_percent(self):
        assert forward_price(mkt(rate=0.05)) == pytest.approx(FWD_5PCT, abs=1e-15)

    def test_linearity_in_spot(self):
        assert forward_price(mkt(spot=2.0, rate=0.05)) == pytest.approx(2 * FWD_5PCT, abs=1e-14)

    def test_series_window_accuracy(self):
        # the small-drift series must meet the expm1 form at the seam
        for rho in (0.999e-6, -0.999e-6, 1.001e-6, -1.001e-6):
            series = 1.0 + rho * (0.5 + rho / 6.0)
            assert abs(series - math.expm1(rho) / rho) < 3e-16  # within a ulp or two
        p = forward_price(mkt(rate=0.999e-6))
        assert p == pytest.approx(1.0 + 0.999e-6 / 2, rel=1e-15)

    def test_dividend_enters_through_drift(self):
        assert forward_price(mkt(rate=0.07, dividend=0.02)) == forward_price(mkt(rate=0.05))


class TestLogMoneyness:
    def test_atm(self):
        assert log_moneyness(1.2345, 1.2345) == 0.0

    def test_definition(self):
        assert log_moneyness(2.0, 1.0) == pytest.approx(math.log(2.0), abs=1e-16)
        assert log_moneyness(1.0, FWD_5PCT) == pytest.approx(-0.02510416449661389, abs=1e-15)

    @pytest.mark.parametrize("k, f", [(0.0, 1.0), (-1.0, 1.0), (1.0, 0.0), (math.inf, 1.0)])
    def test_domain(self, k, f):
        with pytest.raises(DomainError):
            log_moneyness(k, f)


class TestSigma0Sq:
    def test_atm_value(self):
        assert sigma0_sq(1.0, 0.2) == pytest.approx(0.04 / 3.0, rel=1e-15)

    def test_k_two(self):
        assert sigma0_sq(2.0, 1.0) == pytest.approx(SIGMA0_SQ_AT_2, abs=1e-12)

    def test_near_money_closed_form(self):
        assert sigma0_sq(math.exp(0.1), 1.0) == pytest.approx(SIGMA0_SQ_AT_E01, abs=1e-12)

    def test_series_window(self):
        logk = 5e-3
        expected = (1 + logk / 5 - logk**2 / 84 - 17 * logk**3 / 10500) / 3
        assert sigma0_sq(math.exp(logk), 1.0) == pytest.approx(expected, abs=1e-15)

    def test_scale_in_sigma(self):
        assert sigma0_sq(1.7, 0.5) == pytest.approx(0.25 * sigma0_sq(1.7, 1.0), rel=1e-15)

    def test_domain(self):
        with pytest.raises(DomainError):
            sigma0_sq(0.0, 0.2)


class TestCoefficients:
    """Exact rational identities of the O(tau) machinery."""

    def test_c_at_driftless(self):
        c1, c2, c3, c4 = c_coeffs(-1.0)
        assert (c1, c2, c3) == (Fraction(-4, 5), Fraction(57, 1400), Fraction(-1, 875))
        assert c4 == Fraction(3281, 6160000)

    def test_c1_substitutions(self):
        assert c_coeffs(0.0)[0] == Fraction(-1, 20)
        assert c_coeffs(Fraction(1, 3))[0] == Fraction(1, 5)

    def test_reduced_level_skew_convexity(self):
        at = reduced_subleading_coeffs(-1.0)
        assert at.level == Fraction(-488, 4725)
        assert at.skew == Fraction(-544, 23625)
        assert at.convexity == Fraction(12073, 1039500)

    def test_mu_slopes(self):
        lo, hi = reduced_subleading_coeffs(-1.0), reduced_subleading_coeffs(0.0)
        assert hi.level - lo.level == Fraction(2, 3)
        assert hi.convexity - lo.convexity == Fraction(-5, 252)
        assert hi.skew == lo.skew  # the skew coefficient carries no drift dependence

    def test_level_is_linear_in_mu(self):
        a, b, c = (reduced_subleading_coeffs(m).level for m in (-1.0, 0.0, 1.0))
        assert c - b == b - a

    def test_b_unshifted(self):
        assert b_coeffs(-1.0) == (Fraction(0), Fraction(61, 1050))
        b1, b2 = b_coeffs(1.0)
        assert b1 == Fraction(-3)
        assert b2 == Fraction(61, 1050) + Fraction(3, 20)

    @pytest.mark.parametrize("mu", [-1.0, 0.0, 1.0, 2.5])
    def test_b_shifted_kills_b1(self, mu):
        b1t, _ = b_coeffs(mu, shifted=True)
        assert b1t == 0

    @pytest.mark.parametrize("mu", [-1.0, 0.0, 1.0])
    def test_level_matches_b_tilde_combination(self, mu):
        b1t, b2t = b_coeffs(mu, shifted=True)
        assert -Fraction(16, 45) * (2 * b1t + 5 * b2t) == reduced_subleading_coeffs(mu).level


class TestImpliedVariance:
    def test_atm_correction_example(self):
        params = mkt(sigma=0.1, rate=0.02)
        strike = forward_price(params)
        out = implied_variance(strike, params, Order.ATM_CORRECTION)
        assert out.x == 0.0
        assert out.total_sq == pytest.approx(0.0033493544973544974, abs=1e-15)

    def test_leading_atm_driftless(self):
        params = mkt(sigma=0.3)
        out = implied_variance(1.0, params, Order.LEADING)
        assert out.total_sq == pytest.approx(0.03, abs=1e-17)
        assert out.level == out.skew == out.convexity == 0.0
        assert out.total_sq == out.sigma0_sq

    def test_leading_uses_spot_moneyness(self):
        # at K = S0 the leading order is exactly sigma^2/3 whatever the rate
        params = mkt(sigma=0.5, rate=0.18)
        out = implied_variance(1.0, params, Order.LEADING)
        assert out.sigma0_sq == 0.25 / 3.0

    def test_skew_contribution(self):
        params = mkt(sigma=0.5)
        strike = math.exp(0.1)  # drift-free, so A_fwd = S0 and x = 0.1
        lin = implied_variance(strike, params, Order.LINEAR)
        atm = implied_variance(strike, params, Order.ATM_CORRECTION)
        assert lin.skew == pytest.approx(-8.9947089947089947e-6, rel=1e-12)
        assert lin.total_sq - atm.total_sq == pytest.approx(lin.skew, rel=1e-12)

    def test_convexity_contribution(self):
        params = mkt(sigma=0.5, rate=0.03)
        strike = forward_price(params) * math.exp(0.2)
        quad = implied_variance(strike, params, Order.QUADRATIC)
        lin = implied_variance(strike, params, Order.LINEAR)
        expected = 0.25 * (12073.0 / 16632000.0 * 0.25 - 5.0 / 2016.0 * 0.03) * 0.04
        assert quad.total_sq - lin.total_sq == pytest.approx(expected, rel=1e-12)

    def test_contributions_sum(self):
        params = mkt(sigma=0.4, rate=0.07)
        out = implied_variance(1.3, params, Order.QUADRATIC)
        total = out.sigma0_sq + out.level + out.skew + out.convexity
        assert out.total_sq == pytest.approx(total, rel=1e-16)

    def test_atm_continuity_across_series_switch(self):
        # strikes straddling the |log(K/A_fwd)| = 1e-2 seam of the leading term
        params = mkt(sigma=0.2, rate=0.03)
        a_fwd = forward_price(params)
        for sign in (1.0, -1.0):
            k_in = a_fwd * math.exp(sign * (1e-2 - 1e-6))
            k_out = a_fwd * math.exp(sign * (1e-2 + 1e-6))
            v_in = implied_variance(k_in, params, Order.LINEAR).total_sq
            v_out = implied_variance(k_out, params, Order.LINEAR).total_sq
            slope = abs(v_out - v_in) / 2e-6
            # remove the smooth variation: compare against a central slope estimate
            v_mid1 = implied_variance(a_fwd * math.exp(sign * 0.9e-2), params, Order.LINEAR).total_sq
            v_mid2 = implied_variance(a_fwd * math.exp(sign * 1.1e-2), params, Order.LINEAR).total_sq
            smooth = abs(v_mid2 - v_mid1) / 2e-3
            assert abs(v_out - v_in) <= smooth * 2e-6 + 1e-10

    def test_nonpositive_variance_rejected(self):
        params = mkt(sigma=3.0, maturity=10.0)
        with pytest.raises(DomainError):
            implied_variance(1.0, params, Order.ATM_CORRECTION)

    def test_dividend_substitution(self):
        # r -> r - q in the variance; discounting is the pricer's business
        with_div = mkt(rate=0.07, dividend=0.02, sigma=0.3)
        no_div = mkt(rate=0.05, sigma=0.3)
        v1 = implied_variance(1.1, with_div, Order.QUADRATIC)
        v2 = implied_variance(1.1, no_div, Order.QUADRATIC)
        assert v1.total_sq == v2.total_sq


class TestReducedPathAgreement:
    @pytest.mark.parametrize("order", list(Order))
    def test_fixed_grid(self, order):
        grid = [
            (1.0, 0.05, 0.2, 0.5, 1.1),
            (2.0, 0.18, 0.3, 1.0, 2.0),
            (1.9, 0.05, 0.5, 1.0, 2.0),
            (0.7, -0.01, 0.45, 2.0, 0.6),
        ]
        for spot, rate, sigma, maturity, strike in grid:
            params = mkt(spot=spot, rate=rate, sigma=sigma, maturity=maturity)
            direct = implied_variance(strike, params, order).total_sq
            reduced = implied_variance_reduced(strike, params, order)
            assert reduced == pytest.approx(direct, rel=1e-14)

    @settings(max_examples=60, deadline=None)
    @given(
        spot=st.floats(0.5, 5.0),
        rate=st.floats(-0.05, 0.2),
        sigma=st.floats(0.05, 0.8),
        maturity=st.floats(0.1, 3.0),
        x=st.floats(-0.5, 0.5),
    )
    def test_random(self, spot, rate, sigma, maturity, x):
        params = mkt(spot=spot, rate=rate, sigma=sigma, maturity=maturity)
        strike = forward_price(params) * math.exp(x)
        direct = implied_variance(strike, params, Order.QUADRATIC).total_sq
        reduced = implied_variance_reduced(strike, params, Order.QUADRATIC)
        assert reduced == pytest.approx(direct, rel=1e-14)


class TestReducedParams:
    def test_round_trip(self):
        params = mkt(spot=1.0, rate=0.07, sigma=0.41, maturity=1.7)
        red = ReducedParams.from_market(params)
        back = red.to_market(sigma=params.sigma)
        assert back.maturity == pytest.approx(params.maturity, rel=1e-15)
        assert back.rate == pytest.approx(params.drift, rel=1e-15)

    def test_values(self):
        red = ReducedParams.from_market(mkt(sigma=0.2, rate=0.02, maturity=1.0))
        assert red.tau == pytest.approx(0.01, rel=1e-15)
        assert red.mu == pytest.approx(0.0, abs=1e-15)
