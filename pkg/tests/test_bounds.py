"""Closed-form coefficient and lower-bound tests. Frozen values were computed
with independent inline oracles (plain math expressions re-deriving each
formula from scratch) before being pinned here."""

import math

import pytest

from rsma.bounds import (
    MrtBoundParams,
    ZfBoundParams,
    lb_common_mrt,
    lb_common_zf,
    lb_private_mrt,
    lb_private_zf,
    mrt_bound_params,
    rho_mrt,
    rho_zf,
    zf_bound_params,
)
from rsma.channel import SystemConfig
from rsma.precoding import UserGroups, default_groups
from rsma.specfun import EULER_GAMMA

HARMONIC_8 = sum(1.0 / i for i in range(1, 9))  # psi(9) = H_8 - gamma


def make_config(n=4, k=6, power=100.0, v=None):
    return SystemConfig(
        n_antennas=n,
        n_users=k,
        power=power,
        large_scale=v if v is not None else (1.0,) * k,
        trials=1,
        seed=0,
    )


class TestRhoZf:
    def test_four_six(self):
        # m = 4 * (6 - 4 + 1) = 12, so rho = (4/11) e^{-gamma - 1/22}.
        oracle = 4.0 / 11.0 * math.exp(-EULER_GAMMA - 1.0 / 22.0)
        assert rho_zf(4, 6) == pytest.approx(oracle, rel=1e-14)
        assert rho_zf(4, 6) == pytest.approx(0.1950945195850166, abs=1e-12)

    def test_smallest_system(self):
        # N = 1, K = 2: m = 2, rho = e^{-gamma - 1/2}.
        assert rho_zf(1, 2) == pytest.approx(math.exp(-EULER_GAMMA - 0.5), rel=1e-14)
        assert rho_zf(1, 2) == pytest.approx(0.3405423909697374, abs=1e-12)

    def test_rounding_of_noninteger_products(self):
        # The denominator uses the nearest integer to N (K - N + 1); for
        # integer N and K the product is already integral, so the rounding
        # step must be the identity there.
        for n in (1, 2, 3, 8):
            for k in (n + 1, n + 3):
                m = n * (k - n + 1)
                expected = n / (m - 1) * math.exp(-EULER_GAMMA - 1.0 / (2 * (m - 1)))
                assert rho_zf(n, k) == pytest.approx(expected, rel=1e-14)

    def test_lies_in_unit_interval(self):
        for n in range(1, 33):
            for k in range(n + 1, n + 9):
                assert 0.0 < rho_zf(n, k) < 1.0

    def test_rejects_underloaded(self):
        with pytest.raises(ValueError):
            rho_zf(4, 4)
        with pytest.raises(ValueError):
            rho_zf(4, 3)


class TestRhoMrt:
    def test_four_six(self):
        # d = (4 + 6 - 1) * 6 - 1 = 53.
        oracle = 6.0 / 53.0 * math.exp(-EULER_GAMMA - 1.0 / 106.0)
        assert rho_mrt(4, 6) == pytest.approx(oracle, rel=1e-14)
        assert rho_mrt(4, 6) == pytest.approx(0.06296463423955447, abs=1e-12)

    def test_smallest_system(self):
        # N = 1, K = 2: d = 3.
        oracle = 2.0 / 3.0 * math.exp(-EULER_GAMMA - 1.0 / 6.0)
        assert rho_mrt(1, 2) == pytest.approx(oracle, rel=1e-14)
        assert rho_mrt(1, 2) == pytest.approx(0.3168434614039269, abs=1e-12)

    def test_below_zf_coefficient(self):
        # Matched filtering leaks interference everywhere, so its common
        # stream coefficient is much smaller at (4, 6).
        assert rho_mrt(4, 6) < rho_zf(4, 6)

    def test_lies_in_unit_interval(self):
        for n in range(1, 33):
            for k in range(n + 1, n + 9):
                assert 0.0 < rho_mrt(n, k) < 1.0

    def test_rejects_underloaded(self):
        with pytest.raises(ValueError):
            rho_mrt(2, 2)


class TestParamFactories:
    def test_zf_sigma_formula(self):
        # sigma = v_min_g1 * (P / N) * e^{psi(1)} = (100 / 4) e^{-gamma}.
        cfg = make_config()
        params = zf_bound_params(cfg, default_groups(cfg))
        assert params.sigma == pytest.approx(25.0 * math.exp(-EULER_GAMMA), rel=1e-14)
        assert params.sigma == pytest.approx(14.036487089172129, abs=1e-10)
        assert params.v_min_g1 == 1.0

    def test_zf_uses_group1_minimum_only(self):
        # Global minimum sits in group 2; sigma must ignore it.
        cfg = make_config(2, 3, v=(0.5, 0.8, 0.1))
        params = zf_bound_params(cfg, UserGroups(g1=(0, 1), g2=(2,)))
        assert params.v_min_g1 == 0.5
        assert params.sigma == pytest.approx(
            0.5 * 50.0 * math.exp(-EULER_GAMMA), rel=1e-14
        )

    def test_mrt_alpha_lambda_formulas(self):
        # alpha = (P / K) e^{psi(N + K - 1)} with psi(9) = H_8 - gamma;
        # lam = P (K - 1) / K.
        cfg = make_config()
        params = mrt_bound_params(cfg)
        alpha_oracle = 100.0 / 6.0 * math.exp(HARMONIC_8 - EULER_GAMMA)
        assert params.alpha == pytest.approx(alpha_oracle, rel=1e-13)
        assert params.alpha == pytest.approx(141.74819299779625, abs=1e-8)
        assert params.lam == pytest.approx(100.0 * 5.0 / 6.0, rel=1e-15)

    def test_mrt_uses_global_minimum(self):
        cfg = make_config(2, 3, v=(0.5, 0.8, 0.1))
        params = mrt_bound_params(cfg)
        assert params.v_min == pytest.approx(0.1)

    def test_param_validation(self):
        with pytest.raises(ValueError):
            ZfBoundParams(rho=1.5, sigma=1.0, v_min_g1=1.0)
        with pytest.raises(ValueError):
            ZfBoundParams(rho=0.2, sigma=0.0, v_min_g1=1.0)
        with pytest.raises(ValueError):
            MrtBoundParams(rho=0.0, alpha=1.0, lam=1.0, v_min=1.0)
        with pytest.raises(ValueError):
            MrtBoundParams(rho=0.2, alpha=-1.0, lam=1.0, v_min=1.0)


class TestBoundEvaluators:
    @pytest.fixture()
    def zf_params(self):
        cfg = make_config()
        return zf_bound_params(cfg, default_groups(cfg))

    @pytest.fixture()
    def mrt_params(self):
        return mrt_bound_params(make_config())

    def test_private_zf_trivial_points(self, zf_params):
        assert lb_private_zf(0.0, zf_params) == 0.0
        # sigma = 1 and t = 1 gives exactly one bit.
        unit = ZfBoundParams(rho=0.2, sigma=1.0, v_min_g1=1.0)
        assert lb_private_zf(1.0, unit) == pytest.approx(1.0, rel=1e-15)

    def test_private_zf_frozen_value(self, zf_params):
        assert lb_private_zf(0.1, zf_params) == pytest.approx(
            1.2652260628811063, abs=1e-12
        )
        oracle = math.log2(1.0 + 14.036487089172129 * 0.1)
        assert lb_private_zf(0.1, zf_params) == pytest.approx(oracle, rel=1e-12)

    def test_common_zf_frozen_value(self, zf_params):
        assert lb_common_zf(0.0997, zf_params) == pytest.approx(
            1.4655676445420838, abs=1e-12
        )

    def test_common_zf_at_t_one_is_zero(self, zf_params):
        assert lb_common_zf(1.0, zf_params) == pytest.approx(0.0, abs=1e-15)

    def test_common_monotone_decreasing_in_t(self, zf_params):
        ts = [0.01 * i for i in range(1, 101)]
        vals = [lb_common_zf(t, zf_params) for t in ts]
        assert all(a > b for a, b in zip(vals, vals[1:]))

    def test_private_mrt_frozen_values(self, mrt_params):
        assert lb_private_mrt(1.0, mrt_params) == pytest.approx(
            0.7592975989054965, abs=1e-12
        )
        assert lb_private_mrt(0.0, mrt_params) == 0.0
        # Signal scale exceeds interference scale here, so the bound is
        # positive and increasing in t.
        assert lb_private_mrt(0.5, mrt_params) > 0.0

    def test_common_mrt_frozen_value(self, mrt_params):
        assert lb_common_mrt(0.1, mrt_params) == pytest.approx(
            0.6477121072464914, abs=1e-12
        )

    def test_domain_errors(self, zf_params, mrt_params):
        with pytest.raises(ValueError):
            lb_private_zf(-0.1, zf_params)
        with pytest.raises(ValueError):
            lb_private_zf(1.1, zf_params)
        with pytest.raises(ValueError):
            lb_common_zf(0.0, zf_params)
        with pytest.raises(ValueError):
            lb_common_mrt(-0.5, mrt_params)
        with pytest.raises(ValueError):
            lb_private_mrt(2.0, mrt_params)
