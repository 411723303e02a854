import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from harmana import bounds, core, means
from harmana.bounds import ExtremalParams
from harmana.core import HarmonicSeries
from harmana.errors import InvalidAlpha

from conftest import Z, series

UNIT = st.floats(0, 2 * math.pi).map(lambda t: cmath.exp(1j * t))


class TestPointwiseBound:
    def test_origin(self):
        assert bounds.pointwise_bound(2.5, 3, 0.7, 0) == 2.5

    def test_alpha0_p2(self):
        assert bounds.pointwise_bound(1.3, 2, 0, 0.5j) == pytest.approx(2.6, rel=1e-14)

    def test_alpha1_p1(self):
        assert bounds.pointwise_bound(1.0, 1, 1, -0.5) == pytest.approx(1 / 0.4375, rel=1e-14)

    @pytest.mark.parametrize("alpha", [-1, -3])
    def test_rejects_alpha(self, alpha):
        with pytest.raises(InvalidAlpha):
            bounds.pointwise_bound(1, 2, alpha, 0.3)

    def test_rejects_domain(self):
        with pytest.raises(ValueError):
            bounds.pointwise_bound(1, 2, 0, 1.0)
        with pytest.raises(ValueError):
            bounds.pointwise_bound(1, math.inf, 0, 0.5)

    @pytest.mark.parametrize("p", [1, 2, 4])
    @pytest.mark.parametrize("alpha", [-0.5, 0, 2])
    def test_holds_on_random_series(self, rng, corpus, p, alpha):
        for f in corpus[:15]:
            norm = means.bergman_norm(f, p, alpha).value
            z = 0.999 * np.sqrt(rng.random(100)) * np.exp(2j * np.pi * rng.random(100))
            excess = max(abs(core.eval_series(f, w)) - bounds.pointwise_bound(norm, p, alpha, w) for w in z)
            assert excess <= 1e-9

    def test_identity_exceeds_bound_for_large_alpha(self):
        # ||z||_{b^1,5} = 6 B(3/2, 6) in closed form; the bound at r = 1/2 is below |f| = 1/2
        norm = 6 * math.gamma(1.5) * math.gamma(6) / math.gamma(7.5)
        assert means.bergman_norm(Z, 1, 5).value == pytest.approx(norm, rel=1e-12)
        bound = norm / (1 - 0.75 ** 6)
        assert bounds.pointwise_bound(norm, 1, 5, 0.5) == pytest.approx(bound, rel=1e-14)
        assert bound < 0.5


class TestCoeffFactor:
    def test_sharp_constant(self):
        assert bounds.coeff_bound_factor(1, math.inf, 0) == (1.0, pytest.approx(math.nan, nan_ok=True))

    def test_m1_p2(self):
        factor, r_star = bounds.coeff_bound_factor(1, 2, 0)
        assert factor == pytest.approx(4, rel=1e-14)
        assert r_star == pytest.approx(0.5, abs=1e-7)

    def test_brute_force_m2_p2_alpha1(self):
        r = np.linspace(0, 1, 10 ** 6 + 2)[1:-1]
        brute = np.min(1 / (r ** 2 * (1 - (r * (2 - r)) ** 2) ** 0.5))
        factor, _ = bounds.coeff_bound_factor(2, 2, 1)
        assert factor == pytest.approx(brute, rel=1e-8)
        assert factor <= brute

    @pytest.mark.parametrize("m", range(1, 11))
    @pytest.mark.parametrize("p", [1, 1.5, 2, 5])
    def test_matches_alpha0_closed_form(self, m, p):
        factor, r_star = bounds.coeff_bound_factor(m, p, 0)
        assert factor == pytest.approx(bounds.coeff_bound_alpha0(m, p), rel=1e-8)
        assert r_star == pytest.approx(p * m / (p * m + 2), abs=1e-6)

    def test_alpha0_examples(self):
        assert bounds.coeff_bound_alpha0(1, 2) == pytest.approx(4, rel=1e-15)
        assert bounds.coeff_bound_alpha0(3, 1) == pytest.approx(125 / 27 * 25 / 4, rel=1e-14)
        assert bounds.coeff_bound_alpha0(4, math.inf) == 1.0
        assert bounds.coeff_bound_alpha0(4, 1e9) == pytest.approx(1, rel=1e-7)

    @pytest.mark.parametrize("m", [1, 3, 7])
    @pytest.mark.parametrize("alpha", [-0.9, -0.5, 0, 1, 4])
    def test_at_least_one_and_nonincreasing_in_p(self, m, alpha):
        ps = [1, 1.25, 1.5, 2, 3, 5, 10, 100]
        factors = [bounds.coeff_bound_factor(m, p, alpha)[0] for p in ps] + [1.0]
        assert all(f >= 1 for f in factors)
        assert all(b <= a * (1 + 1e-12) for a, b in zip(factors, factors[1:]))

    def test_invalid(self):
        with pytest.raises(ValueError):
            bounds.coeff_bound_factor(0, 2, 0)
        with pytest.raises(InvalidAlpha):
            bounds.coeff_bound_factor(1, 2, -1)
        with pytest.raises(ValueError):
            bounds.coeff_bound_factor(1, 0.5, 0)


class TestCheckCoeffBounds:
    def test_identity(self):
        rep = bounds.check_coeff_bounds(Z, 2, 0)
        (row,) = rep.indices
        assert row.lhs == 1
        assert row.bound == pytest.approx(4 / math.pi * 4 / math.sqrt(2), rel=1e-12)
        assert row.bound == pytest.approx(3.60, abs=5e-3)
        assert rep.passed

    def test_constant(self):
        rep = bounds.check_coeff_bounds(HarmonicSeries.constant(2j), 3, 1)
        assert rep.indices == () and rep.a0_passed and rep.passed
        assert rep.a0_lhs == pytest.approx(rep.norm, rel=1e-12)

    def test_truncated_extremal_with_known_norm(self):
        f = bounds.extremal_series(ExtremalParams(), 199)
        rep = bounds.check_coeff_bounds(f, math.inf, 0, norm=1.0)
        assert rep.indices[0].ratio == pytest.approx(1, abs=1e-6)
        assert rep.norm_source == "given"

    def test_report_serialises(self):
        rep = bounds.check_coeff_bounds(Z, math.inf, 0)
        d = rep.to_dict()
        assert d["p"] == "inf" and d["indices"][0]["r_star"] is None
        assert d["passed"] is True

    def test_failure_detected(self):
        rep = bounds.check_coeff_bounds(Z, 2, 0, norm=0.1)
        assert not rep.passed and rep.a0_passed

    def test_rejects_alpha(self):
        with pytest.raises(InvalidAlpha):
            bounds.check_coeff_bounds(Z, 2, -1)

    def test_identity_breaks_bound_for_large_alpha(self):
        # ||z||_{b^2,5}^2 = 6 B(2, 6) = 1/7; brute-force infimum of the factor
        r = np.linspace(0, 1, 10 ** 6 + 2)[1:-1]
        factor = np.min(1 / (r * np.sqrt(1 - (r * (2 - r)) ** 6)))
        bound = 4 / math.pi * math.sqrt(1 / 7) * factor
        assert bound < 1
        rep = bounds.check_coeff_bounds(Z, 2, 5)
        assert rep.norm == pytest.approx(math.sqrt(1 / 7), rel=1e-12)
        assert rep.indices[0].bound == pytest.approx(bound, rel=1e-8)
        assert not rep.passed


class TestExtremal:
    def test_params_validated(self):
        with pytest.raises(ValueError):
            ExtremalParams(m=0)
        with pytest.raises(ValueError):
            ExtremalParams(beta=1.1)
        with pytest.raises(ValueError):
            ExtremalParams(scale=0)

    def test_eval_examples(self):
        p = ExtremalParams()
        assert bounds.extremal_eval(p, 0) == 0
        assert abs(bounds.extremal_eval(p, 0.7)) == 0
        for t in (0.2, 0.9, 0.999999):
            assert bounds.extremal_eval(p, 1j * t) == pytest.approx(4 / math.pi * math.atan(t), rel=1e-14)

    def test_eval_vectorised(self):
        z = np.array([0.1j, 0.5j])
        assert bounds.extremal_eval(ExtremalParams(), z).shape == (2,)

    @given(st.integers(1, 4), UNIT, UNIT, st.floats(0.1, 3))
    @settings(max_examples=30, deadline=None)
    def test_coefficient_moduli(self, m, beta, gamma, scale):
        f = bounds.extremal_series(ExtremalParams(m, beta, gamma, scale), 5 * m)
        am, bm = f.coefficient_moduli(m)
        assert am == pytest.approx(2 * scale / math.pi, rel=1e-14)
        assert bm == pytest.approx(2 * scale / math.pi, rel=1e-14)

    def test_sum_is_four_over_pi(self):
        f = bounds.extremal_series(ExtremalParams(), 9)
        assert sum(f.coefficient_moduli(1)) == pytest.approx(4 / math.pi, rel=1e-15)

    def test_structure_m2(self):
        f = bounds.extremal_series(ExtremalParams(m=2), 3)
        nonzero = [k for k in range(4) if any(f.coefficient_moduli(k))]
        assert nonzero == [2]

    def test_rejects_low_degree(self):
        with pytest.raises(ValueError):
            bounds.extremal_series(ExtremalParams(m=3), 2)

    @given(UNIT)
    def test_gamma_invariance(self, gamma):
        base = bounds.extremal_series(ExtremalParams(m=2), 20)
        turned = bounds.extremal_series(ExtremalParams(m=2, gamma=gamma), 20)
        assert np.allclose(np.abs(base.a), np.abs(turned.a), rtol=0, atol=1e-15)
        assert np.allclose(np.abs(base.b), np.abs(turned.b), rtol=0, atol=1e-15)

    @pytest.mark.parametrize("m,degree", [(1, 25), (2, 40), (3, 31)])
    def test_series_matches_closed_form_within_tail(self, rng, m, degree):
        params = ExtremalParams(m, cmath.exp(0.4j), cmath.exp(-1.1j), 1.7)
        f = bounds.extremal_series(params, degree)
        z = 0.5 * np.sqrt(rng.random(200)) * np.exp(2j * np.pi * rng.random(200))
        err = np.abs(core.eval_series(f, z) - bounds.extremal_eval(params, z))
        tails = np.array([bounds.extremal_tail_bound(params, degree, abs(w)) for w in z])
        assert np.all(err <= tails * (1 + 1e-9) + 1e-15)

    def test_sup_estimate(self):
        assert bounds.extremal_sup_estimate(ExtremalParams(m=2, scale=3)) == pytest.approx(3, rel=1e-10)
