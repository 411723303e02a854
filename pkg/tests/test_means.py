import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad

from harmana import core, means
from harmana.core import HarmonicSeries
from harmana.errors import InvalidAlpha
from harmana.means import MeanCurve, NormEstimate

from conftest import Z, Z2_ZBAR, series

ZBAR = HarmonicSeries((), (1,), name="conj(z)")


class TestIp:
    @pytest.mark.parametrize("p", [1, 1.5, 2, 3.7])
    def test_identity(self, p):
        assert means.i_p(Z, p, 0.6) == pytest.approx(0.6 ** p, rel=1e-13)

    def test_z2_zbar(self):
        assert means.i_p(Z2_ZBAR, 2, 0.5) == pytest.approx(0.3125, rel=1e-15)

    def test_constant(self):
        assert means.i_p(HarmonicSeries.constant(-2), 3, 0.9) == pytest.approx(8, rel=1e-14)

    def test_parseval_shortcut_agrees_with_quadrature(self, corpus):
        from harmana.quadrature import circle_mean_p

        for f in corpus[:10]:
            assert means.i_p(f, 2, 0.77) == pytest.approx(circle_mean_p(f, 2, 0.77), rel=1e-10)


class TestAreaFunction:
    def test_examples(self):
        assert means.area_function(Z, 0.9) == pytest.approx(0.81)
        assert means.area_function(ZBAR, 0.7) == pytest.approx(0.49)
        assert means.area_function(HarmonicSeries.constant(1j), 0.5) == 0

    @pytest.mark.parametrize("r", [0.2, 0.9, 1.0])
    def test_modes_agree(self, corpus, r):
        for f in corpus[:8]:
            exact = means.area_function(f, r, "exact")
            numeric = means.area_function(f, r, "numeric")
            assert numeric == pytest.approx(exact, rel=1e-8)

    def test_bad_mode(self):
        with pytest.raises(ValueError):
            means.area_function(Z, 0.5, "fast")


class TestAreaMean:
    @pytest.mark.parametrize("alpha", [-3, -1, 0, 2])
    def test_constant(self, alpha):
        for r in (0, 0.3, 0.95):
            assert means.area_mean(HarmonicSeries.constant(3 - 4j), 1.5, alpha, r) == pytest.approx(5, rel=1e-12)

    @pytest.mark.parametrize("r", [0.1, 0.5, 0.9])
    def test_identity_unweighted(self, r):
        assert means.area_mean(Z, 2, 0, r) == pytest.approx(r / math.sqrt(2), rel=1e-12)

    def test_log_weight_against_1d_oracle(self):
        r = 0.6
        num, _ = quad(lambda rho: 2 * rho ** 3 / (1 - rho * rho), 0, r, epsabs=1e-15, epsrel=1e-13)
        expected = math.sqrt(num / -math.log(1 - r * r))
        assert means.area_mean(Z, 2, -1, r) == pytest.approx(expected, rel=1e-12)

    def test_origin_is_modulus_at_zero(self):
        f = HarmonicSeries((0.6 + 0.8j, 1), (2,))
        assert means.area_mean(f, 3, -0.5, 0) == pytest.approx(1.0)

    def test_continuity_at_origin(self):
        f = HarmonicSeries((0.5, 1), (0.3j,))
        assert means.area_mean(f, 3, 1, 1e-4) == pytest.approx(0.5, rel=1e-6)

    @given(series(max_degree=4), st.floats(0.05, 0.95), st.sampled_from([-2.0, -1.0, -0.5, 0.0, 1.0]))
    @settings(max_examples=25, deadline=None)
    def test_mean_power_at_most_circle_mean(self, f, r, alpha):
        lhs = means.area_mean(f, 2, alpha, r) ** 2
        assert lhs <= means.i_p(f, 2, r) * (1 + 1e-12) + 1e-15

    def test_rejects_unit_radius(self):
        with pytest.raises(ValueError):
            means.area_mean(Z, 2, 0, 1)


class TestNorms:
    def test_hardy_examples(self):
        assert means.hardy_norm(Z, 3).value == pytest.approx(1, rel=1e-13)
        est = means.hardy_norm(Z2_ZBAR, 2)
        assert est.value == pytest.approx(math.sqrt(2), rel=1e-15)
        assert est.exact and est.converged and est.r_sequence == (1.0,)
        assert means.hardy_norm(HarmonicSeries.constant(-1.5j), 1).value == pytest.approx(1.5)

    def test_hardy_inf_is_sup(self):
        # |z^2 + conj(z)| peaks at 2 on the unit circle
        assert means.hardy_norm(Z2_ZBAR, math.inf).value == pytest.approx(2, rel=1e-12)

    def test_bergman_examples(self):
        assert means.bergman_norm(HarmonicSeries.constant(1), 2.5, 4).value == pytest.approx(1, rel=1e-12)
        assert means.bergman_norm(Z, 2, 0).value == pytest.approx(1 / math.sqrt(2), rel=1e-12)
        assert means.bergman_norm(Z, 2, 1).value == pytest.approx(1 / math.sqrt(3), rel=1e-12)

    def test_bergman_against_scipy(self):
        f = HarmonicSeries((0.1, 0.5j, 0.2), (0.3,))
        p, alpha = 3, -0.5

        def radial(rho):
            th = np.linspace(0, 2 * np.pi, 4096, endpoint=False)
            m = np.mean(np.abs(core.eval_series(f, rho * np.exp(1j * th))) ** p)
            return (1 + alpha) * 2 * rho * (1 - rho * rho) ** alpha * m

        ref, _ = quad(radial, 0, 1, epsabs=1e-15, epsrel=1e-12, limit=400)
        assert means.bergman_norm(f, p, alpha).value == pytest.approx(ref ** (1 / p), rel=1e-9)

    @pytest.mark.parametrize("alpha", [-1, -1.5])
    def test_bergman_rejects_alpha(self, alpha):
        with pytest.raises(InvalidAlpha):
            means.bergman_norm(Z, 2, alpha)

    def test_sup_norm_of_polynomial(self):
        f = HarmonicSeries((0, 1, 0, 0.5))
        assert means.sup_norm(f).value == pytest.approx(1.5, rel=1e-12)

    def test_norm_estimate_invariants(self):
        with pytest.raises(ValueError):
            NormEstimate(-1.0, (), True)
        with pytest.raises(ValueError):
            NormEstimate(1.0, (), converged=False, exact=True)


class TestGrowthFunctionals:
    @pytest.mark.parametrize("p", [1.5, 2, 4])
    def test_area_power_integral_identity(self, p):
        assert means.theorem1_integral(Z, p) == pytest.approx(1 / (p + 1), rel=1e-13)

    def test_area_power_integral_examples(self):
        assert means.theorem1_integral(HarmonicSeries.constant(3), 2) == 0
        assert means.theorem1_integral(Z2_ZBAR, 2) == pytest.approx(11 / 15, rel=1e-13)

    def test_area_power_integral_rejects_p1(self):
        with pytest.raises(ValueError):
            means.theorem1_integral(Z, 1)

    def test_decay_identity(self):
        radii = [0.5, 0.9, 0.999]
        curve = means.thm2_decay_curve(Z, 2, radii)
        assert curve.kind == "decay"
        assert np.allclose(curve.values, [(1 - r) * r * r for r in radii], rtol=1e-14)

    def test_decay_constant(self):
        assert means.thm2_decay_curve(HarmonicSeries.constant(2), 1.5, [0.3, 0.6]).values == (0.0, 0.0)

    def test_decay_log_family(self):
        f = core.gen_family("log", 5000)
        r = 1 - 1e-3
        got = means.thm2_decay_curve(f, 2, [r]).values[0]
        partial = 1e-3 * math.fsum(r ** (2 * n) / n for n in range(1, 5001))
        full = 1e-3 * -math.log1p(-r * r)
        assert got == pytest.approx(partial, rel=1e-12)
        assert got == pytest.approx(full, rel=1e-3)
        assert got == pytest.approx(6.2156e-3, rel=1e-4)

    def test_decay_rejects_p(self):
        with pytest.raises(ValueError):
            means.thm2_decay_curve(Z, 2.5, [0.5])


class TestCurves:
    def test_mean_curve_kinds(self):
        radii = [0.2, 0.4, 0.6]
        ip = means.mean_curve(Z, "Ip", 2, radii)
        ah = means.mean_curve(Z, "Ah", 2, radii)
        mp = means.mean_curve(Z, "Mpalpha", 2, radii, alpha=0)
        assert np.allclose(ip.values, np.square(radii))
        assert np.allclose(ah.values, np.square(radii))
        assert np.allclose(mp.values, np.array(radii) / math.sqrt(2))
        assert all(ip.converged) and mp.params == {"p": 2, "alpha": 0}

    def test_mpalpha_needs_alpha(self):
        with pytest.raises(ValueError):
            means.mean_curve(Z, "Mpalpha", 2, [0.5])

    def test_curve_validation(self):
        with pytest.raises(ValueError):
            MeanCurve((0.2, 0.1), (1.0, 2.0), "Ip")
        with pytest.raises(ValueError):
            MeanCurve((0.1,), (math.nan,), "Ip")
        with pytest.raises(ValueError):
            MeanCurve((0.1,), (1.0,), "other")

    @given(series(max_degree=4))
    @settings(max_examples=20, deadline=None)
    def test_ip_nondecreasing(self, f):
        radii = np.linspace(0.05, 0.95, 12)
        v = means.mean_curve(f, "Ip", 1.5, radii).values
        scale = max(1.0, max(v))
        assert np.all(np.diff(v) >= -1e-10 * scale)
