"""Circle means, weighted disk integrals and the Green-identity machinery.

Angular integrals use the equispaced trapezoid rule with node doubling,
which is spectrally accurate for smooth periodic integrands.  Radial
integrals are taken in ``t = rho**2`` (so that ``dA = dt * dtheta / 2pi``)
with composite Gauss-Legendre panels, geometrically graded toward the
weight singularity at ``t = 1`` and, where needed, toward ``t = 0``.  On the
full disk the endpoint panel uses Gauss-Jacobi nodes for ``(1 - t)**alpha``.
All reductions go through :func:`math.fsum`, so results do not depend on
summation order.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy.special import roots_jacobi

from .core import HarmonicSeries, eval_series, wirtinger
from .errors import DivergentMeasure, NonConvergenceWarning, SingularPoint

__all__ = [
    "QuadratureConfig",
    "WeightedMeasureParams",
    "DEFAULT_CONFIG",
    "circle_mean_p",
    "circle_means",
    "disk_integral",
    "weighted_disk_measure",
    "weighted_area_integral",
    "area_integral_gradsq",
    "laplacian_abs_p",
    "laplacian_fd",
    "green_lhs_rhs",
]

# geometric grading toward t = 0: panels down to t_hi * 2**-ZERO_LEVELS
ZERO_LEVELS = 24
LOG_ZERO_LEVELS = 52


@dataclass(frozen=True)
class QuadratureConfig:
    angular_nodes_init: int = 256
    angular_nodes_max: int = 65536
    radial_nodes: int = 128
    rel_tol: float = 1e-10
    abs_tol: float = 1e-14

    def __post_init__(self):
        n0 = self.angular_nodes_init
        if n0 < 8 or n0 & (n0 - 1):
            raise ValueError("angular_nodes_init must be a power of two >= 8")
        if self.angular_nodes_max < n0:
            raise ValueError("angular_nodes_max must be >= angular_nodes_init")
        if self.radial_nodes < 1:
            raise ValueError("radial_nodes must be positive")
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("tolerances must be positive")


DEFAULT_CONFIG = QuadratureConfig()


@dataclass(frozen=True)
class WeightedMeasureParams:
    alpha: float

    def __post_init__(self):
        if not math.isfinite(self.alpha):
            raise ValueError("alpha must be finite")

    @property
    def finite_on_disk(self) -> bool:
        return self.alpha > -1


def _warn_unconverged(what: str):
    warnings.warn(f"{what}: angular node doubling hit angular_nodes_max", NonConvergenceWarning, stacklevel=3)


# ---------------------------------------------------------------------------
# angular direction


def _row_means(values: np.ndarray) -> np.ndarray:
    n = values.shape[1]
    return np.array([math.fsum(row) / n for row in values])


def circle_means(h: Callable[[np.ndarray], np.ndarray], radii, cfg: QuadratureConfig = DEFAULT_CONFIG):
    """Trapezoid circle means of ``h`` on each circle ``|z| = radii[i]``.

    ``h`` maps a complex array to a real array of the same shape.  Each row is
    doubled independently until successive estimates agree to
    ``rel_tol * |estimate| + abs_tol``.  Returns ``(means, converged)``.
    """
    radii = np.atleast_1d(np.asarray(radii, dtype=float))
    n = cfg.angular_nodes_init
    theta = 2 * np.pi * np.arange(n) / n
    est = _row_means(h(radii[:, None] * np.exp(1j * theta)[None, :]))
    converged = np.zeros(radii.shape, bool)
    active = np.arange(radii.size)
    while n < cfg.angular_nodes_max and active.size:
        theta = (2 * np.arange(n) + 1) * np.pi / n
        fresh = _row_means(h(radii[active, None] * np.exp(1j * theta)[None, :]))
        new = 0.5 * (est[active] + fresh)
        ok = np.abs(new - est[active]) <= cfg.rel_tol * np.abs(new) + cfg.abs_tol
        est[active] = new
        converged[active[ok]] = True
        active = active[~ok]
        n *= 2
    return est, converged


def _abs_pow(f: HarmonicSeries, p: float):
    if p == 2:
        return lambda z: np.abs(eval_series(f, z)) ** 2
    return lambda z: np.abs(eval_series(f, z)) ** p


def circle_mean_p(f: HarmonicSeries, p: float, r: float, cfg: QuadratureConfig = DEFAULT_CONFIG,
                  *, full_output: bool = False):
    """``I_p(r, f)``, the normalized circle mean of ``|f|^p`` on ``|z| = r``.

    Emits :class:`NonConvergenceWarning` (and still returns the estimate) when
    doubling reaches ``angular_nodes_max``.  With ``full_output`` the result is
    ``(value, converged)``.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    if not 0 <= r <= 1:
        raise ValueError("r must lie in [0, 1]")
    means, ok = circle_means(_abs_pow(f, p), [r], cfg)
    value, converged = float(means[0]), bool(ok[0])
    if not converged:
        _warn_unconverged("circle_mean_p")
    return (value, converged) if full_output else value


# ---------------------------------------------------------------------------
# radial direction


@lru_cache(maxsize=None)
def _gauss_legendre(n: int):
    return np.polynomial.legendre.leggauss(n)


@lru_cache(maxsize=None)
def _gauss_jacobi(n: int, alpha: float):
    x, w = roots_jacobi(n, alpha, 0.0)
    return x, w


def _breakpoints(t_hi: float, *, toward_one: bool, zero_levels: int) -> list[float]:
    pts = {0.0, t_hi}
    if toward_one:
        k = 1
        while 1 - 2.0 ** -k < t_hi:
            pts.add(1 - 2.0 ** -k)
            k += 1
    for k in range(1, zero_levels + 1):
        pts.add(t_hi * 2.0 ** -k)
    return sorted(pts)


def _radial_rule(t_hi: float, cfg: QuadratureConfig, *, toward_one: bool, zero_levels: int):
    """Nodes and weights for ``int_0^t_hi g(t) dt`` on graded panels."""
    edges = _breakpoints(t_hi, toward_one=toward_one, zero_levels=zero_levels)
    x, w = _gauss_legendre(cfg.radial_nodes)
    nodes, weights = [], []
    for lo, hi in zip(edges[:-1], edges[1:]):
        nodes.append(lo + (hi - lo) * (x + 1) / 2)
        weights.append(w * (hi - lo) / 2)
    return np.concatenate(nodes), np.concatenate(weights)


def _weight(alpha: float, t: np.ndarray) -> np.ndarray:
    if alpha == 0:
        return np.ones_like(t)
    return np.exp(alpha * np.log1p(-t))


def _integrate_profile(profile, t_nodes, t_weights):
    """``sum w_i * profile(t_i)`` where ``profile`` returns ``(values, converged)``."""
    values, ok = profile(t_nodes)
    return math.fsum(t_weights * values), bool(np.all(ok))


def _weighted_radial(profile, alpha: float, r: float, cfg: QuadratureConfig, *, zero_levels: int):
    """``int_0^{r^2} (1 - t)^alpha profile(t) dt`` for a circle-mean profile."""
    t_hi = r * r
    if r == 1.0:
        if alpha <= -1:
            raise DivergentMeasure(f"measure of the unit disk diverges for alpha={alpha}")
        tn, tw = _radial_rule(0.5, cfg, toward_one=False, zero_levels=zero_levels)
        inner, ok_in = _integrate_profile(profile, tn, tw * _weight(alpha, tn))
        # endpoint panel [1/2, 1]: t = (3 + x)/4, 1 - t = (1 - x)/4
        x, w = _gauss_jacobi(cfg.radial_nodes, float(alpha))
        outer, ok_out = _integrate_profile(profile, (3 + x) / 4, w * 4.0 ** (-alpha - 1))
        return math.fsum([inner, outer]), ok_in and ok_out
    tn, tw = _radial_rule(t_hi, cfg, toward_one=alpha != 0, zero_levels=zero_levels)
    return _integrate_profile(profile, tn, tw * _weight(alpha, tn))


def _circle_profile(h, cfg):
    def profile(t):
        return circle_means(h, np.sqrt(t), cfg)

    return profile


def _needs_zero_grading(f: HarmonicSeries, p: float) -> bool:
    # |f|^p behaves like rho^(k p) near a zero at the origin; smooth in t only for even p
    return abs(f.a0) == 0 and not (float(p).is_integer() and int(p) % 2 == 0)


def disk_integral(h, r: float, cfg: QuadratureConfig = DEFAULT_CONFIG, *, alpha: float = 0.0,
                  zero_levels: int = 0, full_output: bool = False):
    """``int_{D_r} h(z) (1 - |z|^2)^alpha dA(z)`` under the normalized area measure."""
    if not 0 <= r <= 1:
        raise ValueError("r must lie in [0, 1]")
    if r == 0:
        return (0.0, True) if full_output else 0.0
    value, ok = _weighted_radial(_circle_profile(h, cfg), alpha, r, cfg, zero_levels=zero_levels)
    if not ok:
        _warn_unconverged("disk_integral")
    return (value, ok) if full_output else value


def weighted_disk_measure(alpha: float, r: float) -> float:
    """Closed form of ``A*_alpha(D_r) = int_0^r 2 rho (1 - rho^2)^alpha d rho``."""
    if not 0 <= r <= 1:
        raise ValueError("r must lie in [0, 1]")
    if r == 1:
        if alpha <= -1:
            raise DivergentMeasure(f"measure of the unit disk diverges for alpha={alpha}")
        return 1.0 / (alpha + 1)
    log_c = math.log1p(-r * r)
    if alpha == -1:
        return -log_c
    return -math.expm1((alpha + 1) * log_c) / (alpha + 1)


def weighted_area_integral(f: HarmonicSeries, p: float, alpha: float, r: float,
                           cfg: QuadratureConfig = DEFAULT_CONFIG, *, full_output: bool = False):
    """``int_{D_r} |f|^p dA*_alpha`` as a radial integral of circle means.

    ``r = 1`` is accepted for ``alpha > -1``; the weight's endpoint behaviour is
    absorbed by Gauss-Jacobi nodes rather than resolved by refinement.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    levels = ZERO_LEVELS if _needs_zero_grading(f, p) else 0
    return disk_integral(_abs_pow(f, p), r, cfg, alpha=alpha, zero_levels=levels, full_output=full_output)


def area_integral_gradsq(f: HarmonicSeries, r: float, cfg: QuadratureConfig = DEFAULT_CONFIG,
                         *, full_output: bool = False):
    """Numerical ``int_{D_r} (|f_z|^2 + |f_zbar|^2) dA``."""

    def gradsq(z):
        _, dz, dzbar = wirtinger(f, z)
        return np.abs(dz) ** 2 + np.abs(dzbar) ** 2

    return disk_integral(gradsq, r, cfg, full_output=full_output)


# ---------------------------------------------------------------------------
# Laplacian and Green's identity


def _laplacian_values(f: HarmonicSeries, p: float, z, abs_tol: float):
    value, dz, dzbar = wirtinger(f, z)
    mod = np.abs(value)
    gradsq = np.abs(dz) ** 2 + np.abs(dzbar) ** 2
    if p == 2:
        return 4.0 * gradsq
    singular = p < 4 and not (float(p).is_integer() and int(p) % 2 == 0)
    if singular and np.any(mod < abs_tol):
        raise SingularPoint(f"|f|^(p-4) undefined at a zero of f for p={p}")
    cross = np.abs(dz * np.conj(value) + value * np.conj(dzbar)) ** 2
    with np.errstate(divide="ignore", invalid="ignore"):
        first = (p / 2 - 1) * mod ** (p - 4) * cross if p != 4 else cross
    return 2 * p * (first + mod ** (p - 2) * gradsq)


def laplacian_abs_p(f: HarmonicSeries, p: float, z, *, abs_tol: float = DEFAULT_CONFIG.abs_tol):
    """``Delta(|f|^p)`` from the Wirtinger form

    ``2p [ (p/2 - 1) |f|^(p-4) |f_z conj(f) + f conj(f_zbar)|^2 + |f|^(p-2) (|f_z|^2 + |f_zbar|^2) ]``.

    Raises :class:`SingularPoint` when ``p < 4`` (p not even) and ``|f(z)| < abs_tol``.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    out = _laplacian_values(f, p, np.asarray(z, dtype=complex), abs_tol)
    return float(out) if np.ndim(out) == 0 else out


def laplacian_fd(f: HarmonicSeries, p: float, z: complex, h: float) -> float:
    """Centered five-point Laplacian of ``|f|^p`` with step ``h``."""
    g = _abs_pow(f, p)
    stencil = np.array([z + h, z - h, z + 1j * h, z - 1j * h, z])
    v = g(stencil)
    return float((v[0] + v[1] + v[2] + v[3] - 4 * v[4]) / (h * h))


def green_lhs_rhs(f: HarmonicSeries, p: float, r: float, cfg: QuadratureConfig = DEFAULT_CONFIG):
    """Both sides of the circle-mean identity for ``g = |f|^p``.

    lhs is ``I_p(r, f) - |f(0)|^p``; rhs is
    ``(1/2) int_{D_r} Delta g(z) log(r/|z|) dA(z)``, computed in ``t = |z|^2`` as
    ``(1/4) int_0^{r^2} log(r^2/t) L(t) dt`` on panels graded toward ``t = 0``.
    """
    if not 0 < r < 1:
        raise ValueError("r must lie in (0, 1)")
    lhs = circle_mean_p(f, p, r, cfg) - abs(complex(eval_series(f, 0))) ** p
    t_hi = r * r
    tn, tw = _radial_rule(t_hi, cfg, toward_one=False, zero_levels=LOG_ZERO_LEVELS)
    lap, ok = circle_means(lambda z: _laplacian_values(f, p, z, cfg.abs_tol), np.sqrt(tn), cfg)
    if not np.all(ok):
        _warn_unconverged("green_lhs_rhs")
    rhs = 0.25 * math.fsum(tw * np.log(t_hi / tn) * lap)
    return lhs, rhs
