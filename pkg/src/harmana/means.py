"""Circle means, area functions, area integral means and the two norms."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import quadrature as quad
from .core import HarmonicSeries, area_function_exact, eval_series, parseval_i2
from .errors import InvalidAlpha
from .quadrature import DEFAULT_CONFIG, QuadratureConfig

__all__ = [
    "NormEstimate",
    "MeanCurve",
    "i_p",
    "area_function",
    "area_mean",
    "hardy_norm",
    "bergman_norm",
    "sup_norm",
    "theorem1_integral",
    "thm2_decay_curve",
    "mean_curve",
]


@dataclass(frozen=True)
class NormEstimate:
    value: float
    r_sequence: tuple[float, ...]
    converged: bool
    exact: bool = False

    def __post_init__(self):
        if not self.value >= 0:
            raise ValueError("norm value must be >= 0")
        if self.exact and not self.converged:
            raise ValueError("an exact estimate is converged by definition")

    def __float__(self):
        return self.value


@dataclass(frozen=True)
class MeanCurve:
    radii: tuple[float, ...]
    values: tuple[float, ...]
    kind: str
    params: dict = field(default_factory=dict)
    converged: tuple[bool, ...] = ()

    def __post_init__(self):
        if self.kind not in ("Ip", "Ah", "Mpalpha", "decay"):
            raise ValueError(f"unknown curve kind {self.kind!r}")
        if len(self.radii) != len(self.values):
            raise ValueError("radii and values differ in length")
        if any(b <= a for a, b in zip(self.radii, self.radii[1:])):
            raise ValueError("radii must be strictly ascending")
        if not all(math.isfinite(v) for v in self.values):
            raise ValueError("curve values must be finite")


def i_p(f: HarmonicSeries, p: float, r: float, cfg: QuadratureConfig = DEFAULT_CONFIG, *,
        full_output: bool = False):
    """``I_p(r, f)``; for ``p = 2`` the Parseval closed form is used."""
    if p == 2:
        if not 0 <= r <= 1:
            raise ValueError("r must lie in [0, 1]")
        value = parseval_i2(f, r)
        return (value, True) if full_output else value
    return quad.circle_mean_p(f, p, r, cfg, full_output=full_output)


def area_function(f: HarmonicSeries, r: float, mode: str = "exact", cfg: QuadratureConfig = DEFAULT_CONFIG):
    """``A_h(r, f)``, either from the coefficient series or by quadrature."""
    if mode == "exact":
        if not 0 <= r <= 1:
            raise ValueError("r must lie in [0, 1]")
        return area_function_exact(f, r)
    if mode == "numeric":
        return quad.area_integral_gradsq(f, r, cfg)
    raise ValueError(f"mode must be 'exact' or 'numeric', not {mode!r}")


def area_mean(f: HarmonicSeries, p: float, alpha: float, r: float, cfg: QuadratureConfig = DEFAULT_CONFIG,
              *, full_output: bool = False):
    """``M_{p,alpha}(r, f)``, the ``(1 - |z|^2)^alpha``-weighted ``L^p`` average over ``D_r``.

    At ``r = 0`` the continuous extension ``|f(0)|`` is returned.
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    if r == 0:
        value = abs(complex(eval_series(f, 0)))
        return (value, True) if full_output else value
    if not 0 < r < 1:
        raise ValueError("r must lie in [0, 1)")
    integral, ok = quad.weighted_area_integral(f, p, alpha, r, cfg, full_output=True)
    value = (max(integral, 0.0) / quad.weighted_disk_measure(alpha, r)) ** (1 / p)
    return (value, ok) if full_output else value


def hardy_norm(f: HarmonicSeries, p: float, cfg: QuadratureConfig = DEFAULT_CONFIG) -> NormEstimate:
    """``||f||_p`` for a finite series: ``I_p`` is nondecreasing, so the sup is the value at ``r = 1``."""
    if p < 1:
        raise ValueError("p must be >= 1")
    if math.isinf(p):
        return sup_norm(f)
    value, ok = i_p(f, p, 1.0, cfg, full_output=True)
    return NormEstimate(value ** (1 / p), (1.0,), converged=ok, exact=ok)


def bergman_norm(f: HarmonicSeries, p: float, alpha: float, cfg: QuadratureConfig = DEFAULT_CONFIG) -> NormEstimate:
    """``||f||_{b^p, alpha}`` against ``dA_alpha = (1 + alpha)(1 - |z|^2)^alpha dA``.

    ``p = inf`` gives the sup norm, which does not depend on ``alpha``.
    """
    if alpha <= -1:
        raise InvalidAlpha(f"weighted Bergman space needs alpha > -1, got {alpha}")
    if math.isinf(p):
        return sup_norm(f)
    if p < 1:
        raise ValueError("p must be >= 1")
    integral, ok = quad.weighted_area_integral(f, p, alpha, 1.0, cfg, full_output=True)
    return NormEstimate(((1 + alpha) * max(integral, 0.0)) ** (1 / p), (1.0,), converged=ok, exact=ok)


# sup of |f| over the closed disk: polar grid, then alternating golden-section refinement
SUP_ANGLES = 512
SUP_RADII = 256
SUP_REFINE_ROUNDS = 3


def _golden_max(g, lo: float, hi: float, tol: float = 1e-13) -> tuple[float, float]:
    inv_phi = (math.sqrt(5) - 1) / 2
    c, d = hi - inv_phi * (hi - lo), lo + inv_phi * (hi - lo)
    gc, gd = g(c), g(d)
    while hi - lo > tol:
        if gc > gd:
            hi, d, gd = d, c, gc
            c = hi - inv_phi * (hi - lo)
            gc = g(c)
        else:
            lo, c, gc = c, d, gd
            d = lo + inv_phi * (hi - lo)
            gd = g(d)
    candidates = [(g(lo), lo), (g(hi), hi), (gc, c), (gd, d)]
    value, x = max(candidates)
    return x, value


def sup_modulus(func, r_max: float = 1.0, n_theta: int = SUP_ANGLES, n_r: int = SUP_RADII) -> tuple[float, complex]:
    """Max of ``|func(z)|`` over ``|z| <= r_max`` and the point attaining it."""
    theta = 2 * np.pi * np.arange(n_theta) / n_theta
    radii = np.linspace(0.0, r_max, n_r)
    grid = np.abs(func(radii[:, None] * np.exp(1j * theta)[None, :]))
    i, j = np.unravel_index(np.argmax(grid), grid.shape)
    best, r0, t0 = float(grid[i, j]), float(radii[i]), float(theta[j])
    dt, dr = 2 * np.pi / n_theta, r_max / (n_r - 1)

    def mod(r, t):
        return float(np.abs(func(np.array([r * np.exp(1j * t)])))[0])

    for _ in range(SUP_REFINE_ROUNDS):
        t0, _v = _golden_max(lambda t: mod(r0, t), t0 - dt, t0 + dt)
        r0, _v = _golden_max(lambda r: mod(r, t0), max(0.0, r0 - dr), min(r_max, r0 + dr))
        best = max(best, mod(r0, t0))
    return best, r0 * np.exp(1j * t0)


def sup_norm(f: HarmonicSeries) -> NormEstimate:
    """``sup_{|z| <= 1} |f(z)|`` for a finite series (continuous on the closed disk)."""
    value, _z = sup_modulus(lambda z: eval_series(f, z), 1.0)
    return NormEstimate(value, (1.0,), converged=True, exact=False)


def _graded_unit_rule(n_nodes: int = 32, levels: int = 60):
    """Gauss-Legendre panels on [0, 1], graded geometrically toward both ends."""
    edges = sorted({0.0, 0.5, 1.0} | {2.0 ** -k for k in range(2, levels)} | {1 - 2.0 ** -k for k in range(2, levels)})
    x, w = np.polynomial.legendre.leggauss(n_nodes)
    nodes, weights = [], []
    for lo, hi in zip(edges[:-1], edges[1:]):
        nodes.append(lo + (hi - lo) * (x + 1) / 2)
        weights.append(w * (hi - lo) / 2)
    return np.concatenate(nodes), np.concatenate(weights)


def theorem1_integral(f: HarmonicSeries, p: float, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """``int_0^1 A_h(r, f)^(p/2) dr`` with the exact area function.

    Panels are graded toward both endpoints so that truncated singular families,
    whose area function climbs steeply on a 1/degree scale at ``r = 1``, are resolved.
    """
    if p <= 1:
        raise ValueError("p must be > 1")
    r, w = _graded_unit_rule()
    values = np.maximum(area_function_exact(f, r), 0.0) ** (p / 2)
    return math.fsum(w * values)


def thm2_decay_curve(f: HarmonicSeries, p: float, radii: Sequence[float]) -> MeanCurve:
    """``(1 - r)^(2/p) A_h(r, f)`` on ``radii``."""
    if not 1 < p <= 2:
        raise ValueError("decay curve is defined for 1 < p <= 2")
    radii = tuple(float(r) for r in radii)
    if any(not 0 < r < 1 for r in radii):
        raise ValueError("radii must lie in (0, 1)")
    values = tuple((1 - r) ** (2 / p) * area_function_exact(f, r) for r in radii)
    return MeanCurve(radii, values, "decay", {"p": p}, tuple(True for _ in radii))


def mean_curve(f: HarmonicSeries, kind: str, p: float, radii: Sequence[float], alpha: float | None = None,
               cfg: QuadratureConfig = DEFAULT_CONFIG, mode: str = "exact") -> MeanCurve:
    """Evaluate ``I_p``, ``A_h`` or ``M_{p,alpha}`` along ``radii``."""
    values, flags = [], []
    for r in radii:
        if kind == "Ip":
            v, ok = i_p(f, p, r, cfg, full_output=True)
        elif kind == "Ah":
            if mode == "exact":
                v, ok = area_function(f, r, "exact"), True
            else:
                v, ok = quad.area_integral_gradsq(f, r, cfg, full_output=True)
        elif kind == "Mpalpha":
            if alpha is None:
                raise ValueError("Mpalpha curve needs alpha")
            v, ok = area_mean(f, p, alpha, r, cfg, full_output=True)
        else:
            raise ValueError(f"unknown curve kind {kind!r}")
        values.append(float(v))
        flags.append(bool(ok))
    params = {"p": p} if alpha is None else {"p": p, "alpha": alpha}
    return MeanCurve(tuple(float(r) for r in radii), tuple(values), kind, params, tuple(flags))
