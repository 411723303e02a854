"""Growth and coefficient bounds for weighted Bergman mappings, and the extremal family.

For ``f`` in the weighted Bergman space with norm ``N``,

    |f(z)| <= N / [1 - |z|^(alpha+1) (2 - |z|)^(alpha+1)]^(1/p)

and for ``m >= 1``

    |a_m| + |b_m| <= (4 N / pi) * inf_{0<r<1} 1 / (r^m [1 - r^(alpha+1) (2 - r)^(alpha+1)]^(1/p)).

The constant 4/pi is attained at ``p = inf, alpha = 0`` by
``f_m(z) = (2 gamma N / pi) arg((1 + beta z^m) / (1 - beta z^m))``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .core import HarmonicSeries
from .errors import InvalidAlpha
from .means import NormEstimate, _golden_max, bergman_norm, sup_modulus
from .quadrature import DEFAULT_CONFIG, QuadratureConfig

__all__ = [
    "ExtremalParams",
    "IndexBound",
    "CoeffBoundReport",
    "pointwise_bound",
    "coeff_bound_factor",
    "coeff_bound_alpha0",
    "check_coeff_bounds",
    "extremal_eval",
    "extremal_series",
    "extremal_sup_estimate",
    "BOUND_SLACK",
]

BOUND_SLACK = 1e-9
PRESCAN_POINTS = 1024
GOLDEN_TOL = 1e-12
# outermost sampling radius for the closed-form extremal map (singular at beta z^m = 1)
EXTREMAL_R_MAX = 1 - 1e-12


def _check_alpha(alpha: float):
    if not alpha > -1:
        raise InvalidAlpha(f"bound needs alpha > -1, got {alpha}")


def _log_bracket(r, alpha: float):
    """``log(1 - (r (2 - r))^(alpha+1))``, written via ``r (2 - r) = 1 - (1 - r)^2``."""
    r = np.asarray(r, dtype=float)
    return np.log(-np.expm1((alpha + 1) * np.log1p(-((1 - r) ** 2))))


def pointwise_bound(norm: float, p: float, alpha: float, z: complex) -> float:
    """Upper bound for ``|f(z)|`` given the ``b^p_alpha`` norm of ``f``."""
    _check_alpha(alpha)
    if not 1 <= p < math.inf:
        raise ValueError("p must lie in [1, inf)")
    rho = abs(z)
    if rho >= 1:
        raise ValueError("|z| must be < 1")
    if rho == 0:
        return float(norm)
    return float(norm * math.exp(-float(_log_bracket(rho, alpha)) / p))


def _log_objective(m: int, p: float, alpha: float):
    def obj(r):
        return -m * np.log(r) - _log_bracket(r, alpha) / p

    return obj


def coeff_bound_factor(m: int, p: float, alpha: float) -> tuple[float, float]:
    """``inf_{0<r<1} 1 / (r^m bracket(r)^(1/p))`` and the minimizing radius.

    A 1024-point scan of the log-objective brackets the global minimum before
    golden-section refinement.  For ``p = inf`` the factor is 1, approached as
    ``r -> 1`` and never attained; the radius is then reported as NaN.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    _check_alpha(alpha)
    if p < 1:
        raise ValueError("p must be >= 1")
    if math.isinf(p):
        return 1.0, math.nan
    obj = _log_objective(m, p, alpha)
    grid = (np.arange(PRESCAN_POINTS) + 0.5) / PRESCAN_POINTS
    k = int(np.argmin(obj(grid)))
    lo = grid[k - 1] if k > 0 else 0.0
    hi = grid[k + 1] if k < PRESCAN_POINTS - 1 else 1.0
    lo, hi = max(lo, 1e-300), min(hi, 1 - 1e-16)
    r_star, neg = _golden_max(lambda r: -float(obj(r)), lo, hi, tol=GOLDEN_TOL)
    return math.exp(-neg), float(r_star)


def coeff_bound_alpha0(m: int, p: float) -> float:
    """Closed form ``(2/(pm) + 1)^m (1 + pm/2)^(2/p)`` of the factor at ``alpha = 0``."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if math.isinf(p):
        return 1.0
    if p < 1:
        raise ValueError("p must be >= 1")
    pm = p * m
    return math.exp(m * math.log1p(2 / pm) + (2 / p) * math.log1p(pm / 2))


@dataclass(frozen=True)
class IndexBound:
    m: int
    lhs: float
    factor: float
    bound: float
    r_star: float
    passed: bool

    @property
    def ratio(self) -> float:
        return self.lhs / self.bound if self.bound > 0 else math.nan


@dataclass(frozen=True)
class CoeffBoundReport:
    p: float
    alpha: float
    norm: float
    a0_lhs: float
    a0_passed: bool
    indices: tuple[IndexBound, ...] = field(default=())
    norm_source: str = "computed"

    @property
    def passed(self) -> bool:
        return self.a0_passed and all(ix.passed for ix in self.indices)

    def to_dict(self) -> dict:
        def num(x):
            return None if math.isnan(x) else x

        return {
            "p": "inf" if math.isinf(self.p) else self.p,
            "alpha": self.alpha,
            "norm": self.norm,
            "norm_source": self.norm_source,
            "a0": {"lhs": self.a0_lhs, "bound": self.norm, "pass": self.a0_passed},
            "indices": [
                {"m": ix.m, "lhs": ix.lhs, "factor": ix.factor, "bound": ix.bound,
                 "r_star": num(ix.r_star), "ratio": num(ix.ratio), "pass": ix.passed}
                for ix in self.indices
            ],
            "passed": self.passed,
        }


def check_coeff_bounds(f: HarmonicSeries, p: float, alpha: float, cfg: QuadratureConfig = DEFAULT_CONFIG,
                       *, norm: float | None = None) -> CoeffBoundReport:
    """Compare ``|a_m| + |b_m|`` with the bound at every index carrying a coefficient.

    ``norm`` overrides the computed ``b^p_alpha`` norm; use it when the series is a
    truncation of a mapping whose norm is known in closed form.
    """
    _check_alpha(alpha)
    if norm is None:
        est: NormEstimate = bergman_norm(f, p, alpha, cfg)
        norm_value, source = est.value, "computed"
    else:
        norm_value, source = float(norm), "given"
    a0 = abs(f.a0)
    rows = []
    for m in range(1, max(len(f.analytic_coeffs), len(f.coanalytic_coeffs) + 1)):
        am, bm = f.coefficient_moduli(m)
        if am == 0 and bm == 0:
            continue
        factor, r_star = coeff_bound_factor(m, p, alpha)
        bound = 4 * norm_value / math.pi * factor
        lhs = am + bm
        rows.append(IndexBound(m, lhs, factor, bound, r_star, lhs <= bound + BOUND_SLACK))
    return CoeffBoundReport(float(p), float(alpha), norm_value, a0, a0 <= norm_value + BOUND_SLACK,
                            tuple(rows), source)


# ---------------------------------------------------------------------------
# extremal family


@dataclass(frozen=True)
class ExtremalParams:
    m: int = 1
    beta: complex = 1.0
    gamma: complex = 1.0
    scale: float = 1.0

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be >= 1")
        for name in ("beta", "gamma"):
            if abs(abs(complex(getattr(self, name))) - 1) > 1e-12:
                raise ValueError(f"|{name}| must be 1")
        if not self.scale > 0:
            raise ValueError("scale must be positive")


def extremal_eval(params: ExtremalParams, z):
    """Closed-form extremal mapping; ``|f_m| < scale`` on the open disk."""
    w = complex(params.beta) * np.asarray(z, dtype=complex) ** params.m
    out = np.asarray(2 * complex(params.gamma) * params.scale / math.pi * np.angle((1 + w) / (1 - w)))
    return complex(out) if out.ndim == 0 else out


def extremal_series(params: ExtremalParams, degree: int) -> HarmonicSeries:
    """Taylor coefficients of the extremal mapping up to ``degree``.

    ``arg((1+w)/(1-w)) = Im log((1+w)/(1-w)) = sum_{k odd} (w^k - conj(w)^k) / (i k)``,
    giving ``a_{km} = -2i gamma scale beta^k / (pi k)`` and
    ``b_{km} = -2i conj(gamma) scale beta^k / (pi k)``.
    """
    if degree < params.m:
        raise ValueError(f"degree must be >= m={params.m}")
    beta, gamma, m = complex(params.beta), complex(params.gamma), params.m
    a = np.zeros(degree + 1, complex)
    b = np.zeros(degree, complex)
    for k in range(1, degree // m + 1, 2):
        c = 2 * params.scale / (math.pi * k) * beta ** k
        a[k * m] = -1j * gamma * c
        b[k * m - 1] = -1j * np.conj(gamma) * c
    return HarmonicSeries(tuple(a), tuple(b), name=f"extremal(m={m}),D={degree}")


def extremal_tail_bound(params: ExtremalParams, degree: int, rho: float) -> float:
    """Bound on ``|f_m(z) - S_degree(z)|`` for ``|z| <= rho < 1``."""
    k0 = degree // params.m + 1
    k0 += (k0 + 1) % 2  # first odd k with k m > degree
    terms, k = [], k0
    while True:
        t = 2 / k * rho ** (k * params.m)
        terms.append(t)
        if t < 1e-18 * max(terms[0], 1e-300) or k > k0 + 200000:
            break
        k += 2
    return 2 * params.scale / math.pi * math.fsum(terms)


def extremal_sup_estimate(params: ExtremalParams) -> float:
    """Grid-and-refine estimate of ``sup |f_m|`` from the closed form."""
    value, _z = sup_modulus(lambda z: extremal_eval(params, z), EXTREMAL_R_MAX)
    return value
