"""Instance-level checks of the inequalities, identities, limits and bounds.

Every check returns a :class:`CheckReport`.  A report passes exactly when all
of its witnesses hold within their tolerance; residuals carry diagnostics that
are not pass/fail.  All tolerances live in the constants block below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import bounds, core, means
from . import quadrature as quad
from .core import HarmonicSeries
from .quadrature import DEFAULT_CONFIG, QuadratureConfig

__all__ = [
    "Witness",
    "CheckReport",
    "random_series",
    "check_pointwise_inequalities",
    "check_green_identity",
    "check_monotonicity",
    "check_limit_identities",
    "check_hardy_area_implications",
    "check_coefficient_bounds_suite",
    "check_extremal_sharpness",
    "SUITES",
    "run_suite",
]

# tolerances
INEQ_REL_TOL = 1e-12
GREEN_TOL = 1e-6
MONO_STEP_TOL = 1e-10
FLAT_TOL = 1e-12
LIMIT_REL_TOL = 1e-2
LIMIT_KS = (1, 2, 3, 4, 5, 6)
DIVERGENCE_GROWTH = 1.5
DECAY_FRACTION = 0.05
GRAD_IDENTITY_RTOL = 1e-8
SHARP_SUP_LOW = 1e-4
SHARP_SUP_HIGH = 1e-12
SHARP_COEFF_TOL = 1e-10
SHARP_RATIO_TOL = 1e-4
SUITE_EXTREMAL_TOL = 1e-6
SUITE_SLACK_MIN = 2.0
SUITE_GRID = tuple((p, a) for p in (1.0, 2.0, 4.0, math.inf) for a in (-0.5, 0.0, 2.0))

RELATIONS = {
    "eq": lambda o, e, t: abs(o - e) <= t,
    "le": lambda o, e, t: o <= e + t,
    "ge": lambda o, e, t: o >= e - t,
    "gt": lambda o, e, t: o > e,
    "lt": lambda o, e, t: o < e,
}


@dataclass(frozen=True)
class Witness:
    input: str
    observed: float
    expected: float
    tolerance: float
    relation: str = "eq"

    @property
    def ok(self) -> bool:
        return bool(RELATIONS[self.relation](self.observed, self.expected, self.tolerance))

    def to_dict(self) -> dict:
        return {"input": self.input, "observed": _num(self.observed), "expected": _num(self.expected),
                "tolerance": _num(self.tolerance), "relation": self.relation, "ok": self.ok}


@dataclass
class CheckReport:
    check_id: str
    residuals: list[tuple[str, float]] = field(default_factory=list)
    witnesses: list[Witness] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(w.ok for w in self.witnesses)

    def witness(self, *args, **kwargs) -> Witness:
        w = Witness(*args, **kwargs)
        self.witnesses.append(w)
        return w

    def residual(self, label: str, value):
        self.residuals.append((label, value))

    def failures(self) -> list[Witness]:
        return [w for w in self.witnesses if not w.ok]

    def to_dict(self) -> dict:
        return {
            "check_id": self.check_id,
            "passed": self.passed,
            "residuals": [[label, _num(v)] for label, v in self.residuals],
            "witnesses": [w.to_dict() for w in self.witnesses],
        }


def _num(x):
    if isinstance(x, str):
        return x
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    x = float(x)
    if math.isnan(x):
        return None
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return x


def merge_reports(check_id: str, reports: Sequence[CheckReport]) -> CheckReport:
    out = CheckReport(check_id)
    for rep in reports:
        out.residuals.extend((f"{rep.check_id}:{k}", v) for k, v in rep.residuals)
        out.witnesses.extend(Witness(f"{rep.check_id}:{w.input}", w.observed, w.expected, w.tolerance, w.relation)
                             for w in rep.witnesses)
    return out


def random_series(rng: np.random.Generator, max_degree: int = 8, *, degree: int | None = None,
                  nonvanishing: bool = False) -> HarmonicSeries:
    """Series with complex Gaussian coefficients.

    With ``nonvanishing`` the constant term dominates the sum of the other
    moduli, so ``f`` has no zero on the closed disk.
    """
    d = int(rng.integers(0, max_degree + 1)) if degree is None else degree

    def cplx(n):
        return (rng.standard_normal(n) + 1j * rng.standard_normal(n)) / math.sqrt(2)

    a, b = cplx(d + 1), cplx(d)
    if nonvanishing:
        rest = np.abs(a[1:]).sum() + np.abs(b).sum()
        a[0] = (1.5 * rest + 0.5) * np.exp(1j * np.angle(a[0]))
    return HarmonicSeries(tuple(a), tuple(b))


def _random_point(rng: np.random.Generator, r_max: float = 0.999) -> complex:
    return complex(r_max * math.sqrt(rng.random()) * np.exp(2j * np.pi * rng.random()))


def _describe(f: HarmonicSeries) -> str:
    return f.name or f"deg={f.degree()}"


# ---------------------------------------------------------------------------


def check_pointwise_inequalities(seed: int = 7, n: int = 500) -> CheckReport:
    """Power inequality ``a^p + b^p <= (a+b)^p <= 2^(p-1)(a^p + b^p)`` and the
    Wirtinger-versus-gradient inequality, on ``n`` random instances each."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = np.random.default_rng(seed)
    rep = CheckReport("pointwise")

    a, b = 10 * rng.random(n), 10 * rng.random(n)
    p = 1 + 7 * rng.random(n)
    lower, mid, upper = a ** p + b ** p, (a + b) ** p, 2 ** (p - 1) * (a ** p + b ** p)
    left_margin = np.min((mid - lower) / mid)
    right_margin = np.min((upper - mid) / upper)
    rep.witness(f"power inequality left, {n} random (a,b,p)", float(left_margin), 0.0, INEQ_REL_TOL, "ge")
    rep.witness(f"power inequality right, {n} random (a,b,p)", float(right_margin), 0.0, INEQ_REL_TOL, "ge")
    rep.witness("a=1,b=1,p=2: a^p+b^p", 2.0, 2.0, 0.0)
    rep.witness("a=1,b=1,p=2: (a+b)^p vs 2^(p-1)(a^p+b^p)", (1 + 1) ** 2, 2 ** 1 * 2, 0.0)

    worst, worst_in = math.inf, ""
    for i in range(n):
        f = random_series(rng)
        z = _random_point(rng)
        j = core.jet(f, z)
        nu, nv = core.real_gradients(f, z).norms()
        lhs, rhs = abs(j.dz) + abs(j.dzbar), nu + nv
        margin = (rhs - lhs) / max(rhs, 1.0)
        if margin < worst:
            worst, worst_in = margin, f"instance {i}: {_describe(f)}, z={z:.6g}"
    rep.witness(f"|f_z|+|f_zbar| <= |grad u|+|grad v|, {n} random, worst {worst_in}", worst, 0.0, INEQ_REL_TOL, "ge")

    ex = HarmonicSeries((0, 0, 1), (1,), name="z^2+conj(z)")
    j = core.jet(ex, 0)
    nu, nv = core.real_gradients(ex, 0).norms()
    rep.witness("z^2+conj(z) at 0: |f_z|+|f_zbar|", abs(j.dz) + abs(j.dzbar), 1.0, 0.0)
    rep.witness("z^2+conj(z) at 0: |grad u|+|grad v|", nu + nv, 2.0, 0.0)
    rep.witness("z^2+conj(z) at 0: strict gap", nu + nv - abs(j.dz) - abs(j.dzbar), 0.0, 0.0, "gt")
    rep.residual("n_instances", n)
    return rep


def check_green_identity(f: HarmonicSeries, p: float, r: float, cfg: QuadratureConfig = DEFAULT_CONFIG) -> CheckReport:
    rep = CheckReport("green")
    lhs, rhs = quad.green_lhs_rhs(f, p, r, cfg)
    rep.witness(f"{_describe(f)}, p={p}, r={r}", lhs, rhs, GREEN_TOL * (1 + abs(lhs)))
    rep.residual("lhs", lhs)
    rep.residual("rhs", rhs)
    rep.residual("abs_residual", abs(lhs - rhs))
    return rep


def check_monotonicity(f: HarmonicSeries, p: float, alpha: float | None = None,
                       r_grid: Sequence[float] | None = None, cfg: QuadratureConfig = DEFAULT_CONFIG) -> CheckReport:
    """``I_p`` (no alpha) or ``M_{p,alpha}`` is nondecreasing, strictly unless f is constant."""
    if r_grid is None:
        r_grid = np.linspace(0.02, 0.98, 50)
    kind = "Ip" if alpha is None else "Mpalpha"
    rep = CheckReport("monotonicity")
    curve = means.mean_curve(f, kind, p, r_grid, alpha, cfg)
    v = np.array(curve.values)
    label = f"{kind} of {_describe(f)}, p={p}" + ("" if alpha is None else f", alpha={alpha}")
    if f.is_constant():
        rep.witness(f"{label}: max deviation from flat", float(np.max(np.abs(v - v[0]))), 0.0, FLAT_TOL, "le")
        rep.residual("constant", True)
    else:
        rep.witness(f"{label}: min successive difference", float(np.min(np.diff(v))), 0.0, MONO_STEP_TOL, "ge")
        rep.witness(f"{label}: total increase", float(v[-1] - v[0]), 0.0, 0.0, "gt")
    if p == 1:
        rep.residual("note: p=1, monotone but strictness not guaranteed", True)
    rep.residual("all_converged", all(curve.converged))
    return rep


def check_limit_identities(f: HarmonicSeries, p: float, alpha: float, cfg: QuadratureConfig = DEFAULT_CONFIG) -> CheckReport:
    """Limits of ``M_{p,alpha}^p`` as ``r -> 1``, divergence for ``alpha <= -1`` and the decay curve."""
    if p <= 1:
        raise ValueError("p must be > 1")
    rep = CheckReport("limits")
    radii = [1 - 10.0 ** -k for k in LIMIT_KS]
    mp = [means.area_mean(f, p, alpha, r, cfg) ** p for r in radii]
    for k, v in zip(LIMIT_KS, mp):
        rep.residual(f"M^p at r=1-1e-{k}", v)
    if alpha > -1:
        target = means.bergman_norm(f, p, alpha, cfg).value ** p
        label = f"bergman_norm^p, {_describe(f)}, p={p}, alpha={alpha}"
    else:
        target = means.hardy_norm(f, p, cfg).value ** p
        label = f"hardy_norm^p, {_describe(f)}, p={p}, alpha={alpha}"
        integrals = [quad.weighted_area_integral(f, p, alpha, r, cfg) for r in radii]
        for k, v in zip(LIMIT_KS, integrals):
            rep.residual(f"weighted integral at r=1-1e-{k}", v)
        if f.is_zero():
            rep.witness("zero series: weighted integral stays 0", max(abs(x) for x in integrals), 0.0, 0.0, "le")
        else:
            growth = integrals[-1] / integrals[2] if integrals[2] > 0 else math.inf
            rep.witness(f"divergence: integral(1-1e-6)/integral(1-1e-3), alpha={alpha}", growth,
                        DIVERGENCE_GROWTH, 0.0, "ge")
    rep.witness(f"M^p at r=1-1e-{LIMIT_KS[-1]} vs {label}", mp[-1], target, LIMIT_REL_TOL * max(target, 1e-300))
    rep.residual("limit_target", target)
    if 1 < p <= 2:
        decay = means.thm2_decay_curve(f, p, radii)
        first, last = decay.values[0], decay.values[-1]
        if first > 0:
            rep.witness("decay curve: last < first", last, first, 0.0, "lt")
        else:
            rep.witness("decay curve of a constant: identically 0", last, 0.0, 0.0)
        rep.witness("decay curve: last < 0.05 (first + 1)", last, DECAY_FRACTION * (first + 1), 0.0, "lt")
    return rep


def _family_series(family, degree: int) -> HarmonicSeries:
    kind = family["kind"]
    if kind == "power_singular":
        return core.gen_family("power_singular", degree, beta=family["beta"])
    return core.gen_family(kind, degree)


def _family_in_hp(family, p: float) -> bool:
    if family["kind"] == "power_singular":
        return family["beta"] * p < 1
    if family["kind"] == "log":
        return True
    raise ValueError(f"no H^p membership rule for family {family['kind']!r}")


def check_hardy_area_implications(f: HarmonicSeries | None, p: float, cfg: QuadratureConfig = DEFAULT_CONFIG, *,
                                  family: dict | None = None,
                                  degrees: Sequence[int] = (50, 100, 200)) -> CheckReport:
    """Instance consistency between Hardy membership and ``int_0^1 A_h^(p/2) dr``.

    For a truncated family (``{"kind": "power_singular", "beta": b}`` or
    ``{"kind": "log"}``) the integral is tracked across degrees.  Its increments
    under degree doubling shrink geometrically (ratio < 1) exactly when the
    untruncated family has a finite integral, which the known membership rule
    predicts.
    """
    if p <= 1:
        raise ValueError("p must be > 1")
    rep = CheckReport("hardy_area")
    if f is None:
        if family is None:
            raise ValueError("need f or family")
        f = _family_series(family, max(degrees))
    norm = means.hardy_norm(f, p, cfg)
    integral = means.theorem1_integral(f, p, cfg)
    rep.residual("hardy_norm", norm.value)
    rep.residual("theorem1_integral", integral)
    rep.witness(f"{_describe(f)}: hardy norm finite", norm.value, math.inf, 0.0, "lt")
    rep.witness(f"{_describe(f)}: integral finite", integral, math.inf, 0.0, "lt")

    phi, psi = core.decompose(f)
    F1, F2 = core.analytic_completions(f)
    if p <= 2:
        chain = 2 ** ((2 * p - 1) / 2) * (means.theorem1_integral(F1, p, cfg) + means.theorem1_integral(F2, p, cfg))
        rep.witness("integral(f) <= 2^((2p-1)/2) [integral(F1) + integral(F2)]", integral, chain,
                    INEQ_REL_TOL * max(chain, 1.0), "le")
        const = (p / (p - 1)) ** (1 / p)
        for k, F in ((1, F1), (2, F2)):
            F = HarmonicSeries((F.a0 - 1j * F.a0.imag,) + F.analytic_coeffs[1:], ())
            lhs = means.hardy_norm(F, p, cfg).value
            rhs = const * means.hardy_norm(core.real_part(F), p, cfg).value
            rep.witness(f"Riesz: ||F{k}||_p <= (p/(p-1))^(1/p) ||Re F{k}||_p", lhs, rhs,
                        INEQ_REL_TOL * max(rhs, 1.0), "le")
        r = 0.9
        for k, (F, comp) in enumerate(((F1, 0), (F2, 1)), start=1):
            area_F = core.area_function_exact(F, r)

            def grad_sq(z, comp=comp):
                _, dz, dzbar = core.wirtinger(f, z)
                fx, fy = dz + dzbar, 1j * (dz - dzbar)
                gx, gy = (fx.real, fy.real) if comp == 0 else (fx.imag, fy.imag)
                return gx ** 2 + gy ** 2

            area_u = quad.disk_integral(grad_sq, r, cfg)
            rep.witness(f"int_D_r |F{k}'|^2 = int_D_r |grad {'uv'[comp]}|^2, r={r}", area_F, area_u,
                        GRAD_IDENTITY_RTOL * max(abs(area_u), 1e-300))
    else:
        rhs = means.hardy_norm(phi, p, cfg).value + means.hardy_norm(psi, p, cfg).value
        rep.witness("Minkowski: ||f||_p <= ||phi||_p + ||psi||_p", norm.value, rhs, INEQ_REL_TOL * max(rhs, 1.0), "le")

    if family is not None:
        vals = [means.theorem1_integral(_family_series(family, d), p, cfg) for d in degrees]
        for d, v in zip(degrees, vals):
            rep.residual(f"integral at degree {d}", v)
        rel_change = abs(vals[-1] - vals[-2]) / abs(vals[-1]) if vals[-1] else 0.0
        rep.residual(f"relative change {degrees[-2]}->{degrees[-1]}", rel_change)
        d1, d2 = vals[-2] - vals[-3], vals[-1] - vals[-2]
        ratio = d2 / d1 if d1 > 0 else math.inf
        rep.residual("increment ratio under degree doubling", ratio)
        in_hp = _family_in_hp(family, p)
        rep.residual("family in H^p", in_hp)
        if in_hp:
            rep.witness(f"{family} in H^p: increments shrink (integral bounded)", ratio, 1.0, 0.0, "lt")
            rep.residual("extrapolated limit", vals[-1] + d2 * ratio / (1 - ratio))
        else:
            rep.witness(f"{family} not in H^p: increments do not shrink", ratio, 1.0, 0.0, "ge")
    return rep


def check_coefficient_bounds_suite(seed: int = 11, n: int = 100, cfg: QuadratureConfig = DEFAULT_CONFIG) -> CheckReport:
    """Coefficient bounds on ``n`` random series at every ``(p, alpha)`` of the grid."""
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = np.random.default_rng(seed)
    rep = CheckReport("coefficient_bounds")
    corpus = [random_series(rng) for _ in range(n)]
    for p, alpha in SUITE_GRID:
        worst, worst_in, count = math.inf, "", 0
        for i, f in enumerate(corpus):
            report = bounds.check_coeff_bounds(f, p, alpha, cfg)
            margins = [report.norm - report.a0_lhs] + [ix.bound - ix.lhs for ix in report.indices]
            count += len(margins)
            m = min(margins)
            if m < worst:
                worst, worst_in = m, f"series {i} ({_describe(f)})"
        rep.witness(f"p={p}, alpha={alpha}: min(bound - lhs) over {count} comparisons, worst {worst_in}",
                    worst, 0.0, bounds.BOUND_SLACK, "ge")

    z = HarmonicSeries((0, 1), name="z")
    ix = bounds.check_coeff_bounds(z, 2, 0, cfg).indices[0]
    rep.witness("f=z, p=2, alpha=0: slack", ix.bound - ix.lhs, SUITE_SLACK_MIN, 0.0, "ge")

    params = bounds.ExtremalParams(m=1)
    ext = bounds.extremal_series(params, 200)
    sup = bounds.extremal_sup_estimate(params)
    ix = bounds.check_coeff_bounds(ext, math.inf, 0, cfg, norm=sup).indices[0]
    rep.witness("extremal m=1, p=inf, alpha=0: lhs/bound", ix.ratio, 1.0, SUITE_EXTREMAL_TOL)
    rep.residual("n_series", n)
    return rep


def check_extremal_sharpness(m: int = 1, cfg: QuadratureConfig = DEFAULT_CONFIG, *,
                             beta: complex = 1.0, gamma: complex = 1.0) -> CheckReport:
    """Equality in the 4/pi bound for the extremal mapping of index ``m``.

    The sup norm is estimated from the closed form.  The truncated series'
    own sup is reported as a residual: its boundary values are partial Fourier
    sums of a square wave and overshoot by the Gibbs constant.
    """
    params = bounds.ExtremalParams(m=m, beta=beta, gamma=gamma, scale=1.0)
    rep = CheckReport("sharpness")
    series = bounds.extremal_series(params, 200 * m)
    sup = bounds.extremal_sup_estimate(params)
    lhs = sum(series.coefficient_moduli(m))
    rep.witness("sup |f_m| >= 1 - 1e-4", sup, 1 - SHARP_SUP_LOW, 0.0, "ge")
    rep.witness("sup |f_m| <= 1 + 1e-12", sup, 1 + SHARP_SUP_HIGH, 0.0, "le")
    rep.witness(f"|a_{m}|+|b_{m}| = 4/pi", lhs, 4 / math.pi, SHARP_COEFF_TOL)
    rep.witness("(|a_m|+|b_m|) / ((4/pi) sup)", lhs / (4 / math.pi * sup), 1.0, SHARP_RATIO_TOL)
    rep.residual("sup_estimate", sup)
    rep.residual("truncated_series_sup", means.sup_norm(series).value)
    rep.residual("beta", str(complex(beta)))
    rep.residual("gamma", str(complex(gamma)))
    return rep


# ---------------------------------------------------------------------------
# default suite


def _suite_pointwise(seed, cfg):
    return check_pointwise_inequalities(seed, 500)


def _suite_green(seed, cfg):
    return check_green_identity(HarmonicSeries((0.3j, 1), (0, 1), name="z+conj(z)^2+0.3i"), 4, 0.7, cfg)


def _suite_monotonicity(seed, cfg):
    f = random_series(np.random.default_rng(seed), degree=6)
    return check_monotonicity(f, 1.5, -2.0, np.linspace(0.02, 0.98, 50), cfg)


def _suite_limits(seed, cfg):
    f = HarmonicSeries((0.5, 0, 1), (1,), name="0.5+z^2+conj(z)")
    return merge_reports("limits", [check_limit_identities(f, 2.0, a, cfg) for a in (0.0, -2.0)])


def _suite_hardy_area(seed, cfg):
    return check_hardy_area_implications(None, 1.5, cfg, family={"kind": "power_singular", "beta": 0.5})


def _suite_coefficient_bounds(seed, cfg):
    return check_coefficient_bounds_suite(seed, 100, cfg)


def _suite_sharpness(seed, cfg):
    return check_extremal_sharpness(1, cfg)


SUITES: dict[str, Callable[[int, QuadratureConfig], CheckReport]] = {
    "pointwise": _suite_pointwise,
    "green": _suite_green,
    "monotonicity": _suite_monotonicity,
    "limits": _suite_limits,
    "hardy_area": _suite_hardy_area,
    "coefficient_bounds": _suite_coefficient_bounds,
    "sharpness": _suite_sharpness,
}


def run_suite(name: str = "all", seed: int = 42, cfg: QuadratureConfig = DEFAULT_CONFIG,
              max_workers: int | None = None) -> list[CheckReport]:
    """Run one named check or all of them; output order is the order of :data:`SUITES`."""
    if name == "all":
        names = list(SUITES)
    elif name in SUITES:
        names = [name]
    else:
        raise KeyError(name)
    if max_workers is None or max_workers <= 1 or len(names) == 1:
        return [SUITES[n](seed, cfg) for n in names]
    from concurrent.futures import ThreadPoolExecutor

    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        futures = [pool.submit(SUITES[n], seed, cfg) for n in names]
        return [fut.result() for fut in futures]
