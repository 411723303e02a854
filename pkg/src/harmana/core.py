"""Finite harmonic series and the closed-form quantities attached to them.

A harmonic mapping on the unit disk is carried as two coefficient lists,

    f(z) = sum_{m>=0} a_m z^m + sum_{m>=1} conj(b_m) conj(z)^m,

so the stored ``b_m`` is the coefficient whose modulus enters
``|a_m| + |b_m|`` directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "HarmonicSeries",
    "WirtingerJet",
    "GradientPair",
    "horner",
    "eval_series",
    "jet",
    "real_gradients",
    "decompose",
    "analytic_completions",
    "real_part",
    "parseval_i2",
    "area_function_exact",
    "gen_family",
]


def _as_coeffs(values: Iterable[complex]) -> tuple[complex, ...]:
    return tuple(complex(v) for v in values)


@dataclass(frozen=True)
class HarmonicSeries:
    """Immutable pair of coefficient lists ``a_0..a_M`` and ``b_1..b_N``."""

    analytic_coeffs: tuple[complex, ...] = ()
    coanalytic_coeffs: tuple[complex, ...] = ()
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "analytic_coeffs", _as_coeffs(self.analytic_coeffs))
        object.__setattr__(self, "coanalytic_coeffs", _as_coeffs(self.coanalytic_coeffs))
        for c in self.analytic_coeffs + self.coanalytic_coeffs:
            if not (math.isfinite(c.real) and math.isfinite(c.imag)):
                raise ValueError("coefficients must be finite")

    @classmethod
    def from_coeffs(cls, a: Sequence[complex] = (), b: Sequence[complex] = (), name=None):
        return cls(tuple(a), tuple(b), name)

    @classmethod
    def constant(cls, c: complex) -> "HarmonicSeries":
        return cls((c,), ())

    @cached_property
    def a(self) -> np.ndarray:
        """Analytic coefficients as an array, index m holds a_m."""
        return np.array(self.analytic_coeffs, dtype=complex)

    @cached_property
    def b(self) -> np.ndarray:
        """Co-analytic coefficients as an array, index m holds b_m (b[0] is 0)."""
        return np.concatenate([[0j], np.array(self.coanalytic_coeffs, dtype=complex)])

    @property
    def a0(self) -> complex:
        return self.analytic_coeffs[0] if self.analytic_coeffs else 0j

    def degree(self) -> int:
        """Largest index carrying a nonzero coefficient (0 for constants and for f = 0)."""
        deg = 0
        for m, c in enumerate(self.analytic_coeffs):
            if c != 0:
                deg = max(deg, m)
        for m, c in enumerate(self.coanalytic_coeffs, start=1):
            if c != 0:
                deg = max(deg, m)
        return deg

    def is_constant(self) -> bool:
        return self.degree() == 0

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.analytic_coeffs + self.coanalytic_coeffs)

    def coefficient_moduli(self, m: int) -> tuple[float, float]:
        """Return ``(|a_m|, |b_m|)``, zero past either list."""
        am = abs(self.analytic_coeffs[m]) if m < len(self.analytic_coeffs) else 0.0
        bm = abs(self.coanalytic_coeffs[m - 1]) if 1 <= m <= len(self.coanalytic_coeffs) else 0.0
        return am, bm

    def __call__(self, z):
        return eval_series(self, z)

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"HarmonicSeries{label}(a={list(self.analytic_coeffs)}, b={list(self.coanalytic_coeffs)})"


@dataclass(frozen=True)
class WirtingerJet:
    value: complex
    dz: complex
    dzbar: complex

    def grad_hat_norm_sq(self) -> float:
        return abs(self.dz) ** 2 + abs(self.dzbar) ** 2


@dataclass(frozen=True)
class GradientPair:
    grad_u: tuple[float, float]
    grad_v: tuple[float, float]

    def norms(self) -> tuple[float, float]:
        return math.hypot(*self.grad_u), math.hypot(*self.grad_v)


def horner(coeffs: np.ndarray, z):
    """Evaluate ``sum_k coeffs[k] z**k`` by Horner's rule; ``z`` may be an array."""
    z = np.asarray(z)
    out = np.zeros(np.shape(z), dtype=np.result_type(coeffs, z, float))
    for c in coeffs[::-1]:
        out = out * z + c
    return out


def eval_series(f: HarmonicSeries, z):
    """Evaluate f at ``z`` (scalar or array) with one Horner pass per part."""
    z = np.asarray(z, dtype=complex)
    value = horner(f.a, z) if f.analytic_coeffs else np.zeros(z.shape, complex)
    if f.coanalytic_coeffs:
        value = value + np.conj(horner(f.b, z))
    return value[()] if value.ndim == 0 else value


def _derivative_coeffs(c: np.ndarray) -> np.ndarray:
    return c[1:] * np.arange(1, len(c))


def wirtinger(f: HarmonicSeries, z):
    """Vectorised ``(f, f_z, f_zbar)`` at ``z``."""
    z = np.asarray(z, dtype=complex)
    value = eval_series(f, z)
    zero = np.zeros(z.shape, complex)
    dz = horner(_derivative_coeffs(f.a), z) if len(f.a) > 1 else zero
    dzbar = np.conj(horner(_derivative_coeffs(f.b), z)) if len(f.b) > 1 else zero
    return value, dz, dzbar


def jet(f: HarmonicSeries, z: complex) -> WirtingerJet:
    value, dz, dzbar = wirtinger(f, complex(z))
    return WirtingerJet(complex(value), complex(dz), complex(dzbar))


def real_gradients(f: HarmonicSeries, z: complex) -> GradientPair:
    """Gradients of ``u = Re f`` and ``v = Im f`` at ``z``.

    Uses ``f_x = f_z + f_zbar`` and ``f_y = i (f_z - f_zbar)``.
    """
    j = jet(f, z)
    fx = j.dz + j.dzbar
    fy = 1j * (j.dz - j.dzbar)
    return GradientPair((fx.real, fy.real), (fx.imag, fy.imag))


def decompose(f: HarmonicSeries) -> tuple[HarmonicSeries, HarmonicSeries]:
    """Canonical split ``f = phi + conj(psi)`` with ``psi(0) = 0``."""
    phi = HarmonicSeries(f.analytic_coeffs, ())
    psi = HarmonicSeries((0j,) + f.coanalytic_coeffs, ()) if f.coanalytic_coeffs else HarmonicSeries((), ())
    return phi, psi


def _pad(c: Sequence[complex], n: int) -> np.ndarray:
    out = np.zeros(n, complex)
    out[: len(c)] = c
    return out


def analytic_completions(f: HarmonicSeries) -> tuple[HarmonicSeries, HarmonicSeries]:
    """Analytic ``F1, F2`` with ``Re F1 = Re f`` and ``Re F2 = Im f``.

    ``F1 = phi + psi`` and ``F2 = -i (phi - psi)``; no imaginary constant is added.
    """
    phi, psi = decompose(f)
    n = max(len(phi.analytic_coeffs), len(psi.analytic_coeffs), 1)
    p, q = _pad(phi.analytic_coeffs, n), _pad(psi.analytic_coeffs, n)
    return HarmonicSeries(tuple(p + q)), HarmonicSeries(tuple(-1j * (p - q)))


def real_part(f: HarmonicSeries) -> HarmonicSeries:
    """The real harmonic function ``Re f`` as a series."""
    phi, psi = decompose(f)
    n = max(len(phi.analytic_coeffs), len(psi.analytic_coeffs), 1)
    c = (_pad(phi.analytic_coeffs, n) + _pad(psi.analytic_coeffs, n)) / 2
    # Re F = (F + conj F)/2 for the analytic F = phi + psi
    a = c.copy()
    a[0] = 2 * c[0].real
    return HarmonicSeries(tuple(a), tuple(c[1:]))


def _moduli_sq(f: HarmonicSeries, n: int) -> np.ndarray:
    """|a_k|^2 + |b_k|^2 for k = 0..n-1 (b_0 := 0)."""
    return np.abs(_pad(f.analytic_coeffs, n)) ** 2 + np.abs(_pad((0j,) + f.coanalytic_coeffs, n)) ** 2


def _length(f: HarmonicSeries) -> int:
    return max(len(f.analytic_coeffs), len(f.coanalytic_coeffs) + 1, 1)


def parseval_i2(f: HarmonicSeries, r):
    """Closed-form circle mean of ``|f|^2`` on ``|z| = r``."""
    c = _moduli_sq(f, _length(f))
    r2 = np.asarray(r, dtype=float) ** 2
    out = horner(c, r2)
    return float(out) if out.ndim == 0 else out


def area_function_exact(f: HarmonicSeries, r):
    """``A_h(r, f) = sum_{n>=1} n (|a_n|^2 + |b_n|^2) r^{2n}`` (normalized area measure)."""
    c = _moduli_sq(f, _length(f)) * np.arange(_length(f))
    r2 = np.asarray(r, dtype=float) ** 2
    out = horner(c, r2)
    return float(out) if out.ndim == 0 else out


def gen_family(kind: str, degree: int, *, beta: float | None = None, params=None) -> HarmonicSeries:
    """Truncated test families.

    ``power_singular`` is the binomial series of ``(1 - z)^(-beta)``, ``log`` is
    ``log(1/(1 - z)) = sum z^n / n`` and ``extremal`` expands the extremal mapping
    described by ``params`` (an ``ExtremalParams``).
    """
    if degree < 0:
        raise ValueError(f"degree must be >= 0, got {degree}")
    if kind == "power_singular":
        if beta is None:
            raise ValueError("power_singular needs beta")
        coeffs = np.empty(degree + 1)
        coeffs[0] = 1.0
        for n in range(1, degree + 1):
            coeffs[n] = coeffs[n - 1] * (n - 1 + beta) / n
        return HarmonicSeries(tuple(coeffs), (), name=f"power_singular({beta}),D={degree}")
    if kind == "log":
        coeffs = [0.0] + [1.0 / n for n in range(1, degree + 1)]
        return HarmonicSeries(tuple(coeffs), (), name=f"log,D={degree}")
    if kind == "extremal":
        from .bounds import extremal_series

        if params is None:
            raise ValueError("extremal needs params")
        return extremal_series(params, degree)
    raise ValueError(f"unknown family {kind!r}")
