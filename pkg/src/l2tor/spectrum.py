"""Explicit spectra with weights, their heat traces, and circle spectra.

A Spectrum is a finite weighted eigenvalue list; the weight of an eigenvalue
is its multiplicity times the trace normalization.  Heat traces and the
numerically stable variants needed by the small-time integrals live here,
together with the circle spectra used as cross-checking fixtures (their heat
traces have a fast dual-series form).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .sdf import SpectralDensityFunction

__all__ = [
    "Spectrum",
    "heat_trace_from_spectrum",
    "circle_spectrum",
    "circle_heat_trace",
]


@dataclass(frozen=True)
class Spectrum:
    """Sorted nonnegative eigenvalues with positive weights."""

    eigenvalues: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        eig = np.asarray(self.eigenvalues, dtype=float)
        w = np.asarray(self.weights, dtype=float)
        if eig.shape != w.shape or eig.ndim != 1:
            raise ValueError("eigenvalues and weights must be 1-d of equal length")
        if eig.size:
            if eig.min() < 0 or not np.all(np.isfinite(eig)):
                raise ValueError("eigenvalues must be finite and nonnegative")
            if w.min() <= 0 or not np.all(np.isfinite(w)):
                raise ValueError("weights must be finite and positive")
        order = np.argsort(eig, kind="stable")
        object.__setattr__(self, "eigenvalues", eig[order])
        object.__setattr__(self, "weights", w[order])

    @staticmethod
    def from_pairs(pairs) -> "Spectrum":
        pairs = list(pairs)
        if not pairs:
            return Spectrum(np.zeros(0), np.zeros(0))
        eig, w = zip(*pairs)
        return Spectrum(np.asarray(eig, dtype=float), np.asarray(w, dtype=float))

    @property
    def kernel_weight(self) -> float:
        return float(self.weights[self.eigenvalues == 0.0].sum())

    @property
    def total_weight(self) -> float:
        return float(self.weights.sum())

    def positive_part(self) -> "Spectrum":
        mask = self.eigenvalues > 0
        return Spectrum(self.eigenvalues[mask], self.weights[mask])

    @property
    def spectral_gap(self) -> float:
        """Smallest positive eigenvalue; inf for a kernel-only spectrum."""
        pos = self.eigenvalues[self.eigenvalues > 0]
        return float(pos[0]) if pos.size else math.inf

    def heat_trace(self, t: float, include_kernel: bool = False) -> float:
        if t <= 0:
            raise ValueError("time must be positive")
        mask = slice(None) if include_kernel else self.eigenvalues > 0
        return float(np.sum(self.weights[mask] * np.exp(-t * self.eigenvalues[mask])))

    def heat_trace_residual(self, t: float) -> float:
        """Kernel-free trace minus its t -> 0 limit, without cancellation.

        Equals sum of w (e^{-t lam} - 1) over positive eigenvalues, computed
        through expm1.
        """
        mask = self.eigenvalues > 0
        return float(np.sum(self.weights[mask] * np.expm1(-t * self.eigenvalues[mask])))

    def counting_function(self, include_kernel: bool = False) -> SpectralDensityFunction:
        """Step function lambda -> weighted count of eigenvalues <= lambda."""
        mask = slice(None) if include_kernel else self.eigenvalues > 0
        return SpectralDensityFunction.from_jumps(self.eigenvalues[mask], self.weights[mask])

    def union(self, other: "Spectrum") -> "Spectrum":
        return Spectrum(np.concatenate([self.eigenvalues, other.eigenvalues]),
                        np.concatenate([self.weights, other.weights]))

    def scaled_weights(self, c: float) -> "Spectrum":
        return Spectrum(self.eigenvalues, c * self.weights)


def heat_trace_from_spectrum(S: Spectrum, t: float, include_kernel: bool = False) -> float:
    """Weighted exponential sum over the spectrum at time t > 0."""
    return S.heat_trace(t, include_kernel)


def circle_spectrum(circumference: float, n_max: int) -> Spectrum:
    """Eigenvalues (2 pi n / L)^2 for |n| <= n_max, multiplicity two for n > 0."""
    if circumference <= 0:
        raise ValueError("circumference must be positive")
    base = (2.0 * math.pi / circumference) ** 2
    eigs = [0.0] + [base * n * n for n in range(1, n_max + 1)]
    weights = [1.0] + [2.0] * n_max
    return Spectrum(np.asarray(eigs), np.asarray(weights))


def _theta_dual_sum(L: float, t: float, terms: int = 64) -> float:
    """sum over k >= 1 of 2 exp(-k^2 L^2 / 4t)."""
    ks = np.arange(1, terms + 1, dtype=float)
    return float(2.0 * np.sum(np.exp(-(ks ** 2) * L * L / (4.0 * t))))


def circle_heat_trace(circumference: float, t: float, include_zero: bool = True) -> float:
    """Full heat trace of the circle Laplacian, switching between the
    eigenvalue series and the image (dual) series at t = L^2 / (4 pi) so the
    faster-converging form is always used."""
    if t <= 0:
        raise ValueError("time must be positive")
    L = circumference
    t_star = L * L / (4.0 * math.pi)
    if t < t_star:
        value = L / math.sqrt(4.0 * math.pi * t) * (1.0 + _theta_dual_sum(L, t))
    else:
        base = (2.0 * math.pi / L) ** 2
        n_max = int(math.ceil(math.sqrt(40.0 / (base * t)))) + 2
        ns = np.arange(1, n_max + 1, dtype=float)
        value = 1.0 + float(2.0 * np.sum(np.exp(-t * base * ns ** 2)))
    return value if include_zero else value - 1.0


def circle_heat_trace_residual(circumference: float, t: float) -> float:
    """Kernel-free circle trace minus its expansion L (4 pi t)^{-1/2} - 1,
    exact and stable for all t (the difference is the dual-series tail)."""
    L = circumference
    t_star = L * L / (4.0 * math.pi)
    if t < t_star:
        return L / math.sqrt(4.0 * math.pi * t) * _theta_dual_sum(L, t)
    return (circle_heat_trace(L, t, include_zero=False)
            - L / math.sqrt(4.0 * math.pi * t) + 1.0)
