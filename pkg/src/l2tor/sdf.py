"""Spectral density functions as exact right-continuous step functions.

The spectral density of a map f counts, weighted by the source trace
normalization, the generalized singular values of f that are <= lambda.
Everything here manipulates finite breakpoint lists exactly, so that
"<= for all lambda" questions are decidable on finitely many probes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import RANK_RTOL, TIE_RTOL, ZERO_SV_ATOL
from .traced import TracedMap

__all__ = [
    "SpectralDensityFunction",
    "sdf_of_map",
    "reduced_sdf",
    "variational_sdf",
    "ns_exponent_fit",
    "NsExponentFit",
]


class SpectralDensityFunction:
    """Nondecreasing right-continuous step function on [0, inf).

    Stored as sorted breakpoint positions with the cumulative value
    attained at (and right of) each breakpoint.  The value left of the
    first breakpoint is 0.
    """

    __slots__ = ("lams", "vals")

    def __init__(self, lams, vals):
        lams = np.asarray(lams, dtype=float)
        vals = np.asarray(vals, dtype=float)
        if lams.shape != vals.shape or lams.ndim != 1:
            raise ValueError("breakpoints and values must be 1-d arrays of equal length")
        if lams.size:
            if np.any(np.diff(lams) <= 0):
                raise ValueError("breakpoint positions must be strictly increasing")
            if lams[0] < 0:
                raise ValueError("breakpoints must be nonnegative")
            if np.any(np.diff(vals) < 0) or vals[0] < 0:
                raise ValueError("values must be nonnegative and nondecreasing")
        self.lams = lams
        self.vals = vals

    @staticmethod
    def from_jumps(positions, weights) -> "SpectralDensityFunction":
        """Build from (position, jump-size) pairs; positions may repeat."""
        positions = np.asarray(positions, dtype=float)
        weights = np.asarray(weights, dtype=float)
        order = np.argsort(positions, kind="stable")
        positions, weights = positions[order], weights[order]
        uniq, idx = np.unique(positions, return_index=True)
        jump = np.add.reduceat(weights, idx) if weights.size else weights
        return SpectralDensityFunction(uniq, np.cumsum(jump))

    @staticmethod
    def zero() -> "SpectralDensityFunction":
        return SpectralDensityFunction(np.zeros(0), np.zeros(0))

    # -- evaluation ----------------------------------------------------------------

    def __call__(self, lam: float, tie_rtol: float = 0.0) -> float:
        """Value at lam; tie_rtol >= 0 forgives floating-point breakpoint ties."""
        if self.lams.size == 0:
            return 0.0
        probe = lam + tie_rtol * max(1.0, abs(lam))
        idx = np.searchsorted(self.lams, probe, side="right")
        return 0.0 if idx == 0 else float(self.vals[idx - 1])

    @property
    def total(self) -> float:
        return float(self.vals[-1]) if self.vals.size else 0.0

    def value_at_zero(self) -> float:
        return self(0.0)

    @property
    def max_breakpoint(self) -> float:
        return float(self.lams[-1]) if self.lams.size else 0.0

    # -- exact step-function algebra -----------------------------------------------

    def reduced(self) -> "SpectralDensityFunction":
        """Subtract the value at 0 (kernel contribution)."""
        f0 = self.value_at_zero()
        if f0 == 0.0:
            return self
        keep = self.lams > 0
        return SpectralDensityFunction(self.lams[keep], self.vals[keep] - f0)

    def scaled_argument(self, c: float) -> "SpectralDensityFunction":
        """Return lambda -> F(c * lambda) for c > 0."""
        if not c > 0:
            raise ValueError("scale must be positive")
        return SpectralDensityFunction(self.lams / c, self.vals)

    def power_argument(self, a: float) -> "SpectralDensityFunction":
        """Return lambda -> F(lambda ** a) for a > 0 (domain lambda >= 0)."""
        if not a > 0:
            raise ValueError("exponent must be positive")
        return SpectralDensityFunction(self.lams ** (1.0 / a), self.vals)

    def plus(self, other: "SpectralDensityFunction") -> "SpectralDensityFunction":
        pos = np.concatenate([self.lams, other.lams])
        jumps_self = np.diff(self.vals, prepend=0.0)
        jumps_other = np.diff(other.vals, prepend=0.0)
        return SpectralDensityFunction.from_jumps(
            pos, np.concatenate([jumps_self, jumps_other])
        )

    def plus_constant(self, c: float) -> "SpectralDensityFunction":
        if c == 0.0:
            return self
        if c < 0:
            raise ValueError("constant shift must be nonnegative")
        if self.lams.size and self.lams[0] == 0.0:
            return SpectralDensityFunction(self.lams, self.vals + c)
        return SpectralDensityFunction(
            np.concatenate([[0.0], self.lams]), np.concatenate([[c], self.vals + c])
        )

    # -- probing grids ---------------------------------------------------------------

    def probe_points(self) -> np.ndarray:
        """Breakpoints, midpoints between them, 0, and a point past the top."""
        pts = [0.0]
        lams = self.lams
        pts.extend(lams)
        if lams.size > 1:
            pts.extend(0.5 * (lams[1:] + lams[:-1]))
        top = self.max_breakpoint
        pts.append(1.1 * top + 1.0)
        return np.unique(np.asarray(pts, dtype=float))

    def equals(self, other: "SpectralDensityFunction", value_atol: float = 1e-8,
               tie_rtol: float = TIE_RTOL) -> bool:
        probes = np.unique(np.concatenate([self.probe_points(), other.probe_points()]))
        for lam in probes:
            if abs(self(lam, tie_rtol) - other(lam, tie_rtol)) > value_atol:
                return False
        return True


def sdf_of_map(f: TracedMap, rank_rtol: float = RANK_RTOL) -> SpectralDensityFunction:
    """Spectral density of f: counts generalized singular values <= lambda.

    Exact step function; eigenvalues are computed once, tiny singular
    values are clamped to zero by the deterministic rank rule.
    """
    sv = f.clamped_singular_values(rank_rtol)
    weights = np.full(sv.shape, f.source.normalization)
    return SpectralDensityFunction.from_jumps(sv, weights)


def reduced_sdf(f: TracedMap, rank_rtol: float = RANK_RTOL) -> SpectralDensityFunction:
    """Kernel-subtracted spectral density of f (vanishes at 0)."""
    return sdf_of_map(f, rank_rtol).reduced()


def variational_sdf(f: TracedMap, lam: float, rank_rtol: float = RANK_RTOL) -> float:
    """Largest normalized dimension of a coordinate subspace L of ker(f)^perp
    with |f x| <= lam |x| on L.

    Only defined for maps that are diagonal w.r.t. an orthonormal basis;
    the restriction keeps the subspace search exact (enumeration over
    coordinate subspaces collapses to counting qualifying diagonal entries).
    """
    if lam < 0:
        raise ValueError("lambda must be nonnegative")
    if not np.allclose(f.source.gram, np.eye(f.source.dim), atol=1e-12):
        raise ValueError("variational form requires an orthonormal source basis")
    if not np.allclose(f.target.gram, np.eye(f.target.dim), atol=1e-12):
        raise ValueError("variational form requires an orthonormal target basis")
    coeff = f.coefficients
    if coeff.size:
        off = coeff.copy()
        n = min(coeff.shape)
        off[np.arange(n), np.arange(n)] = 0.0
        if np.max(np.abs(off)) > 1e-12:
            raise ValueError("variational form requires a diagonal map")
    diag = np.abs(np.diag(coeff)) if coeff.size else np.zeros(0)
    entries = np.concatenate([diag, np.zeros(f.source.dim - diag.size)])
    cutoff = max(rank_rtol * (entries.max(initial=0.0)), ZERO_SV_ATOL)
    qualifying = np.count_nonzero((entries > cutoff) & (entries <= lam))
    return float(qualifying) * f.source.normalization


@dataclass
class NsExponentFit:
    """Power-law fit of a reduced spectral density near zero."""

    alpha: float
    residual: float
    n_points: int
    flag: str  # ok | insufficient-data | spectral-gap | flat-not-certifying

    @property
    def certifies_power_law(self) -> bool:
        return self.flag == "ok"


def ns_exponent_fit(F: SpectralDensityFunction, eps: float,
                    flat_threshold: float = 0.05) -> NsExponentFit:
    """Least-squares slope of log F against log lambda over (0, eps].

    Requires F(0) = 0 (pass a reduced density).  A spectral gap below eps
    yields alpha = +inf; a near-flat density is flagged as not certifying
    power-law domination.
    """
    if F.value_at_zero() != 0.0:
        raise ValueError("fit requires a reduced density with F(0) = 0")
    mask = (F.lams > 0) & (F.lams <= eps)
    lams = F.lams[mask]
    vals = F.vals[mask]
    if lams.size == 0:
        return NsExponentFit(math.inf, 0.0, 0, "spectral-gap")
    if lams.size < 3:
        return NsExponentFit(math.nan, math.nan, int(lams.size), "insufficient-data")
    x = np.log(lams)
    y = np.log(vals)
    design = np.column_stack([x, np.ones_like(x)])
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    alpha = float(coef[0])
    resid = float(np.sqrt(np.mean((design @ coef - y) ** 2)))
    flag = "ok" if alpha > flat_threshold else "flat-not-certifying"
    return NsExponentFit(alpha, resid, int(lams.size), flag)
