"""Finite-dimensional traced inner-product spaces and maps between them.

A TracedSpace is R^n with a positive-definite gram form and a scalar trace
normalization; its normalized dimension is normalization * n.  A TracedMap
is a linear map between two such spaces.  Singular values, operator norms
and adjoints are always taken with respect to the gram forms, so a space
with a non-identity gram behaves exactly like an abstract inner-product
space expressed in a skew basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .config import ADJOINT_ATOL, RANK_RTOL, ZERO_SV_ATOL

__all__ = ["TracedSpace", "TracedMap"]


def _as_normalization(value) -> float:
    if isinstance(value, Fraction):
        value = float(value)
    value = float(value)
    if not value > 0 or not np.isfinite(value):
        raise ValueError(f"normalization must be positive and finite, got {value}")
    return value


@dataclass(frozen=True)
class TracedSpace:
    """R^dim with gram form `gram` and trace normalization `normalization`."""

    dim: int
    normalization: float = 1.0
    gram: np.ndarray | None = None

    def __post_init__(self):
        if self.dim < 0:
            raise ValueError("dim must be nonnegative")
        object.__setattr__(self, "normalization", _as_normalization(self.normalization))
        gram = self.gram
        if gram is None:
            gram = np.eye(self.dim)
        gram = np.asarray(gram, dtype=float)
        if gram.shape != (self.dim, self.dim):
            raise ValueError(f"gram must be {self.dim}x{self.dim}, got {gram.shape}")
        if self.dim > 0:
            if not np.allclose(gram, gram.T, atol=1e-12, rtol=1e-12):
                raise ValueError("gram form must be symmetric")
            eigs = np.linalg.eigvalsh(0.5 * (gram + gram.T))
            if eigs.min(initial=np.inf) <= 0:
                raise ValueError("gram form must be positive definite")
        object.__setattr__(self, "gram", 0.5 * (gram + gram.T))
        # Cholesky factor L with gram = L L^T; whitening map is L^T.
        chol = np.linalg.cholesky(self.gram) if self.dim > 0 else np.zeros((0, 0))
        object.__setattr__(self, "_chol", chol)

    @property
    def normalized_dim(self) -> float:
        return self.normalization * self.dim

    @property
    def whitener(self) -> np.ndarray:
        """Matrix W with <u, v>_gram = (W u) . (W v); here W = L^T."""
        return self._chol.T

    def inner(self, u, v) -> float:
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        return float(u @ self.gram @ v)

    def orthonormal_basis(self) -> np.ndarray:
        """Columns form a gram-orthonormal basis (inverse whitener)."""
        if self.dim == 0:
            return np.zeros((0, 0))
        return np.linalg.inv(self.whitener)

    def with_gram(self, gram: np.ndarray) -> "TracedSpace":
        return TracedSpace(self.dim, self.normalization, gram)


class TracedMap:
    """Linear map between traced spaces, stored as a coordinate matrix."""

    def __init__(self, source: TracedSpace, target: TracedSpace, coefficients):
        coeff = np.asarray(coefficients, dtype=float)
        if coeff.shape != (target.dim, source.dim):
            raise ValueError(
                f"coefficient matrix must be {target.dim}x{source.dim}, got {coeff.shape}"
            )
        if coeff.size and not np.all(np.isfinite(coeff)):
            raise ValueError("coefficients must be finite")
        self.source = source
        self.target = target
        self.coefficients = coeff
        self._whitened = None
        self._svals = None

    # -- gram-aware linear algebra -------------------------------------------------

    @property
    def whitened(self) -> np.ndarray:
        """Matrix of the map between the whitened (orthonormal) coordinates."""
        if self._whitened is None:
            if self.source.dim == 0 or self.target.dim == 0:
                self._whitened = np.zeros((self.target.dim, self.source.dim))
            else:
                ws = self.source.whitener
                wt = self.target.whitener
                self._whitened = wt @ self.coefficients @ np.linalg.inv(ws)
        return self._whitened

    def singular_values(self) -> np.ndarray:
        """Generalized singular values w.r.t. the gram forms, descending."""
        if self._svals is None:
            if min(self.source.dim, self.target.dim) == 0:
                sv = np.zeros(self.source.dim)
            else:
                sv = np.linalg.svd(self.whitened, compute_uv=False)
                if self.source.dim > self.target.dim:
                    sv = np.concatenate([sv, np.zeros(self.source.dim - self.target.dim)])
            self._svals = sv
        return self._svals

    def clamped_singular_values(self, rank_rtol: float = RANK_RTOL) -> np.ndarray:
        sv = self.singular_values().copy()
        if sv.size:
            cutoff = max(rank_rtol * sv.max(), ZERO_SV_ATOL)
            sv[sv <= cutoff] = 0.0
        return sv

    @property
    def norm(self) -> float:
        sv = self.singular_values()
        return float(sv[0]) if sv.size else 0.0

    def rank(self, rank_rtol: float = RANK_RTOL) -> int:
        return int(np.count_nonzero(self.clamped_singular_values(rank_rtol)))

    def kernel_dim(self, rank_rtol: float = RANK_RTOL) -> int:
        return self.source.dim - self.rank(rank_rtol)

    def is_injective(self, rank_rtol: float = RANK_RTOL) -> bool:
        return self.rank(rank_rtol) == self.source.dim

    def is_surjective(self, rank_rtol: float = RANK_RTOL) -> bool:
        return self.rank(rank_rtol) == self.target.dim

    def min_nonzero_singular_value(self, rank_rtol: float = RANK_RTOL) -> float:
        sv = self.clamped_singular_values(rank_rtol)
        nz = sv[sv > 0]
        if nz.size == 0:
            raise ValueError("map has no nonzero singular values")
        return float(nz.min())

    @property
    def inverse_norm(self) -> float:
        """Norm of the inverse taken image -> kernel-complement.

        Convention: reciprocal of the smallest nonzero singular value; the
        zero map has no inverse in this sense.
        """
        return 1.0 / self.min_nonzero_singular_value()

    def adjoint(self) -> "TracedMap":
        """f* with <f u, v>_target = <u, f* v>_source."""
        if self.source.dim == 0 or self.target.dim == 0:
            return TracedMap(self.target, self.source, np.zeros((self.source.dim, self.target.dim)))
        gs_inv = np.linalg.inv(self.source.gram)
        coeff = gs_inv @ self.coefficients.T @ self.target.gram
        return TracedMap(self.target, self.source, coeff)

    def check_adjoint_identity(self, atol: float = ADJOINT_ATOL) -> float:
        """Max defect of <f e_i, e_j>_t - <e_i, f* e_j>_s over basis vectors."""
        adj = self.adjoint()
        lhs = self.coefficients.T @ self.target.gram        # (i, j) = <f e_i, e_j>_t
        rhs = self.source.gram @ adj.coefficients           # (i, j) = <e_i, f* e_j>_s
        defect = float(np.max(np.abs(lhs - rhs))) if lhs.size else 0.0
        if defect > atol * max(1.0, float(np.max(np.abs(lhs))) if lhs.size else 1.0):
            raise AssertionError(f"adjoint identity defect {defect}")
        return defect

    # -- composition helpers -------------------------------------------------------

    def compose(self, other: "TracedMap") -> "TracedMap":
        """self ∘ other (apply `other` first)."""
        if other.target.dim != self.source.dim:
            raise ValueError("shape mismatch in composition")
        return TracedMap(other.source, self.target, self.coefficients @ other.coefficients)

    def __matmul__(self, other: "TracedMap") -> "TracedMap":
        return self.compose(other)

    def apply(self, vec: np.ndarray) -> np.ndarray:
        return self.coefficients @ np.asarray(vec, dtype=float)

    @staticmethod
    def identity(space: TracedSpace) -> "TracedMap":
        return TracedMap(space, space, np.eye(space.dim))

    @staticmethod
    def zero(source: TracedSpace, target: TracedSpace) -> "TracedMap":
        return TracedMap(source, target, np.zeros((target.dim, source.dim)))

    def __repr__(self) -> str:  # pragma: no cover
        return f"TracedMap({self.source.dim}->{self.target.dim}, norm={self.norm:.4g})"
