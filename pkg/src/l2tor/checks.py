"""Property checkers for the spectral-density inequalities.

Each checker evaluates one family of step-function inequalities at every
breakpoint of both sides (plus midpoints and the range endpoints), skipping
items whose side conditions fail, and returns the violations found.  A
floating-point tie slack (config.TIE_RTOL) forgives breakpoints that differ
only by eigensolve rounding.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .complexes import (FiniteCochainComplex, ShortExactTriple, complex_sdf,
                        connecting_map, laplacian_sdf_decomposition)
from .config import RANK_RTOL, STRUCTURE_ATOL, TIE_RTOL, VALUE_ATOL, ZERO_SV_ATOL
from .rand import (random_complex, random_homotopy_pair, random_injective,
                   random_map, random_short_exact_triple, random_space,
                   random_surjective, rng_for)
from .sdf import SpectralDensityFunction, sdf_of_map
from .traced import TracedMap, TracedSpace

__all__ = [
    "Violation",
    "CheckReport",
    "check_basic_F",
    "check_block_matrix_F",
    "check_short_exact",
    "check_gromov_shubin",
    "SuiteReport",
    "run_suite",
    "SUITES",
]

R_VALUES = (0.25, 0.5, 0.75)


@dataclass
class Violation:
    item: str
    lam: float
    lhs: float
    rhs: float

    def to_dict(self) -> dict:
        return {"item": self.item, "lambda": self.lam, "lhs": self.lhs, "rhs": self.rhs}


@dataclass
class CheckReport:
    violations: list[Violation] = field(default_factory=list)
    skipped: list[tuple[str, str]] = field(default_factory=list)
    probes: int = 0
    constants: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def merge(self, other: "CheckReport") -> None:
        self.violations.extend(other.violations)
        self.skipped.extend(other.skipped)
        self.probes += other.probes
        self.constants.update(other.constants)


class _Side:
    """Right-hand side of an inequality: sum of transformed step functions
    plus a constant, evaluated with tie slack."""

    def __init__(self, terms: list[SpectralDensityFunction], constant: float = 0.0):
        self.terms = terms
        self.constant = constant

    def __call__(self, lam: float, tie_rtol: float = TIE_RTOL) -> float:
        return self.constant + sum(t(lam, tie_rtol) for t in self.terms)

    def probe_points(self) -> np.ndarray:
        pts = [t.probe_points() for t in self.terms] or [np.array([0.0])]
        return np.unique(np.concatenate(pts))


def _scaled(F: SpectralDensityFunction, c: float) -> SpectralDensityFunction:
    """F(c * lambda), tolerating c = 0 (constant at the kernel value)."""
    if c > 0:
        return F.scaled_argument(c)
    val = F(0.0)
    if val == 0.0:
        return SpectralDensityFunction.zero()
    return SpectralDensityFunction(np.array([0.0]), np.array([val]))


def _check_leq(item: str, lhs: SpectralDensityFunction, rhs: _Side,
               report: CheckReport, upper: float = np.inf,
               value_atol: float = VALUE_ATOL,
               margin_key: str | None = None) -> None:
    probes = np.unique(np.concatenate([lhs.probe_points(), rhs.probe_points()]))
    probes = probes[probes < upper]
    if np.isfinite(upper):
        probes = np.append(probes, upper * (1.0 - 1e-12))
    min_margin = np.inf
    for lam in probes:
        report.probes += 1
        # slack only widens the right side: forgives breakpoints displaced
        # by eigensolve rounding without inflating the left side
        lval = lhs(lam, 0.0)
        rval = rhs(lam, TIE_RTOL)
        if lval > 0.0:
            min_margin = min(min_margin, rval - lval)
        if lval > rval + value_atol:
            report.violations.append(Violation(item, float(lam), lval, rval))
    if margin_key is not None and np.isfinite(min_margin):
        report.constants[margin_key] = float(min_margin)


def _check_equal(item: str, lhs: SpectralDensityFunction, rhs: _Side,
                 report: CheckReport, value_atol: float = VALUE_ATOL) -> None:
    probes = np.unique(np.concatenate([lhs.probe_points(), rhs.probe_points()]))
    for lam in probes:
        report.probes += 1
        lval = lhs(lam, TIE_RTOL)
        rval = rhs(lam, TIE_RTOL)
        if abs(lval - rval) > value_atol:
            report.violations.append(Violation(item, float(lam), lval, rval))


# -- subspace side conditions ----------------------------------------------------------


def _image_basis_whitened(f: TracedMap, rank_rtol: float = RANK_RTOL) -> np.ndarray:
    u, s, _ = np.linalg.svd(f.whitened, full_matrices=False)
    cutoff = max(rank_rtol * (s.max() if s.size else 0.0), ZERO_SV_ATOL)
    return u[:, : int(np.count_nonzero(s > cutoff))]

def _kernel_basis_whitened(f: TracedMap, rank_rtol: float = RANK_RTOL) -> np.ndarray:
    _, s, vt = np.linalg.svd(f.whitened, full_matrices=True)
    cutoff = max(rank_rtol * (s.max() if s.size else 0.0), ZERO_SV_ATOL)
    return vt[int(np.count_nonzero(s > cutoff)) :].T


def _trivial_intersection(b1: np.ndarray, b2: np.ndarray) -> bool | None:
    """True/False for a clear answer, None when numerically ambiguous."""
    if b1.shape[1] == 0 or b2.shape[1] == 0:
        return True
    s = np.linalg.svd(b1.T @ b2, compute_uv=False)
    top = s.max(initial=0.0)
    if top < 1.0 - 1e-8:
        return True
    if top > 1.0 - 1e-12:
        return False
    return None


def _contained(b_small: np.ndarray, b_big: np.ndarray) -> bool:
    """span(b_small) ⊆ span(b_big) for orthonormal column bases."""
    if b_small.shape[1] == 0:
        return True
    if b_big.shape[1] == 0:
        return False
    s = np.linalg.svd(b_big.T @ b_small, compute_uv=False)
    return bool(s.min(initial=1.0) > 1.0 - 1e-10)


# -- composition-law inequalities ------------------------------------------------------


def check_basic_F(f: TracedMap, g: TracedMap | None = None,
                  i: TracedMap | None = None, p: TracedMap | None = None,
                  reduced: bool = True) -> CheckReport:
    """Composition inequalities for spectral densities.

    f: U -> V is always required; g: V -> W drives items 1-3, an injective
    i: V -> V' drives item 4, a surjective p: U0 -> U drives item 5.  Item 6
    is the square identity for f alone.  With reduced=True the
    kernel-subtracted variants run as well.
    """
    report = CheckReport()
    F_f = sdf_of_map(f)
    norm_unit = f.source.normalization

    if g is not None:
        if g.source.dim != f.target.dim:
            raise ValueError("g must be composable with f")
        gf = g @ f
        F_g, F_gf = sdf_of_map(g), sdf_of_map(gf)
        _check_leq("basic.1", F_f, _Side([_scaled(F_gf, g.norm)]), report)
        if f.is_surjective():
            _check_leq("basic.2", F_g, _Side([_scaled(F_gf, f.norm)]), report)
        else:
            report.skipped.append(("basic.2", "f not surjective"))
        for r in R_VALUES:
            _check_leq(f"basic.3[r={r}]", F_gf,
                       _Side([F_g.power_argument(1 - r), F_f.power_argument(r)]), report)
        if reduced:
            ker_g = _kernel_basis_whitened(g)
            im_f = _image_basis_whitened(f)
            trivial = _trivial_intersection(ker_g, im_f)
            if trivial is True:
                _check_leq("reduced.1", F_f.reduced(),
                           _Side([_scaled(F_gf.reduced(), g.norm)]), report)
            else:
                report.skipped.append(("reduced.1", "ker g ∩ im f ambiguous or nontrivial"))
            if f.is_surjective():
                _check_leq("reduced.2", F_g.reduced(),
                           _Side([_scaled(F_gf.reduced(), f.norm)]), report)
            else:
                report.skipped.append(("reduced.2", "f not surjective"))
            if _contained(ker_g, im_f):
                for r in R_VALUES:
                    _check_leq(f"reduced.3[r={r}]", F_gf.reduced(),
                               _Side([F_g.reduced().power_argument(1 - r),
                                      F_f.reduced().power_argument(r)]), report)
            else:
                report.skipped.append(("reduced.3", "ker g not contained in im f"))

    if i is not None:
        if i.source.dim != f.target.dim:
            raise ValueError("i must be composable with f")
        if not i.is_injective():
            report.skipped.append(("basic.4", "i not injective"))
        else:
            inv_norm = i.inverse_norm
            F_if = sdf_of_map(i @ f)
            _check_leq("basic.4", F_if, _Side([_scaled(F_f, inv_norm)]), report)
            if reduced:
                _check_leq("reduced.4", F_if.reduced(),
                           _Side([_scaled(F_f.reduced(), inv_norm)]), report)

    if p is not None:
        if p.target.dim != f.source.dim:
            raise ValueError("p must land in the source of f")
        if not p.is_surjective():
            report.skipped.append(("basic.5", "p not surjective"))
        else:
            fp = f @ p
            F_fp = sdf_of_map(fp)
            _check_leq("basic.5", F_f, _Side([_scaled(F_fp, p.norm)]), report)
            if reduced:
                inv_norm = p.inverse_norm
                _check_leq("reduced.5", F_fp.reduced(),
                           _Side([_scaled(F_f.reduced(), inv_norm)]), report)
                ker_p = p.kernel_dim() * p.source.normalization
                _check_leq("reduced.6", F_f.reduced(),
                           _Side([_scaled(F_fp.reduced(), p.norm)], constant=ker_p), report)

    # square identity: density of f*f at lambda equals density of f at sqrt(lambda)
    ff = f.adjoint() @ f
    _check_equal("basic.6", sdf_of_map(ff), _Side([F_f.power_argument(0.5)]), report)
    report.constants["norm_f"] = f.norm
    report.constants["normalization"] = norm_unit
    return report


def _block_map(phi: TracedMap, gamma: TracedMap, xi: TracedMap) -> TracedMap:
    """Upper-triangular [[phi, gamma], [0, xi]] on orthogonal direct sums."""
    u1, u2 = phi.source, xi.source
    v1, v2 = phi.target, xi.target
    src_gram = np.block([
        [u1.gram, np.zeros((u1.dim, u2.dim))],
        [np.zeros((u2.dim, u1.dim)), u2.gram],
    ])
    tgt_gram = np.block([
        [v1.gram, np.zeros((v1.dim, v2.dim))],
        [np.zeros((v2.dim, v1.dim)), v2.gram],
    ])
    src = TracedSpace(u1.dim + u2.dim, u1.normalization, src_gram)
    tgt = TracedSpace(v1.dim + v2.dim, v1.normalization, tgt_gram)
    coeff = np.zeros((tgt.dim, src.dim))
    coeff[: v1.dim, : u1.dim] = phi.coefficients
    coeff[: v1.dim, u1.dim :] = gamma.coefficients
    coeff[v1.dim :, u1.dim :] = xi.coefficients
    return TracedMap(src, tgt, coeff)


def check_block_matrix_F(phi: TracedMap, gamma: TracedMap, xi: TracedMap,
                         reduced: bool = True) -> CheckReport:
    """Upper-triangular block-map inequalities, plain and kernel-subtracted.

    gamma: U2 -> V1 couples the blocks; item validity ranges follow the
    stated side conditions (phi invertible for item 2, the power-range bound
    for item 3, phi dense image and lambda < 1 for item 5).
    """
    if gamma.source.dim != xi.source.dim or gamma.target.dim != phi.target.dim:
        raise ValueError("gamma must map source(xi) -> target(phi)")
    report = CheckReport()
    M = _block_map(phi, gamma, xi)
    F_M, F_phi, F_xi = sdf_of_map(M), sdf_of_map(phi), sdf_of_map(xi)
    gnorm = gamma.norm
    report.constants.update({"norm_phi": phi.norm, "norm_gamma": gnorm, "norm_xi": xi.norm})

    if gamma.norm == 0.0:
        _check_equal("block.1", F_M, _Side([F_phi, F_xi]), report)
        if reduced:
            _check_equal("block.r1", F_M.reduced(),
                         _Side([F_phi.reduced(), F_xi.reduced()]), report)

    phi_invertible = (phi.source.dim == phi.target.dim and phi.rank() == phi.source.dim)
    if phi_invertible:
        c = 4.0 + 2.0 * gnorm * phi.inverse_norm
        _check_leq("block.2", F_M, _Side([_scaled(F_phi, c), _scaled(F_xi, c)]), report)
        if reduced:
            _check_leq("block.r2", F_M.reduced(),
                       _Side([_scaled(F_phi.reduced(), c), _scaled(F_xi.reduced(), c)]), report)
    else:
        report.skipped.append(("block.2", "phi not invertible"))

    xi_injective = xi.is_injective()
    phi_dense = phi.is_surjective()
    for r in R_VALUES:
        upper = (4.0 + 2.0 * gnorm) ** (1.0 / (r - 1.0))
        _check_leq(f"block.3[r={r}]", F_M,
                   _Side([F_phi.power_argument(r),
                          _scaled(F_xi, 4.0 + 2.0 * gnorm).power_argument(1 - r)]),
                   report, upper=upper)
        if reduced and (xi_injective or phi_dense):
            _check_leq(f"block.r3[r={r}]", F_M.reduced(),
                       _Side([F_phi.reduced().power_argument(r),
                              _scaled(F_xi.reduced(), 4.0 + 2.0 * gnorm).power_argument(1 - r)]),
                       report, upper=upper)
        elif reduced:
            report.skipped.append((f"block.r3[r={r}]", "xi not injective and phi not dense"))

    c4 = 2.0 * (1.0 + gnorm + xi.norm)
    _check_leq("block.4", F_phi, _Side([_scaled(F_M, c4)]), report)
    if reduced:
        if xi_injective:
            _check_leq("block.r4", F_phi.reduced(), _Side([_scaled(F_M.reduced(), c4)]), report)
        else:
            report.skipped.append(("block.r4", "xi not injective"))

    if phi_dense:
        c5 = 2.0 * (1.0 + gnorm + phi.norm)
        _check_leq("block.5", F_xi, _Side([_scaled(F_M, c5)]), report, upper=1.0)
        if reduced:
            ker_phi = phi.kernel_dim() * phi.source.normalization
            _check_leq("block.r5", F_xi.reduced(),
                       _Side([_scaled(F_M.reduced(), c5)], constant=ker_phi),
                       report, upper=1.0)
    else:
        report.skipped.append(("block.5", "phi has no dense image"))
    return report


def _power_scaled(F: SpectralDensityFunction, c: float, a: float) -> SpectralDensityFunction:
    """lambda -> F(c * lambda^a) as an exact step function."""
    return _scaled(F, c).power_argument(a) if c > 0 else _scaled(F, 0.0)


def check_short_exact(T: ShortExactTriple, p: int,
                      use_stated_range: bool = True) -> CheckReport:
    """Degree-p density inequality for a short exact triple of complexes.

    Computes the four constants from the norms of d^p, j and q (inverses
    taken image -> kernel-complement), builds the connecting map on
    cohomology via harmonic representatives, and checks

        rF_p(D, lam) <= rF_p(E, c_E lam^1/2) + rF(delta, c_d lam^1/4)
                        + rF_p(C, c_C lam^1/4)

    on [0, c1).  The stated c1 formula is recorded along with the more
    conservative range implied by chaining the block inequalities; the check
    runs over the stated range by default.
    """
    report = CheckReport()
    d_p = T.D.differential(p)
    j_p, j_p1 = T.j_at(p), T.j_at(p + 1)
    q_p, q_p1 = T.q_at(p), T.q_at(p + 1)
    nd = d_p.norm
    j1_inv = j_p1.inverse_norm if j_p1.rank() else 1.0
    q_inv = q_p.inverse_norm if q_p.rank() else 1.0
    c_E = (4.0 + 2.0 * nd) * q_p1.norm * q_inv
    c_C = np.sqrt(j1_inv) * j_p.norm
    c_delta = np.sqrt(j1_inv) * (4.0 + 2.0 * j1_inv * nd) * q_inv
    c1_stated = min((4.0 + 2.0 * nd) ** -0.5, (4.0 + 2.0 * j1_inv * nd) ** -0.5)
    c1_chained = min((4.0 + 2.0 * nd) ** -2.0,
                     j1_inv ** -2.0 * (4.0 + 2.0 * j1_inv * nd) ** -4.0)
    report.constants.update({
        "c_E": c_E, "c_C": c_C, "c_delta": c_delta,
        "c1_stated": c1_stated, "c1_chained": c1_chained,
        "norm_dp": nd, "inv_norm_j_p1": j1_inv, "inv_norm_q_p": q_inv,
    })

    delta = connecting_map(T, p)
    report.constants["cohomology_dims"] = {
        "E^p": delta.source.dim, "C^{p+1}": delta.target.dim,
    }
    lhs = complex_sdf(T.D, p).reduced()
    rhs = _Side([
        _power_scaled(complex_sdf(T.E, p).reduced(), c_E, 0.5),
        _power_scaled(sdf_of_map(delta).reduced(), c_delta, 0.25),
        _power_scaled(complex_sdf(T.C, p).reduced(), c_C, 0.25),
    ])
    upper = c1_stated if use_stated_range else c1_chained
    # observed slack is recorded, no conclusion drawn about optimality
    _check_leq(f"short-exact[p={p}]", lhs, rhs, report, upper=upper,
               margin_key="min_margin")
    return report


def _moebius_argument(F: SpectralDensityFunction, c: float, t: float) -> SpectralDensityFunction:
    """mu -> F(c * mu / (1 - t * mu)) on [0, 1/t), as an exact step function.

    The argument map is strictly increasing, so breakpoints pull back to
    s / (c + t s); for t = 0 this is plain argument scaling.
    """
    if c <= 0:
        return _scaled(F, 0.0)
    new_lams = F.lams / (c + t * F.lams)
    return SpectralDensityFunction(new_lams, F.vals)


def check_gromov_shubin(C: FiniteCochainComplex, D: FiniteCochainComplex,
                        f: list[TracedMap], g: list[TracedMap],
                        T: list[TracedMap], p: int,
                        homotopy_atol: float = STRUCTURE_ATOL) -> CheckReport:
    """Density comparison along a chain homotopy equivalence.

    Requires the homotopy relation g f = id + T c + c T at degree p to hold
    within homotopy_atol; then checks the kernel-subtracted comparison

        rF_p(C, mu) <= rF_p(D, |f_{p+1}| |g_p| mu / (1 - |T_{p+1}| mu))

    for mu below (2 |T_{p+1}|)^{-2} capped at the argument pole (infinite
    threshold for T = 0).  This is the sharp form of the homotopy comparison:
    pairing the relation against x in ker(c^p)^perp bounds |f x| from below
    by (1 - |T| mu)|x| / |g|.  The quadratic norm product stated with the
    theorem is falsified by explicit small instances (see the suite), so the
    checker pins the provable constants and records both.  Since homotopy
    equivalences preserve cohomology dimensions, the unreduced comparison is
    equivalent; the equality of harmonic dimensions is asserted as well.
    """
    report = CheckReport()
    gf = g[p] @ f[p]
    resid = gf.coefficients - np.eye(C.space(p).dim)
    if p + 1 < len(T) and T[p + 1].source.dim:
        resid = resid - (T[p + 1] @ C.differential(p)).coefficients
    if p > 0 and T[p].source.dim and C.space(p - 1).dim:
        resid = resid - (C.differential(p - 1) @ T[p]).coefficients
    defect = TracedMap(C.space(p), C.space(p), resid).norm
    if defect > homotopy_atol:
        raise ValueError(f"homotopy relation fails at degree {p}: defect {defect}")

    t_norm = T[p + 1].norm if p + 1 < len(T) else 0.0
    f_norm = f[p + 1].norm if p + 1 < len(f) else 0.0
    scale = f_norm * g[p].norm
    if t_norm == 0.0:
        threshold = np.inf
    else:
        threshold = min((2.0 * t_norm) ** -2.0, (2.0 * t_norm) ** -1.0)
    report.constants.update({
        "scale": scale, "threshold": threshold, "homotopy_defect": defect,
        "stated_scale": f_norm ** 2 * g[p].norm ** 2,
        "stated_threshold": np.inf if t_norm == 0.0 else (2.0 * t_norm) ** -2.0,
    })
    h_c = C.cohomology_dim(p)
    h_d = D.cohomology_dim(p)
    if h_c != h_d:
        report.violations.append(Violation(f"gromov-shubin-harmonics[p={p}]",
                                           0.0, float(h_c), float(h_d)))
    lhs = complex_sdf(C, p).reduced()
    rhs = _Side([_moebius_argument(complex_sdf(D, p).reduced(), scale, t_norm)])
    _check_leq(f"gromov-shubin[p={p}]", lhs, rhs, report, upper=threshold)
    return report


# -- randomized suites -----------------------------------------------------------------


@dataclass
class SuiteReport:
    suite: str
    seed: int
    instances: int
    probes: int
    violations: list[dict]
    skipped: dict[str, int]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "instances": self.instances,
            "probes": self.probes,
            "violations": self.violations,
            "skipped": self.skipped,
            "ok": self.ok,
        }


_NORMALIZATIONS = (1.0, 0.5, 0.25, 1.0 / 3.0)


def _dims(rng, max_dim, n):
    return [int(rng.integers(1, max_dim + 1)) for _ in range(n)]


def _basic_instance(rng: np.random.Generator, max_dim: int) -> CheckReport:
    norm = float(rng.choice(_NORMALIZATIONS))
    du, dv, dw = _dims(rng, max_dim, 3)
    U = random_space(rng, du, norm)
    V = random_space(rng, dv, norm)
    W = random_space(rng, dw, norm)
    Vp = random_space(rng, dv + int(rng.integers(0, 3)), norm)
    U0 = random_space(rng, du + int(rng.integers(0, 3)), norm)
    f = random_map(rng, U, V)
    g = random_map(rng, V, W)
    i = random_injective(rng, V, Vp)
    p = random_surjective(rng, U0, U)
    return check_basic_F(f, g=g, i=i, p=p)


def _block_instance(rng: np.random.Generator, max_dim: int) -> CheckReport:
    norm = float(rng.choice(_NORMALIZATIONS))
    d1, d2 = _dims(rng, max_dim, 2)
    dv1 = d1 if rng.random() < 0.7 else int(rng.integers(1, max_dim + 1))
    dv2 = int(rng.integers(1, max_dim + 1))
    U1 = random_space(rng, d1, norm)
    U2 = random_space(rng, d2, norm)
    V1 = random_space(rng, dv1, norm)
    V2 = random_space(rng, dv2, norm)
    phi = random_map(rng, U1, V1)
    xi = random_map(rng, U2, V2)
    if rng.random() < 0.25:
        gamma = TracedMap.zero(U2, V1)
    else:
        gamma = random_map(rng, U2, V1)
    return check_block_matrix_F(phi, gamma, xi)


def _short_exact_instance(rng: np.random.Generator, max_dim: int) -> CheckReport:
    norm = float(rng.choice(_NORMALIZATIONS))
    n_deg = int(rng.integers(2, 5))
    cap = max(2, max_dim)
    dims_c = [int(rng.integers(0, cap)) for _ in range(n_deg)]
    dims_e = [int(rng.integers(0, cap)) for _ in range(n_deg)]
    if sum(dims_c) == 0:
        dims_c[0] = 1
    if sum(dims_e) == 0:
        dims_e[0] = 1
    scale = float(rng.uniform(0.2, 1.5))
    triple = random_short_exact_triple(rng, dims_c, dims_e, norm,
                                       coupling_scale=scale,
                                       log_sing_range=(-3.5, 1.0))
    report = CheckReport()
    for p in range(n_deg):
        report.merge(check_short_exact(triple, p))
    return report


def _gromov_shubin_instance(rng: np.random.Generator, max_dim: int) -> CheckReport:
    norm = float(rng.choice(_NORMALIZATIONS))
    n_deg = int(rng.integers(2, 5))
    dims_c = [int(rng.integers(1, max_dim + 1)) for _ in range(n_deg)]
    C, D, f, g, T = random_homotopy_pair(rng, dims_c, acyclic_dim=int(rng.integers(1, 3)),
                                         normalization=norm,
                                         log_sing_range=(-3.5, 1.0))
    report = CheckReport()
    for p in range(n_deg):
        report.merge(check_gromov_shubin(C, D, f, g, T, p))
    return report


def _laplacian_instance(rng: np.random.Generator, max_dim: int) -> CheckReport:
    norm = float(rng.choice(_NORMALIZATIONS))
    n_deg = int(rng.integers(2, 5))
    dims = [int(rng.integers(1, max_dim + 1)) for _ in range(n_deg)]
    C = random_complex(rng, dims, norm, log_sing_range=(-3.0, 1.0))
    report = CheckReport()
    for p in range(n_deg):
        out = laplacian_sdf_decomposition(C, p)
        report.probes += out.probes.size
        if not out.ok:
            worst = int(np.argmax(np.abs(out.residuals)))
            report.violations.append(
                Violation(f"laplacian[p={p}]", float(out.probes[worst]),
                          out.max_residual, 0.0))
    return report


SUITES = {
    "basic": _basic_instance,
    "block": _block_instance,
    "short-exact": _short_exact_instance,
    "gromov-shubin": _gromov_shubin_instance,
    "laplacian": _laplacian_instance,
}


def run_suite(suite: str, seed: int, instances: int, max_dim: int = 6) -> SuiteReport:
    """Run `instances` randomized checks of the named suite."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {sorted(SUITES)}")
    builder = SUITES[suite]
    violations: list[dict] = []
    skipped: dict[str, int] = {}
    probes = 0
    for k in range(instances):
        rng = rng_for(seed, k)
        report = builder(rng, max_dim)
        probes += report.probes
        for v in report.violations:
            entry = v.to_dict()
            entry["instance"] = k
            violations.append(entry)
        for item, _reason in report.skipped:
            skipped[item] = skipped.get(item, 0) + 1
    return SuiteReport(suite, seed, instances, probes, violations, skipped)
