import math

import numpy as np
import pytest
import scipy.linalg
from hypothesis import given
from hypothesis import strategies as st

from l2tor.rand import random_map, random_space, rng_for
from l2tor.sdf import (SpectralDensityFunction, ns_exponent_fit, reduced_sdf,
                       sdf_of_map, variational_sdf)
from l2tor.traced import TracedMap, TracedSpace


def diag_map(entries, normalization=1.0):
    n = len(entries)
    s = TracedSpace(n, normalization)
    return TracedMap(s, s, np.diag(np.asarray(entries, dtype=float)))


def test_identity_on_three_dim():
    f = TracedMap.identity(TracedSpace(3))
    F = sdf_of_map(f)
    assert F(0.5) == 0.0
    assert F(1.0) == 3.0
    assert F(10.0) == 3.0


def test_diagonal_zero_two():
    F = sdf_of_map(diag_map([0.0, 2.0]))
    assert F(0.0) == 1.0
    assert F(1.9) == 1.0
    assert F(2.0) == 2.0


def test_random_map_against_generalized_eigensolve():
    # oracle: generalized eigenvalues of (A^T G_t A, G_s) are the squared
    # generalized singular values
    rng = rng_for(2, 0)
    for k in range(25):
        src = random_space(rng, 4)
        tgt = random_space(rng, 4)
        f = random_map(rng, src, tgt)
        F = sdf_of_map(f)
        eigs = scipy.linalg.eigh(
            f.coefficients.T @ tgt.gram @ f.coefficients, src.gram,
            eigvals_only=True)
        svs = np.sqrt(np.clip(eigs, 0.0, None))
        for lam in np.concatenate([svs, [0.0], svs * 0.999, svs * 1.001, [100.0]]):
            expected = float(np.count_nonzero(svs <= lam + 1e-9 * max(1.0, lam)))
            assert F(lam, 1e-9) == pytest.approx(expected * src.normalization)


def test_total_equals_normalized_source_dim():
    rng = rng_for(2, 1)
    f = random_map(rng, random_space(rng, 5, 0.25), random_space(rng, 3, 0.25))
    F = sdf_of_map(f)
    assert F.total == pytest.approx(5 * 0.25)
    assert F(f.norm) == pytest.approx(F.total)


def test_reduced_examples():
    Fbar = reduced_sdf(diag_map([0.0, 2.0]))
    assert Fbar(0.0) == 0.0
    assert Fbar(1.9) == 0.0
    assert Fbar(2.0) == 1.0
    zero = TracedMap.zero(TracedSpace(3), TracedSpace(2))
    assert reduced_sdf(zero).total == 0.0


def test_reduced_adjoint_symmetry():
    # kernel-subtracted densities of f and f* agree (transposed eigensolve)
    rng = rng_for(2, 2)
    for k in range(25):
        f = random_map(rng, random_space(rng, int(rng.integers(1, 6))),
                       random_space(rng, int(rng.integers(1, 6))))
        Fbar = reduced_sdf(f)
        Gbar = reduced_sdf(f.adjoint())
        assert Fbar.equals(Gbar, value_atol=1e-9)


def test_monotone_right_continuous_bounded():
    rng = rng_for(2, 3)
    f = random_map(rng, random_space(rng, 5), random_space(rng, 4))
    F = sdf_of_map(f)
    probes = F.probe_points()
    vals = [F(x) for x in probes]
    assert all(b >= a - 1e-15 for a, b in zip(vals, vals[1:]))
    assert max(vals) <= f.source.normalized_dim + 1e-12


def test_variational_examples():
    f = diag_map([1.0, 2.0, 3.0])
    assert variational_sdf(f, 2.0) == 2.0
    g = diag_map([0.0, 5.0])
    assert variational_sdf(g, 1.0) == 0.0


def test_variational_matches_counting():
    rng = rng_for(2, 4)
    for k in range(30):
        n = int(rng.integers(1, 7))
        entries = rng.uniform(0, 3, size=n)
        entries[rng.random(n) < 0.3] = 0.0
        f = diag_map(entries, normalization=0.5)
        lam = float(rng.uniform(0, 3.5))
        expected = 0.5 * np.count_nonzero((entries > 0) & (entries <= lam))
        assert variational_sdf(f, lam) == pytest.approx(expected)


def test_variational_rejects_nondiagonal():
    s = TracedSpace(2)
    f = TracedMap(s, s, np.array([[1.0, 0.5], [0.0, 1.0]]))
    with pytest.raises(ValueError):
        variational_sdf(f, 1.0)


def test_ns_fit_recovers_half_power_law():
    lams = np.geomspace(1e-4, 1e-1, 24)
    F = SpectralDensityFunction(lams, np.sqrt(lams))
    fit = ns_exponent_fit(F, eps=0.1)
    assert fit.flag == "ok"
    assert fit.alpha == pytest.approx(0.5, abs=0.05)


def test_ns_fit_spectral_gap():
    F = SpectralDensityFunction(np.array([2.0]), np.array([1.0]))
    fit = ns_exponent_fit(F, eps=1.0)
    assert fit.flag == "spectral-gap"
    assert math.isinf(fit.alpha)


def test_ns_fit_flat_flagged():
    lams = np.geomspace(1e-6, 1e-2, 12)
    F = SpectralDensityFunction(lams, np.full(12, 2.0) + np.linspace(0, 1e-9, 12))
    fit = ns_exponent_fit(F, eps=0.1)
    assert fit.flag == "flat-not-certifying"
    assert abs(fit.alpha) < 0.05


def test_ns_fit_insufficient_data():
    F = SpectralDensityFunction(np.array([1e-3, 2e-3]), np.array([1.0, 2.0]))
    fit = ns_exponent_fit(F, eps=0.1)
    assert fit.flag == "insufficient-data"


def test_step_algebra_transforms():
    F = SpectralDensityFunction(np.array([1.0, 4.0]), np.array([1.0, 3.0]))
    G = F.scaled_argument(2.0)  # G(x) = F(2x)
    assert G(0.5) == 1.0 and G(2.0) == 3.0
    H = F.power_argument(2.0)  # H(x) = F(x^2)
    assert H(1.0) == 1.0 and H(2.0) == 3.0 and H(1.9) == 1.0
    S = F.plus(G)
    assert S(4.0) == F(4.0) + G(4.0)


@given(st.lists(st.floats(min_value=0.0, max_value=10.0), min_size=1, max_size=8))
def test_from_jumps_value_matches_direct_count(positions):
    F = SpectralDensityFunction.from_jumps(positions, np.ones(len(positions)))
    for lam in positions + [0.0, 10.5]:
        assert F(lam) == float(sum(1 for p in positions if p <= lam))
