import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from l2tor.rand import random_map, random_space, rng_for
from l2tor.traced import TracedMap, TracedSpace


def test_space_rejects_indefinite_gram():
    with pytest.raises(ValueError):
        TracedSpace(2, 1.0, np.array([[1.0, 2.0], [2.0, 1.0]]))


def test_space_rejects_nonpositive_normalization():
    with pytest.raises(ValueError):
        TracedSpace(2, 0.0)


def test_normalized_dim():
    s = TracedSpace(3, 0.5)
    assert s.normalized_dim == 1.5


def test_whitener_reproduces_inner_product():
    rng = rng_for(1, 0)
    s = random_space(rng, 4)
    u = rng.standard_normal(4)
    v = rng.standard_normal(4)
    w = s.whitener
    assert s.inner(u, v) == pytest.approx(float((w @ u) @ (w @ v)), rel=1e-12)


def test_orthonormal_basis_is_gram_orthonormal():
    rng = rng_for(1, 1)
    s = random_space(rng, 5)
    b = s.orthonormal_basis()
    assert np.allclose(b.T @ s.gram @ b, np.eye(5), atol=1e-10)


def test_identity_norm_and_rank():
    s = TracedSpace(3)
    f = TracedMap.identity(s)
    assert f.norm == pytest.approx(1.0)
    assert f.rank() == 3
    assert f.kernel_dim() == 0


def test_adjoint_identity_random_grams():
    rng = rng_for(1, 2)
    for k in range(20):
        src = random_space(rng, int(rng.integers(1, 5)))
        tgt = random_space(rng, int(rng.integers(1, 5)))
        f = random_map(rng, src, tgt)
        assert f.check_adjoint_identity() < 1e-12 * max(1.0, f.norm)


def test_adjoint_of_adjoint_is_original():
    rng = rng_for(1, 3)
    f = random_map(rng, random_space(rng, 3), random_space(rng, 4))
    back = f.adjoint().adjoint()
    assert np.allclose(back.coefficients, f.coefficients, atol=1e-10)


def test_operator_norm_against_rayleigh_sampling():
    rng = rng_for(1, 4)
    f = random_map(rng, random_space(rng, 4), random_space(rng, 3))
    best = 0.0
    for _ in range(2000):
        x = rng.standard_normal(4)
        num = np.sqrt(f.target.inner(f.apply(x), f.apply(x)))
        den = np.sqrt(f.source.inner(x, x))
        best = max(best, num / den)
    assert best <= f.norm * (1 + 1e-9)
    assert best >= f.norm * 0.95


def test_inverse_norm_is_reciprocal_smallest_nonzero():
    s = TracedSpace(3)
    f = TracedMap(s, s, np.diag([2.0, 0.5, 0.0]))
    assert f.inverse_norm == pytest.approx(2.0)


def test_zero_map_has_no_inverse_norm():
    s = TracedSpace(2)
    with pytest.raises(ValueError):
        TracedMap.zero(s, s).inverse_norm


@given(st.integers(min_value=0, max_value=5))
def test_singular_value_count_matches_dim(n):
    s = TracedSpace(n)
    f = TracedMap.identity(s)
    assert f.singular_values().size == n


def test_rejects_nonfinite_coefficients():
    s = TracedSpace(2)
    with pytest.raises(ValueError):
        TracedMap(s, s, np.array([[np.inf, 0.0], [0.0, 1.0]]))
