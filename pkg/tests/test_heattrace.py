import math

import numpy as np
import pytest
from scipy.special import exp1

from l2tor.heattrace import (HeatTraceModel, analytic_torsion, asympt_fit,
                             cheeger_mueller_correction, d_small,
                             large_time_dominating_bound, large_time_integral,
                             power_weight_double_integral, zeta_det)
from l2tor.mellin import EULER_GAMMA
from l2tor.rand import rng_for
from l2tor.spectrum import Spectrum


def test_large_time_single_eigenvalue_exponential_integral():
    S = Spectrum.from_pairs([(1.0, 1.0)])
    res = large_time_integral(HeatTraceModel.from_spectrum(S))
    assert res.determinant_class
    assert res.value == pytest.approx(float(exp1(1.0)), abs=1e-10)


def test_large_time_kernel_only_spectrum():
    S = Spectrum.from_pairs([(0.0, 5.0)])
    res = large_time_integral(HeatTraceModel.from_spectrum(S))
    assert res.value == 0.0
    assert res.determinant_class is True


def test_large_time_tail_bound_dominates_actual_tail():
    from scipy.integrate import quad
    S = Spectrum.from_pairs([(0.7, 2.0), (3.0, 1.0)])
    model = HeatTraceModel.from_spectrum(S)
    res = large_time_integral(model)
    actual_tail, _ = quad(lambda t: model.evaluate(t) / t, 2.0, np.inf)
    assert res.tail_bound >= actual_tail


def test_large_time_divergence_detected():
    slow = HeatTraceModel(evaluate=lambda t: 1.0 / math.log(t + math.e), m=0,
                          coefficients=np.array([0.0]))
    res = large_time_integral(slow)
    assert res.determinant_class is False
    assert res.value is None


def test_dsmall_refuses_unknown_coefficients():
    model = HeatTraceModel(evaluate=lambda t: math.exp(-t), m=1)
    with pytest.raises(ValueError, match="asympt_fit"):
        d_small(model)


def test_dsmall_rejects_wrong_coefficients():
    # claiming no constant term leaves a non-vanishing residual
    S = Spectrum.from_pairs([(1.0, 1.0)])
    model = HeatTraceModel(
        evaluate=lambda t: S.heat_trace(t), m=0, coefficients=np.array([0.0]))
    with pytest.raises(ValueError, match="integrable"):
        d_small(model)


def test_dsmall_single_eigenvalue_closed_form():
    # for theta = e^{-at}: integral of (e^{-at} - 1)/t over (0,1] plus gamma
    # plus the tail equals -gamma - ln a; the small part alone is the
    # difference against the exponential-integral tail
    a = 2.5
    S = Spectrum.from_pairs([(a, 1.0)])
    model = HeatTraceModel.from_spectrum(S)
    sm = d_small(model)
    lg = large_time_integral(model)
    assert sm.value + lg.value == pytest.approx(-math.log(a), abs=1e-10)


def test_dsmall_pure_power_plus_tail_vanishes():
    # a pure power trace contributes nothing once the tail is added:
    # the Mellin transform of t^{-a} has no content at s = 0
    A = 0.8
    model = HeatTraceModel(
        evaluate=lambda t: A * t ** -1.5, m=3,
        coefficients=np.array([A, 0.0, 0.0, 0.0]),
        residual=lambda t: 0.0,
        tail_integral=lambda T: A * T ** -1.5 / 1.5)
    total = d_small(model).value + large_time_integral(model).value
    assert total == pytest.approx(0.0, abs=1e-10)


def test_dsmall_meromorphic_consistency_synthetic():
    # theta = t^{-3/2} + 2 t^{-1/2} + 5 + e^{-t}: the derivative at zero of
    # the Mellin-regularized small-time integral evaluates in closed form
    from scipy.integrate import quad

    def theta(t):
        return t ** -1.5 + 2.0 * t ** -0.5 + 5.0 + math.exp(-t)

    model = HeatTraceModel(
        evaluate=theta, m=3,
        coefficients=np.array([1.0, 0.0, 2.0, 6.0]),
        residual=lambda t: math.expm1(-t))
    got = d_small(model).value
    holom, _ = quad(lambda t: math.expm1(-t) / t, 0.0, 1.0)
    expected = (-2.0 / 3.0) * 1.0 + (-2.0) * 2.0 + EULER_GAMMA * 6.0 + holom
    assert got == pytest.approx(expected, abs=1e-9)


def test_model_invariant_positive_decreasing():
    S = Spectrum.from_pairs([(0.5, 1.0), (2.0, 3.0)])
    assert HeatTraceModel.from_spectrum(S).check_positive_decreasing()
    assert HeatTraceModel.from_circle(2.0).check_positive_decreasing()


def test_model_coefficients_reproduce_trace_to_sqrt_order():
    # residual over sqrt(t) stays bounded on a log grid when the declared
    # expansion is right
    model = HeatTraceModel.from_circle(1.5)
    for t in np.geomspace(1e-8, 1e-2, 7):
        assert abs(model.residual_value(t)) <= 10.0 * math.sqrt(t)


def test_exponentially_damped_power_closed_form():
    # theta = c e^{-t} t^{-1/2} continues to c Gamma(-1/2) = -2 sqrt(pi) c
    c = 0.8
    S_like = HeatTraceModel(
        evaluate=lambda t: c * math.exp(-t) * t ** -0.5, m=1,
        coefficients=np.array([c, 0.0]),
        residual=lambda t: c * t ** -0.5 * math.expm1(-t),
        spectral_gap=1.0)
    total = d_small(S_like).value + large_time_integral(S_like).value
    assert total == pytest.approx(-2.0 * math.sqrt(math.pi) * c, abs=1e-9)


@pytest.mark.parametrize("L", [1.0, 2 * math.pi, 5.0])
def test_circle_determinant_is_square_of_circumference(L):
    det = zeta_det(HeatTraceModel.from_circle(L))
    assert det == pytest.approx(L * L, abs=1e-8 * max(1.0, L * L))


def test_single_eigenvalue_determinant():
    S = Spectrum.from_pairs([(math.e, 1.0)])
    assert zeta_det(S) == pytest.approx(math.e, abs=1e-10)


def test_zeta_det_multiplicative_on_unions():
    rng = rng_for(7, 0)
    for _ in range(10):
        a = Spectrum.from_pairs([(float(x), 1.0) for x in rng.uniform(0.2, 5, 3)])
        b = Spectrum.from_pairs([(float(x), 2.0) for x in rng.uniform(0.2, 5, 2)])
        prod = zeta_det(a) * zeta_det(b)
        assert zeta_det(a.union(b)) == pytest.approx(prod, rel=1e-9)


def test_zeta_det_requires_positive_part():
    with pytest.raises(ValueError):
        zeta_det(Spectrum.from_pairs([(0.0, 1.0)]))


def test_torsion_zero_for_empty_traces():
    zero = Spectrum.from_pairs([])
    models = {p: HeatTraceModel.from_spectrum(zero) for p in range(3)}
    res = analytic_torsion(models)
    assert res.total == 0.0


def test_torsion_single_degree_matches_parts():
    S = Spectrum.from_pairs([(1.0, 1.0)])
    model = HeatTraceModel.from_spectrum(S)
    res = analytic_torsion({1: model})
    expected = -(d_small(model).value + float(exp1(1.0)))
    assert res.total == pytest.approx(expected, abs=1e-9)
    p, sm, lg = res.per_degree[0]
    assert res.total == pytest.approx(sum((-1) ** p * p * (sm + lg)
                                          for p, sm, lg in res.per_degree))


def test_torsion_linear_in_weights():
    rng = rng_for(7, 1)
    eigs = rng.uniform(0.3, 4.0, 4)
    base = Spectrum(np.sort(eigs), np.ones(4))
    doubled = base.scaled_weights(2.0)
    t1 = analytic_torsion({1: HeatTraceModel.from_spectrum(base)}).total
    t2 = analytic_torsion({1: HeatTraceModel.from_spectrum(doubled)}).total
    assert t2 == pytest.approx(2.0 * t1, rel=1e-9)


def test_asympt_fit_circle():
    model = HeatTraceModel.from_circle(2 * math.pi)
    # full trace (kernel included) has no constant term
    theta_full = lambda t: model.evaluate(t) + 1.0
    fit = asympt_fit(theta_full, np.geomspace(1e-4, 0.1, 30), m=1)
    assert fit.coefficients[0] == pytest.approx(math.sqrt(math.pi), abs=1e-6)
    assert fit.coefficients[1] == pytest.approx(0.0, abs=1e-6)


def test_asympt_fit_synthetic():
    fit = asympt_fit(lambda t: t ** -0.5 + 3.0, np.geomspace(1e-3, 0.1, 20), m=1)
    assert fit.coefficients == pytest.approx(np.array([1.0, 3.0]), abs=1e-9)


def test_asympt_fit_zero_trace():
    fit = asympt_fit(lambda t: 0.0, np.geomspace(1e-3, 0.1, 20), m=2)
    assert np.allclose(fit.coefficients, 0.0, atol=1e-12)


def test_cheeger_mueller_correction_values():
    assert cheeger_mueller_correction(0) == 0.0
    assert cheeger_mueller_correction(2) == pytest.approx(math.log(2.0))
    assert cheeger_mueller_correction(-4) == pytest.approx(-2.0 * math.log(2.0))


def test_domination_single_eigenvalue_strict():
    S = Spectrum.from_pairs([(2.0, 1.0)])
    F = S.counting_function()
    out = large_time_dominating_bound(F, eps=1.0, spectrum=S,
                                      t_values=[1.0, 2.0, 5.0, 10.0])
    assert not out["violations"]
    # the tail estimate is tight exactly at t = 1, strict beyond
    assert out["margins"][0] == pytest.approx(0.0, abs=1e-15)
    assert all(m > 0 for m in out["margins"][1:])


def test_domination_gap_above_eps():
    S = Spectrum.from_pairs([(5.0, 2.0)])
    F = S.counting_function()
    out = large_time_dominating_bound(F, eps=1.0, spectrum=S)
    assert not out["violations"]


def test_domination_random_probes():
    rng = rng_for(7, 2)
    for k in range(50):
        n = int(rng.integers(1, 8))
        S = Spectrum(np.sort(rng.uniform(0.01, 6.0, n)), rng.uniform(0.2, 2.0, n))
        F = S.counting_function()
        eps = float(rng.uniform(0.05, 3.0))
        ts = np.sort(rng.uniform(1.0, 30.0, 6))
        out = large_time_dominating_bound(F, eps, S, ts)
        assert not out["violations"], k


def test_double_integral_matches_incomplete_gamma():
    for eps in (0.5, 1.0, 2.0):
        out = power_weight_double_integral(eps)
        assert out["difference"] < 1e-8
    single = power_weight_double_integral(1.0, exponents=(0.25,))
    from scipy.special import gamma as G, gammainc
    assert single["closed_form"] == pytest.approx(float(G(0.25) * gammainc(0.25, 1.0)))
