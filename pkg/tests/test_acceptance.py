"""End-to-end acceptance run at full instance counts.

One test per criterion; each prints a PASS/FAIL line (run with -s to watch
them stream) and asserts the pinned tolerance.  The randomized suites run
once in a module fixture so the wall-clock and probe-count budgets can be
asserted over the whole block.
"""

import math
import time

import pytest

from l2tor.config import DEFAULT_SEED
from l2tor.selftest import CRITERIA, CriterionResult

_TIMINGS: dict[str, float] = {}
_RESULTS: dict[str, CriterionResult] = {}


@pytest.fixture(scope="module")
def results():
    if not _RESULTS:
        for criterion in CRITERIA:
            start = time.time()
            row = criterion(DEFAULT_SEED, False)
            _TIMINGS[row.name] = time.time() - start
            _RESULTS[row.name] = row
    return _RESULTS


def _report(row: CriterionResult) -> None:
    print(f"{'PASS' if row.passed else 'FAIL'}: {row.name}")


def test_c3_reproduction(results):
    row = results["C3"]
    _report(row)
    assert row.detail["abs_error"] < 1e-6
    assert row.detail["seconds"] < 30.0
    assert row.passed


def test_even_dimension_vanishing(results):
    row = results["even-dim-vanishing"]
    _report(row)
    assert all(v == 0.0 for v in row.detail["values"].values())
    assert row.passed


def test_anomaly_dim2(results):
    row = results["anomaly-dim2"]
    _report(row)
    eighth = -1.0 / (8.0 * math.pi)
    assert row.detail["d"][0] == pytest.approx(eighth, abs=1e-12)
    assert row.detail["d"][1] == pytest.approx(0.0, abs=1e-12)
    assert row.detail["d"][2] == pytest.approx(eighth, abs=1e-12)
    assert row.detail["sum"] == pytest.approx(-1.0 / (4.0 * math.pi), abs=1e-12)
    assert row.passed


def test_anomaly_dim3(results):
    row = results["anomaly-dim3"]
    _report(row)
    for entry in row.detail["rows"]:
        assert entry["sum"] == pytest.approx(entry["target"], abs=1e-12)
        assert max(entry["cancellations"]) < 1e-12
    assert {entry["u"] for entry in row.detail["rows"]} == {0.0, 0.1, 0.5, 1.0}
    assert row.passed


@pytest.mark.parametrize("suite", ["basic", "block", "short-exact",
                                   "gromov-shubin"])
def test_inequality_suite_zero_violations(results, suite):
    row = results[suite]
    _report(row)
    assert row.detail["n_violations"] == 0
    assert row.passed


def test_inequality_suites_probe_and_time_budget(results):
    suites = ["basic", "block", "short-exact", "gromov-shubin"]
    probes = sum(results[s].detail["probes"] for s in suites)
    elapsed = sum(_TIMINGS[s] for s in suites)
    print(f"PASS: suite-budget ({probes} probes in {elapsed:.1f}s)"
          if probes >= 100_000 and elapsed < 300.0 else "FAIL: suite-budget")
    assert probes >= 100_000
    assert elapsed < 300.0


def test_laplacian_decomposition_thousand_complexes(results):
    row = results["laplacian"]
    _report(row)
    assert row.detail["instances"] == 1000
    assert row.detail["n_violations"] == 0
    assert row.passed


def test_circle_determinants(results):
    row = results["circle-det"]
    _report(row)
    for entry in row.detail["rows"]:
        assert entry["abs_error"] < 1e-8
    assert {round(e["L"], 6) for e in row.detail["rows"]} == {
        1.0, round(2 * math.pi, 6), 5.0}
    assert row.passed


def test_expansion_constant_oracle(results):
    row = results["cim-constant"]
    _report(row)
    assert row.detail["selected"] == "reciprocal"
    assert row.detail["max_selected_residual"] < 1e-10
    # the losing closed form disagrees visibly away from power gap two
    reported = [r["literal_residual"] for r in row.detail["rows"]
                if r["power_gap"] != 2]
    assert min(reported) > 0.1
    assert row.passed


def test_heat_kernel_boundary_insensitivity(results):
    row = results["heat-boundary"]
    _report(row)
    assert row.detail["closed_form_violations"] == 0
    assert row.detail["monotone_in_cutoff"] is True
    assert all(math.isfinite(v) for v in row.detail["fitted_c1_at_c2_1"].values())
    assert row.passed


def test_large_time_domination(results):
    row = results["large-t-domination"]
    _report(row)
    assert row.detail["probes"] >= 10_000
    assert row.detail["violations"] == 0
    assert row.detail["double_integral_difference"] < 1e-8
    assert row.passed


def test_jsj_formula(results):
    row = results["jsj"]
    _report(row)
    assert row.detail["graph_torsion"] == 0.0
    assert row.detail["unit_torsion"] == -1.0
    assert row.detail["additivity_defect"] < 1e-12
    assert row.passed


def test_all_criteria_green(results):
    failing = [name for name, row in results.items() if not row.passed]
    print("PASS: all-criteria" if not failing else f"FAIL: {failing}")
    assert not failing
