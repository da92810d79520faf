import math

import numpy as np
import pytest

from claimcube import (
    EstimationError,
    ModelParams,
    ParameterError,
    Triangle,
    chain_ladder,
    compare_2d_3d,
    cumulate,
    decumulate,
    validate_params,
)


def incremental(values, horizon=None):
    values = np.asarray(values, dtype=float)
    return Triangle(values, "occurrence", "incremental", horizon or values.shape[0])


def cumulative(values, horizon=None):
    values = np.asarray(values, dtype=float)
    return Triangle(values, "occurrence", "cumulative", horizon or values.shape[0])


nan = math.nan


# --- cumulate / decumulate -----------------------------------------------------


def test_cumulate_zero_triangle():
    tri = cumulate(incremental([[0.0, 0.0], [0.0, nan]]))
    assert tri.values[0, 0] == 0.0 and tri.values[0, 1] == 0.0
    assert math.isnan(tri.values[1, 1])
    assert tri.form == "cumulative"


def test_cumulate_prefix_sums():
    tri = cumulate(incremental([[10.0, 5.0, 1.0], [2.0, 3.0, nan], [4.0, nan, nan]]))
    assert list(tri.values[0]) == [10.0, 15.0, 16.0]
    assert tri.values[1, 1] == 5.0


def test_cumulate_then_decumulate_is_identity():
    rng = np.random.default_rng(31)
    for _ in range(20):
        n = int(rng.integers(2, 7))
        vals = rng.uniform(0, 100, (n, n))
        r, c = np.indices(vals.shape)
        vals[r + c > n - 1] = nan
        tri = incremental(vals)
        back = decumulate(cumulate(tri))
        assert np.allclose(back.values, vals, equal_nan=True, rtol=1e-12)


def test_form_mismatch_rejected():
    with pytest.raises(ParameterError):
        cumulate(cumulative([[1.0, 1.0], [1.0, nan]]))
    with pytest.raises(ParameterError):
        chain_ladder(incremental([[1.0, 1.0], [1.0, nan]]))


# --- chain ladder ----------------------------------------------------------------


def test_two_by_two_fixture():
    # f = 1.5, completed cell 180, reserve 60
    result = chain_ladder(cumulative([[100.0, 150.0], [120.0, nan]]))
    assert result.development_factors[0] == pytest.approx(1.5)
    assert result.completed[1, 1] == pytest.approx(180.0)
    assert result.reserve_per_row[1] == pytest.approx(60.0)
    assert result.total_reserve_estimate == pytest.approx(60.0)


def test_fully_developed_row_has_zero_reserve():
    result = chain_ladder(cumulative([[100.0, 150.0], [120.0, nan]]))
    assert result.reserve_per_row[0] == 0.0


def test_single_row_rejected():
    with pytest.raises(EstimationError, match="2 rows"):
        chain_ladder(cumulative([[100.0]]))


def test_zero_volume_column_names_the_column():
    with pytest.raises(EstimationError, match="column 0"):
        chain_ladder(cumulative([[0.0, 0.0, 0.0], [0.0, 0.0, nan], [0.0, nan, nan]]))


def test_completed_triangle_agrees_on_known_region():
    vals = np.array([[50.0, 80.0, 90.0], [60.0, 95.0, nan], [55.0, nan, nan]])
    result = chain_ladder(cumulative(vals))
    known = ~np.isnan(vals)
    assert np.array_equal(result.completed[known], vals[known])
    assert np.all(result.development_factors >= 0)


def test_chain_ladder_exact_on_multiplicative_triangles():
    # rows proportional to one development pattern: CL reproduces the
    # completed values to round-off
    rng = np.random.default_rng(32)
    for _ in range(20):
        n = int(rng.integers(3, 8))
        volumes = rng.uniform(10, 200, n)
        pattern = np.cumsum(rng.uniform(0.1, 1.0, n))
        full = volumes[:, None] * pattern[None, :]
        vals = full.copy()
        r, c = np.indices(vals.shape)
        vals[r + c > n - 1] = nan
        result = chain_ladder(cumulative(vals))
        assert np.allclose(result.completed, full, rtol=1e-10)
        expected_total = sum(full[m, -1] - full[m, n - 1 - m] for m in range(n))
        assert result.total_reserve_estimate == pytest.approx(expected_total, rel=1e-10)


# --- 2D vs 3D comparison -----------------------------------------------------------


def poisson_only_params():
    # lag 0 only, no closures, certain yearly payment of a fixed amount, and
    # run-off that ends inside the triangle: the only randomness is Poisson
    return validate_params(
        ModelParams(
            occurrence_years=4,
            max_lag=1,
            max_runoff=3,
            expected_counts=400.0,
            lag_probs=[1.0],
            survival=[1.0, 1.0, 1.0, 1.0],
            pay_prob=1.0,
            severity_mean=5.0,
            severity_var=0.0,
        )
    )


@pytest.mark.filterwarnings("ignore:survival curve plateaus")
def test_degenerate_model_makes_chain_ladder_exact_per_replicate():
    params = poisson_only_params()
    comparison = compare_2d_3d(params, replicates=30, master_seed=41)
    for rec in comparison.records:
        if rec.estimator.startswith("chain_ladder"):
            assert rec.estimate == pytest.approx(rec.truth, rel=1e-9)
    for name in ("chain_ladder_occurrence", "chain_ladder_reporting"):
        assert comparison.summary[name].replicates_failed == 0
        assert abs(comparison.summary[name].bias) < 1e-6


def test_empty_world_comparison_is_exact(make_params):
    params = make_params(expected_counts=0.0)
    comparison = compare_2d_3d(params, replicates=5, master_seed=42)
    # chain ladder cannot run on all-zero triangles; failures are recorded,
    # never raised, and the analytic estimator is exactly right
    summary = comparison.summary
    assert summary["analytic_3d_mean"].bias == 0.0
    assert summary["chain_ladder_occurrence"].replicates_failed == 5
    assert all(rec.note for rec in comparison.records if math.isnan(rec.estimate))


def test_one_row_per_estimator_per_replicate(make_params):
    params = make_params(occurrence_years=4, expected_counts=60.0)
    reps = 8
    comparison = compare_2d_3d(params, replicates=reps, master_seed=43)
    assert len(comparison.records) == 3 * reps
    for name, summary in comparison.summary.items():
        assert summary.replicates_ok + summary.replicates_failed == reps


def test_stationary_portfolio_comparison_is_sane():
    # stationary portfolio: finite estimates; the reporting-triangle CL is
    # scored against the reported reserve and stays in its neighbourhood
    # (no sharper numeric target asserted)
    params = validate_params(
        ModelParams(
            occurrence_years=6,
            max_lag=3,
            max_runoff=2,
            expected_counts=500.0,
            lag_probs=[0.5, 0.3, 0.2],
            survival=[1.0, 0.5, 0.25],
            pay_prob=[0.6, 0.5, 0.4],
            severity_mean=10.0,
            severity_var=40.0,
        )
    )
    reps = 150
    comparison = compare_2d_3d(params, replicates=reps, master_seed=44)
    truths = np.array(
        [r.truth for r in comparison.records if r.estimator == "chain_ladder_reporting"]
    )
    errors = np.array(
        [r.error for r in comparison.records if r.estimator == "chain_ladder_reporting"]
    )
    assert comparison.summary["chain_ladder_reporting"].replicates_failed == 0
    for summary in comparison.summary.values():
        assert math.isfinite(summary.bias) and math.isfinite(summary.rmse)
    se = errors.std(ddof=1) / math.sqrt(reps)
    bias = comparison.summary["chain_ladder_reporting"].bias
    assert abs(bias) < max(0.1 * truths.mean(), 4 * se)
