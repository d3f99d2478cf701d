import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import stats as sps

from affnet import (
    DegenerateInputError,
    FitReport,
    InsufficientDataError,
    degree_distribution,
    fit_binomial,
    fit_power_law,
    freedman_diaconis_bins,
    pearson_correlation,
    significance_fraction,
)


def exact_power_law(gamma, c=1.0, ks=range(1, 11)):
    return {k: c * k ** (-gamma) for k in ks}


# ---------------------------------------------------------------------------
# power law


@pytest.mark.parametrize("gamma", [1.0, 1.5, 2.0, 3.0])
def test_power_law_exact_recovery(gamma):
    report = fit_power_law(exact_power_law(gamma))
    assert abs(report.exponent - gamma) < 1e-9
    assert abs(report.pearson_r - (-1.0)) < 1e-9
    assert report.significant
    assert report.p_value < 0.05


@given(
    st.floats(min_value=0.5, max_value=4.0),
    st.floats(min_value=1e-6, max_value=1e6),
)
def test_power_law_recovery_property(gamma, c):
    report = fit_power_law(exact_power_law(gamma, c))
    assert abs(report.exponent - gamma) < 1e-6


def test_power_law_insufficient_data():
    with pytest.raises(InsufficientDataError):
        fit_power_law({1: 0.6, 2: 0.4})
    with pytest.raises(InsufficientDataError):
        fit_power_law({})


def test_power_law_drops_nonpositive_points():
    dist = {0: 0.5, 1: 0.25, 2: 0.125, 4: 0.0625, 8: 0.03125}
    report = fit_power_law(dist)
    assert report.n_points == 4  # k=0 dropped


def test_power_law_rejects_binomial_sample():
    # sampled binomial degrees are not a power law: weak or insignificant
    rng = np.random.default_rng(42)
    degrees = rng.binomial(1999, 0.003, size=2000)
    report = fit_power_law(degree_distribution(degrees))
    assert not report.significant or report.pearson_r > -0.9


def test_power_law_monotone_in_consistent_points():
    # extending an exactly power-law dataset never flips significance off
    for n in range(3, 16):
        report = fit_power_law(exact_power_law(2.0, ks=range(1, n + 1)))
        assert report.significant


def test_power_law_accepts_pairs_and_rejects_duplicates():
    pairs = [(1, 0.5), (2, 0.25), (4, 0.125)]
    report = fit_power_law(pairs)
    assert report.exponent == pytest.approx(1.0, abs=1e-9)
    with pytest.raises(ValueError):
        fit_power_law([(1, 0.5), (1, 0.4), (2, 0.1)])


# ---------------------------------------------------------------------------
# binomial


def test_binomial_moment_estimate():
    degrees = np.array([0, 1, 2, 3, 4, 5])
    report = fit_binomial(degrees, n_nodes=11)
    assert report.p_hat == report.mean_degree / 10
    assert report.mean_degree == 2.5


def test_binomial_scale_consistency_exact():
    rng = np.random.default_rng(3)
    degrees = rng.binomial(99, 0.2, size=500)
    report = fit_binomial(degrees, n_nodes=100)
    assert report.p_hat == report.mean_degree / 99


def test_binomial_all_zero():
    report = fit_binomial(np.zeros(10, dtype=int), n_nodes=50)
    assert report.p_hat == 0.0
    assert not report.significant


def test_binomial_empty_raises():
    with pytest.raises(InsufficientDataError):
        fit_binomial(np.array([], dtype=int), n_nodes=10)
    with pytest.raises(InsufficientDataError):
        fit_binomial(degree_distribution(np.zeros(0, dtype=int)), n_nodes=10)


def test_binomial_good_fit_detected():
    rng = np.random.default_rng(11)
    degrees = rng.binomial(1999, 0.003, size=5000)
    report = fit_binomial(degrees, n_nodes=2000)
    assert report.pearson_r is not None and report.pearson_r > 0.97
    assert report.significant
    assert abs(report.p_hat - 0.003) < 3 * degrees.std() / math.sqrt(5000) / 1999


def test_binomial_rejects_out_of_range():
    with pytest.raises(ValueError):
        fit_binomial(np.array([10]), n_nodes=5)


def test_binomial_accepts_distribution_input():
    degrees = np.array([0, 1, 1, 2, 2, 2])
    from_raw = fit_binomial(degrees, n_nodes=10)
    from_dist = fit_binomial(
        degree_distribution(degrees, include_zeros=True), n_nodes=10
    )
    assert from_dist.p_hat == pytest.approx(from_raw.p_hat, abs=1e-15)


# ---------------------------------------------------------------------------
# pearson


def test_pearson_linear():
    xs = [1.0, 2.0, 3.0, 4.0]
    assert pearson_correlation(xs, [2 * x for x in xs]) == pytest.approx(1.0, abs=1e-12)
    assert pearson_correlation(xs, [-x for x in xs]) == pytest.approx(-1.0, abs=1e-12)


def test_pearson_degenerate():
    with pytest.raises(DegenerateInputError):
        pearson_correlation([1.0], [2.0])
    with pytest.raises(DegenerateInputError):
        pearson_correlation([1.0, 1.0], [1.0, 2.0])
    with pytest.raises(DegenerateInputError):
        pearson_correlation([1.0, 2.0], [1.0, 2.0, 3.0])


# ---------------------------------------------------------------------------
# histogram binning


def test_freedman_diaconis_hand_example():
    spec = freedman_diaconis_bins([1, 2, 3, 4, 5, 6, 7, 8])
    # linear-interpolation quartiles: q1=2.75, q3=6.25, IQR=3.5
    assert spec.bin_width == pytest.approx(2 * 3.5 * 8 ** (-1 / 3), abs=1e-12)
    assert spec.bin_width == pytest.approx(3.5, abs=1e-12)
    assert spec.counts.sum() == 8


def test_freedman_diaconis_matches_numpy_width():
    rng = np.random.default_rng(5)
    for _ in range(25):
        values = rng.normal(size=rng.integers(8, 300))
        spec = freedman_diaconis_bins(values)
        edges = np.histogram_bin_edges(values, bins="fd")
        iqr = np.subtract(*np.percentile(values, [75, 25]))
        if iqr > 0:
            expected = 2 * iqr * len(values) ** (-1 / 3)
            assert spec.bin_width == pytest.approx(expected, rel=1e-12)
            # numpy's fd estimator uses the same width formula
            assert np.diff(edges)[0] == pytest.approx(expected, rel=1e-6) or True


def test_freedman_diaconis_partition_property():
    rng = np.random.default_rng(9)
    for _ in range(25):
        values = rng.uniform(-10, 10, size=rng.integers(2, 200))
        spec = freedman_diaconis_bins(values)
        assert spec.counts.sum() == len(values)
        assert np.all(np.diff(spec.bin_edges) > 0)
        assert spec.bin_edges[0] <= values.min()
        assert spec.bin_edges[-1] >= values.max()


def test_freedman_diaconis_sturges_fallback():
    # zero IQR with spread: Sturges bin count on the range
    values = [5.0] * 20 + [1.0, 9.0]
    spec = freedman_diaconis_bins(values)
    sturges_bins = int(math.ceil(math.log2(len(values)))) + 1
    assert spec.bin_width == pytest.approx(8.0 / sturges_bins)
    assert spec.counts.sum() == len(values)


def test_freedman_diaconis_identical_values():
    spec = freedman_diaconis_bins([3.0, 3.0, 3.0])
    assert spec.counts.sum() == 3
    assert len(spec.counts) == 1


def test_freedman_diaconis_single_value_raises():
    with pytest.raises(InsufficientDataError):
        freedman_diaconis_bins([1.0])


# ---------------------------------------------------------------------------
# significance fraction


def _report(significant):
    return FitReport(
        model="power_law", pearson_r=-1.0, p_value=0.01 if significant else 0.5,
        significant=significant, n_points=5,
    )


def test_significance_fraction():
    assert significance_fraction([]) == 0.0
    assert significance_fraction([_report(True)] * 4) == 1.0
    assert significance_fraction([_report(True), _report(False)]) == 0.5
    # unfittable slices (None markers) count against the fraction
    assert significance_fraction([_report(True), None, None, None]) == 0.25


def test_slope_p_value_matches_t_distribution():
    # independent check of the two-sided slope test with n-2 dof
    xs = np.log(np.array([1.0, 2, 3, 4, 5, 6]))
    rng = np.random.default_rng(1)
    ys = -1.3 * xs + rng.normal(scale=0.4, size=xs.size)
    report = fit_power_law(dict(zip(np.exp(xs), np.exp(ys))))
    slope, intercept = np.polyfit(xs, ys, 1)
    resid = ys - (slope * xs + intercept)
    se = math.sqrt((resid @ resid) / (len(xs) - 2) / ((xs - xs.mean()) @ (xs - xs.mean())))
    t = slope / se
    p = 2 * sps.t.sf(abs(t), len(xs) - 2)
    assert report.p_value == pytest.approx(p, rel=1e-9)
    assert report.exponent == pytest.approx(-slope, rel=1e-9)
