"""Distribution fitting and histogram utilities.

Degree, activity and closeness distributions get compared against two
models:

* a power law ``P(k) ~ k**(-gamma)``, fitted by ordinary least squares on
  the log-log points, with the slope's two-sided t-test providing the
  significance verdict at the 0.05 threshold;
* the binomial count model
  ``P(k) = C(N-1, k) p**k (1-p)**(N-1-k)`` fitted by method of moments
  (``p_hat = mean(k) / (N-1)``), with goodness reported as the Pearson
  correlation between the empirical and model pmf over the observed
  support.

The power-law fit deliberately uses log-log regression rather than
maximum-likelihood estimation; MLE fitting is out of scope.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy import stats as sps

from .errors import DegenerateInputError, InsufficientDataError
from .metrics import DegreeDistribution

__all__ = [
    "SIGNIFICANCE_THRESHOLD",
    "MIN_FIT_POINTS",
    "FitReport",
    "HistogramSpec",
    "fit_power_law",
    "fit_binomial",
    "pearson_correlation",
    "freedman_diaconis_bins",
    "significance_fraction",
]

SIGNIFICANCE_THRESHOLD = 0.05
MIN_FIT_POINTS = 3  # slope p-values need at least 3 distinct x values


@dataclass(frozen=True)
class FitReport:
    """Result of fitting one distribution to one model.

    ``significant`` is true iff ``p_value < 0.05`` and the fit used at
    least :data:`MIN_FIT_POINTS` points.  ``exponent`` is the positive
    magnitude of the negative log-log slope (power-law model only);
    ``p_hat`` and ``mean_degree`` belong to the binomial model.
    """

    model: str
    pearson_r: float | None
    p_value: float | None
    significant: bool
    n_points: int
    exponent: float | None = None
    intercept: float | None = None
    p_hat: float | None = None
    mean_degree: float | None = None

    def to_dict(self) -> dict:
        return {
            "model": self.model,
            "pearson_r": self.pearson_r,
            "p_value": self.p_value,
            "significant": self.significant,
            "n_points": self.n_points,
            "exponent": self.exponent,
            "intercept": self.intercept,
            "p_hat": self.p_hat,
            "mean_degree": self.mean_degree,
        }


def _as_xy(distribution) -> tuple[np.ndarray, np.ndarray]:
    """Normalise the accepted distribution forms to (x, P(x)) arrays."""
    if isinstance(distribution, DegreeDistribution):
        pairs = distribution.items()
        xs = np.array([k for k, _ in pairs], dtype=float)
        ps = np.array([p for _, p in pairs], dtype=float)
        return xs, ps
    if isinstance(distribution, Mapping):
        keys = sorted(distribution)
        xs = np.array(keys, dtype=float)
        ps = np.array([distribution[k] for k in keys], dtype=float)
        return xs, ps
    pairs = sorted((float(x), float(p)) for x, p in distribution)
    xs = np.array([x for x, _ in pairs], dtype=float)
    ps = np.array([p for _, p in pairs], dtype=float)
    if len(np.unique(xs)) != len(xs):
        raise ValueError("duplicate x values in distribution")
    return xs, ps


def fit_power_law(distribution) -> FitReport:
    """OLS regression of ``log P`` on ``log x``.

    Accepts a :class:`DegreeDistribution`, a mapping ``x -> P``, or an
    iterable of ``(x, P)`` pairs.  Points with ``x < 1`` or ``P <= 0`` are
    dropped before the log transform.  Raises
    :class:`InsufficientDataError` with fewer than 3 surviving points,
    the regime in which a slice cannot support any trend.
    """
    xs, ps = _as_xy(distribution)
    keep = (xs >= 1) & (ps > 0)
    xs, ps = xs[keep], ps[keep]
    if len(xs) < MIN_FIT_POINTS:
        raise InsufficientDataError(
            f"power-law fit needs {MIN_FIT_POINTS} distinct values, got {len(xs)}"
        )
    result = sps.linregress(np.log(xs), np.log(ps))
    p_value = float(result.pvalue)
    return FitReport(
        model="power_law",
        pearson_r=float(result.rvalue),
        p_value=p_value,
        significant=bool(p_value < SIGNIFICANCE_THRESHOLD),
        n_points=len(xs),
        exponent=float(-result.slope),
        intercept=float(result.intercept),
    )


def fit_binomial(
    degrees: "DegreeDistribution | Sequence[int] | np.ndarray", n_nodes: int
) -> FitReport:
    """Method-of-moments binomial fit of a degree sample.

    ``p_hat = mean(k) / (N - 1)`` exactly.  Goodness is the Pearson
    correlation between empirical and model pmf over the observed support;
    it is undefined (``None``) when the support has fewer than 3 values or
    either side is constant.
    """
    if isinstance(degrees, DegreeDistribution):
        if degrees.n == 0:
            raise InsufficientDataError("empty degree distribution")
        ks = np.array(degrees.support, dtype=float)
        ps = np.array([p for _, p in degrees.items()], dtype=float)
        mean_degree = float(np.sum(ks * ps))
    else:
        values = np.asarray(degrees, dtype=np.int64)
        if values.size == 0:
            raise InsufficientDataError("empty degree sample")
        mean_degree = float(values.mean())
        ks, counts = np.unique(values, return_counts=True)
        ks = ks.astype(float)
        ps = counts / values.size
    if np.any(ks < 0) or np.any(ks > n_nodes - 1):
        raise ValueError("degree values outside [0, N-1]")
    p_hat = mean_degree / (n_nodes - 1) if n_nodes > 1 else 0.0

    pearson_r: float | None = None
    p_value: float | None = None
    significant = False
    if len(ks) >= MIN_FIT_POINTS:
        model = sps.binom.pmf(ks, n_nodes - 1, p_hat)
        if np.ptp(model) > 0 and np.ptp(ps) > 0:
            r, p = sps.pearsonr(ps, model)
            pearson_r, p_value = float(r), float(p)
            significant = bool(p_value < SIGNIFICANCE_THRESHOLD)
    return FitReport(
        model="binomial",
        pearson_r=pearson_r,
        p_value=p_value,
        significant=significant,
        n_points=len(ks),
        p_hat=p_hat,
        mean_degree=mean_degree,
    )


def pearson_correlation(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Product-moment correlation coefficient in [-1, 1].

    Raises :class:`DegenerateInputError` for unequal or short inputs and
    for zero variance on either side.
    """
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.shape != y.shape:
        raise DegenerateInputError("inputs have different lengths")
    if x.size < 2:
        raise DegenerateInputError("need at least two points")
    if np.ptp(x) == 0 or np.ptp(y) == 0:
        raise DegenerateInputError("zero variance input")
    r, _ = sps.pearsonr(x, y)
    return float(r)


@dataclass(frozen=True)
class HistogramSpec:
    """Histogram with Freedman-Diaconis bin width.

    Edges are strictly increasing and cover all values; counts partition
    the input (half-open bins, last bin closed).
    """

    bin_width: float
    bin_edges: np.ndarray
    counts: np.ndarray

    def to_dict(self) -> dict:
        return {
            "bin_width": self.bin_width,
            "bin_edges": [float(e) for e in self.bin_edges],
            "counts": [int(c) for c in self.counts],
        }


def _sturges_bin_count(n: int) -> int:
    return int(math.ceil(math.log2(n))) + 1


def freedman_diaconis_bins(values: Sequence[float]) -> HistogramSpec:
    """Bin values with width ``2 * IQR * n**(-1/3)``.

    Quartiles use linear interpolation.  A zero IQR falls back to Sturges'
    rule; a zero value range degenerates to one unit-width bin.  Raises
    :class:`InsufficientDataError` for fewer than two values.
    """
    data = np.asarray(values, dtype=float)
    if data.size < 2:
        raise InsufficientDataError("binning needs at least two values")
    q1, q3 = np.percentile(data, [25, 75])
    iqr = q3 - q1
    lo, hi = float(data.min()), float(data.max())
    if iqr > 0:
        width = 2.0 * iqr * data.size ** (-1.0 / 3.0)
    elif hi > lo:
        width = (hi - lo) / _sturges_bin_count(data.size)
    else:
        width = 1.0
    n_bins = max(1, int(math.ceil((hi - lo) / width))) if hi > lo else 1
    edges = lo + width * np.arange(n_bins + 1)
    if edges[-1] < hi:  # guard against float shortfall on the last edge
        edges[-1] = hi
    counts, _ = np.histogram(data, bins=edges)
    return HistogramSpec(float(width), edges, counts)


def significance_fraction(reports: Iterable["FitReport | None"]) -> float:
    """Fraction of reports that are significant.

    ``None`` entries stand for slices whose distribution could not be
    fitted at all and count as not significant.  An empty collection
    yields 0.0 by definition.
    """
    reports = list(reports)
    if not reports:
        return 0.0
    hits = sum(1 for r in reports if r is not None and r.significant)
    return hits / len(reports)
