"""End-to-end comparison of the two representations of one system.

:func:`run_comparison` computes, for every slice of both representations,
the degree distribution with a power-law fit (or an explicit marker when
the slice cannot support one) and a binomial fit, then aggregates
significance and fittability fractions, exponent histograms, node-activity
distributions, closeness tables and distributions, and data-density
figures.  :func:`export_report` writes one machine-readable summary plus
six flat tables ready for plotting.

Outputs are deterministic: fixed inputs and seed produce byte-identical
files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ._version import __version__
from .errors import InsufficientDataError
from .fitting import (
    FitReport,
    HistogramSpec,
    fit_binomial,
    fit_power_law,
    freedman_diaconis_bins,
    significance_fraction,
)
from .generators import density_report
from .metrics import (
    activity_matrix,
    closeness_table,
    degree_distribution,
    slice_degrees,
)
from .network import Rank3Network, Rank4Network, Slice

__all__ = [
    "SCHEMA_VERSION",
    "SliceAnalysis",
    "RepresentationAnalysis",
    "AnalysisReport",
    "run_comparison",
    "export_report",
    "EXPORT_TABLES",
]

SCHEMA_VERSION = 1

EXPORT_TABLES = (
    "slice_degree_distributions.tsv",
    "exponent_histogram.tsv",
    "node_activity.tsv",
    "closeness_matrix.tsv",
    "closeness_distributions.tsv",
    "density.tsv",
)


@dataclass(frozen=True)
class SliceAnalysis:
    """Per-slice degree analysis.

    ``power_law`` is ``None`` when the slice had fewer than three distinct
    positive degree values; ``note`` then says why.  The binomial fit uses
    the zero-inclusive distribution, the power-law fit the zero-excluded
    one.
    """

    slice: Slice
    n_active: int
    mean_degree: float
    distribution: tuple[tuple[int, float], ...]
    power_law: FitReport | None
    binomial: FitReport | None
    note: str | None = None

    def to_dict(self) -> dict:
        return {
            "slice": [self.slice.alpha] if self.slice.beta is None
            else [self.slice.alpha, self.slice.beta],
            "n_active": self.n_active,
            "mean_degree": self.mean_degree,
            "distribution": [[k, p] for k, p in self.distribution],
            "power_law": self.power_law.to_dict() if self.power_law else None,
            "binomial": self.binomial.to_dict() if self.binomial else None,
            "note": self.note,
        }


@dataclass(frozen=True)
class RepresentationAnalysis:
    """Everything computed for one representation of the system."""

    rank: int
    slices: tuple[SliceAnalysis, ...]
    significance_fraction: float
    fittable_fraction: float
    exponent_histogram: HistogramSpec | None
    activity: tuple[float, ...]
    activity_distribution: tuple[tuple[float, float], ...]
    activity_fit: FitReport | None
    activity_note: str | None
    closeness: tuple[tuple[float, ...], ...]
    closeness_pairs: tuple[float, ...]
    closeness_centralities: tuple[float, ...]
    density: dict

    def to_dict(self) -> dict:
        return {
            "rank": self.rank,
            "slices": [s.to_dict() for s in self.slices],
            "significance_fraction": self.significance_fraction,
            "fittable_fraction": self.fittable_fraction,
            "exponent_histogram": (
                self.exponent_histogram.to_dict() if self.exponent_histogram else None
            ),
            "activity": list(self.activity),
            "activity_distribution": [[b, p] for b, p in self.activity_distribution],
            "activity_fit": self.activity_fit.to_dict() if self.activity_fit else None,
            "activity_note": self.activity_note,
            "closeness": [list(row) for row in self.closeness],
            "closeness_pairs": list(self.closeness_pairs),
            "closeness_centralities": list(self.closeness_centralities),
            "density": self.density,
        }


@dataclass(frozen=True)
class AnalysisReport:
    metadata: dict
    rank3: RepresentationAnalysis
    rank4: RepresentationAnalysis
    node_labels: tuple[str, ...] = field(default_factory=tuple)

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "metadata": self.metadata,
            "rank3": self.rank3.to_dict(),
            "rank4": self.rank4.to_dict(),
            "node_labels": list(self.node_labels),
        }


def _analyse_slice(network, sl: Slice) -> SliceAnalysis:
    degrees = slice_degrees(network, sl)
    with_zeros = degree_distribution(degrees, include_zeros=True)
    without_zeros = degree_distribution(degrees, include_zeros=False)

    power_law = None
    note = None
    try:
        power_law = fit_power_law(without_zeros)
    except InsufficientDataError as exc:
        note = str(exc)
    try:
        binomial = fit_binomial(with_zeros, network.n_nodes)
    except InsufficientDataError:
        binomial = None

    return SliceAnalysis(
        slice=sl,
        n_active=int(np.count_nonzero(degrees.raw)),
        mean_degree=float(degrees.raw.mean()),
        distribution=with_zeros.items(),
        power_law=power_law,
        binomial=binomial,
        note=note,
    )


def _value_distribution(values: np.ndarray) -> tuple[tuple[float, float], ...]:
    nonzero = values[values > 0]
    if nonzero.size == 0:
        return ()
    uniques, counts = np.unique(nonzero, return_counts=True)
    return tuple(
        (float(v), float(c / nonzero.size)) for v, c in zip(uniques, counts)
    )


def _analyse_representation(network, rank: int) -> RepresentationAnalysis:
    slice_analyses = tuple(_analyse_slice(network, sl) for sl in network.slices())
    reports = [s.power_law for s in slice_analyses]
    sig_fraction = significance_fraction(reports)
    fittable = (
        sum(1 for r in reports if r is not None) / len(reports) if reports else 0.0
    )

    exponents = [
        r.exponent for r in reports if r is not None and r.significant
    ]
    try:
        histogram = freedman_diaconis_bins(exponents) if len(exponents) >= 2 else None
    except InsufficientDataError:
        histogram = None

    act = activity_matrix(network)
    activity = act.indicator.sum(axis=1) / act.m_bar
    activity_dist = _value_distribution(activity)
    activity_fit = None
    activity_note = None
    try:
        activity_fit = fit_power_law(activity_dist)
    except InsufficientDataError as exc:
        activity_note = str(exc)

    table = closeness_table(network)
    q = table.q
    pair_values = tuple(float(v) for v in q.reshape(-1))
    centralities = tuple(float(v) for v in table.centralities())

    return RepresentationAnalysis(
        rank=rank,
        slices=slice_analyses,
        significance_fraction=sig_fraction,
        fittable_fraction=fittable,
        exponent_histogram=histogram,
        activity=tuple(float(b) for b in activity),
        activity_distribution=activity_dist,
        activity_fit=activity_fit,
        activity_note=activity_note,
        closeness=tuple(tuple(float(v) for v in row) for row in q),
        closeness_pairs=pair_values,
        closeness_centralities=centralities,
        density=density_report(network).to_dict(),
    )


def run_comparison(
    rank4: Rank4Network,
    rank3: Rank3Network,
    metadata: dict | None = None,
) -> AnalysisReport:
    """Analyse both representations of the same system.

    Per-slice fit failures are recorded as markers, never raised, so the
    report always covers all M + M**2 slices.
    """
    meta = dict(metadata or {})
    meta.setdefault("version", __version__)
    return AnalysisReport(
        metadata=meta,
        rank3=_analyse_representation(rank3, 3),
        rank4=_analyse_representation(rank4, 4),
        node_labels=rank4.node_labels,
    )


def _fmt(value: float) -> str:
    return repr(float(value))


def _slice_name(sl_list: list) -> str:
    return ",".join(str(v) for v in sl_list)


def export_report(report: AnalysisReport, out_dir: "str | Path") -> list[Path]:
    """Write ``summary.json`` plus the six tabular files into ``out_dir``.

    Returns the list of paths written.  Numeric cells use full-precision
    shortest-round-trip decimals.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    summary = out / "summary.json"
    summary.write_text(
        json.dumps(report.to_dict(), sort_keys=True, indent=2) + "\n",
        encoding="utf-8",
    )
    written.append(summary)

    reps = (("rank3", report.rank3), ("rank4", report.rank4))

    lines = ["representation\tslice\tdegree\tprobability"]
    for name, rep in reps:
        for sa in rep.slices:
            d = sa.to_dict()
            for k, p in sa.distribution:
                lines.append(f"{name}\t{_slice_name(d['slice'])}\t{k}\t{_fmt(p)}")
    written.append(_write_table(out / "slice_degree_distributions.tsv", lines))

    lines = ["representation\tbin_left\tbin_right\tcount"]
    for name, rep in reps:
        hist = rep.exponent_histogram
        if hist is None:
            continue
        edges = hist.bin_edges
        for b, count in enumerate(hist.counts):
            lines.append(
                f"{name}\t{_fmt(edges[b])}\t{_fmt(edges[b + 1])}\t{int(count)}"
            )
    written.append(_write_table(out / "exponent_histogram.tsv", lines))

    lines = ["node\trank3_activity\trank4_activity"]
    labels = report.node_labels or tuple(
        str(i) for i in range(len(report.rank3.activity))
    )
    for idx, label in enumerate(labels):
        lines.append(
            f"{label}\t{_fmt(report.rank3.activity[idx])}"
            f"\t{_fmt(report.rank4.activity[idx])}"
        )
    written.append(_write_table(out / "node_activity.tsv", lines))

    lines = ["representation\tslice_x\tslice_y\tcloseness"]
    for name, rep in reps:
        n = len(rep.closeness)
        slice_names = [_slice_name(sa.to_dict()["slice"]) for sa in rep.slices]
        for x in range(n):
            for y in range(n):
                lines.append(
                    f"{name}\t{slice_names[x]}\t{slice_names[y]}"
                    f"\t{_fmt(rep.closeness[x][y])}"
                )
    written.append(_write_table(out / "closeness_matrix.tsv", lines))

    lines = ["representation\tkind\tvalue"]
    for name, rep in reps:
        for v in rep.closeness_pairs:
            lines.append(f"{name}\tpair\t{_fmt(v)}")
        for v in rep.closeness_centralities:
            lines.append(f"{name}\tcentrality\t{_fmt(v)}")
    written.append(_write_table(out / "closeness_distributions.tsv", lines))

    lines = ["representation\tpopulated\ttotal_cells\tfraction"]
    for name, rep in reps:
        d = rep.density
        lines.append(
            f"{name}\t{d['populated']}\t{d['total_cells']}\t{_fmt(d['fraction'])}"
        )
    written.append(_write_table(out / "density.tsv", lines))

    return written


def _write_table(path: Path, lines: list[str]) -> Path:
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path
