"""Slice metrics computed uniformly over both representations.

All three metric families reduce a network to its slices (M per rank-3
network, M**2 per rank-4 network) and work on slice row membership:

* slice degree: per-node link count within one slice, reported raw and
  normalised by N;
* node activity: fraction of slices in which a node has at least one link;
* slice-pair closeness: fraction of nodes simultaneously active in two
  slices, aggregated into a per-slice closeness centrality.

Everything here is a pure function of an immutable network, deterministic
and safe to call concurrently.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import InvalidSliceError
from .network import Rank3Network, Rank4Network, Slice

__all__ = [
    "DegreeVector",
    "DegreeDistribution",
    "ActivityMatrix",
    "ClosenessTable",
    "slice_degrees",
    "degree_distribution",
    "activity_matrix",
    "node_activity",
    "slice_pair_closeness",
    "closeness_table",
    "slice_closeness_centrality",
]

Network = "Rank3Network | Rank4Network"


@dataclass(frozen=True)
class DegreeVector:
    """Per-node degrees within one slice.

    ``raw`` holds integer link counts (out-degree for directed networks);
    ``normalized`` divides by the node count, matching the 1/N factor of
    the slice degree definition.
    """

    slice: Slice
    raw: np.ndarray
    n_nodes: int

    @property
    def normalized(self) -> np.ndarray:
        return self.raw / self.n_nodes

    def mean_raw(self) -> float:
        return float(self.raw.mean())


@dataclass(frozen=True)
class DegreeDistribution:
    """Empirical probability mass over raw degree values."""

    counts: tuple[tuple[int, int], ...]  # (degree, count), sorted by degree
    n: int

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(k for k, _ in self.counts)

    @property
    def probabilities(self) -> dict[int, float]:
        return {k: c / self.n for k, c in self.counts}

    def items(self) -> tuple[tuple[int, float], ...]:
        return tuple((k, c / self.n) for k, c in self.counts)

    def __len__(self) -> int:
        return len(self.counts)


def _slice_rows(network, sl: Slice) -> Mapping[int, frozenset[int]]:
    return network.slice_rows(sl)


def slice_degrees(network, sl: Slice, direction: str = "out") -> DegreeVector:
    """Degree of every node within one slice.

    ``direction`` selects row ("out", the default) or column ("in")
    counts; the two coincide for undirected rank-4 slices.
    """
    rows = _slice_rows(network, sl)
    raw = np.zeros(network.n_nodes, dtype=np.int64)
    if direction == "out":
        for i, nbrs in rows.items():
            raw[i] = len(nbrs)
    elif direction == "in":
        for nbrs in rows.values():
            for j in nbrs:
                raw[j] += 1
    else:
        raise ValueError(f"direction must be 'out' or 'in', got {direction!r}")
    return DegreeVector(sl, raw, network.n_nodes)


def degree_distribution(
    degrees: "DegreeVector | Sequence[int] | np.ndarray",
    include_zeros: bool = False,
) -> DegreeDistribution:
    """Empirical distribution of raw degree values.

    Zero degrees are excluded by default, which is the right population for
    power-law fitting; pass ``include_zeros=True`` for count models such as
    the binomial.
    """
    if isinstance(degrees, DegreeVector):
        values = degrees.raw
    else:
        values = np.asarray(degrees, dtype=np.int64)
    if not include_zeros:
        values = values[values != 0]
    counter = Counter(int(v) for v in values)
    counts = tuple(sorted(counter.items()))
    n = sum(counter.values())
    return DegreeDistribution(counts, n)


@dataclass(frozen=True)
class ActivityMatrix:
    """Boolean node-by-slice activity table.

    ``indicator[i, s]`` is true when node ``i`` has at least one link in
    slice ``s``; ``m_bar`` is the slice count used to normalise node
    activity (M for rank-3, M**2 for rank-4).
    """

    indicator: np.ndarray
    slices: tuple[Slice, ...]
    m_bar: int

    def active_set(self, index: int) -> frozenset[int]:
        return frozenset(np.flatnonzero(self.indicator[:, index]).tolist())


def activity_matrix(network) -> ActivityMatrix:
    slices = network.slices()
    indicator = np.zeros((network.n_nodes, len(slices)), dtype=bool)
    for s, sl in enumerate(slices):
        for i in _slice_rows(network, sl):
            indicator[i, s] = True
    return ActivityMatrix(indicator, slices, len(slices))


def node_activity(network) -> np.ndarray:
    """Per-node activity: active slice count divided by the slice total."""
    act = activity_matrix(network)
    return act.indicator.sum(axis=1) / act.m_bar


@dataclass(frozen=True)
class ClosenessTable:
    """Symmetric slice-by-slice closeness values in [0, 1].

    The diagonal holds the fraction of nodes active in each slice.
    """

    q: np.ndarray
    slices: tuple[Slice, ...]

    @property
    def m_bar(self) -> int:
        return len(self.slices)

    def centralities(self) -> np.ndarray:
        return self.q.sum(axis=1) / self.m_bar


def closeness_table(network) -> ClosenessTable:
    act = activity_matrix(network)
    b = act.indicator.astype(np.int64)
    q = (b.T @ b) / network.n_nodes
    return ClosenessTable(q, act.slices)


def _slice_index(network, sl: Slice) -> int:
    slices = network.slices()
    try:
        return slices.index(sl)
    except ValueError:
        raise InvalidSliceError(f"slice {sl} not in network") from None


def slice_pair_closeness(network, sx: Slice, sy: Slice) -> float:
    """Fraction of nodes active in both slices; symmetric in its arguments."""
    ax = frozenset(_slice_rows(network, sx))
    ay = frozenset(_slice_rows(network, sy))
    return len(ax & ay) / network.n_nodes


def slice_closeness_centrality(network, sl: Slice) -> float:
    """Mean closeness of one slice to every slice of the representation."""
    _slice_index(network, sl)  # validates
    table = closeness_table(network)
    idx = table.slices.index(sl)
    return float(table.q[idx].sum() / table.m_bar)
