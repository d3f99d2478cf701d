"""Synthetic single-affiliation network generation.

The benchmark generator draws an Erdos-Renyi graph (every unordered node
pair linked independently with probability ``p``) and assigns each node one
of ``M`` affiliations uniformly at random.  Links are stored at the layer
pair given by their endpoint affiliations, so generated networks always
satisfy single-affiliation consistency.

Generation is deterministic for a fixed config: affiliations are drawn
first, then links, from a counter-based Philox stream.  Pair sampling uses
geometric skipping, so the cost scales with the expected link count rather
than with N**2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .network import AffiliationMap, Rank3Network, Rank4Network, build_rank4

__all__ = ["RNG_ALGORITHM", "ErConfig", "DensityReport", "generate_er_affiliation", "density_report"]

RNG_ALGORITHM = "philox-4x64"


@dataclass(frozen=True)
class ErConfig:
    """Parameters of one generated network."""

    n_nodes: int
    link_probability: float
    n_affiliations: int
    seed: int = 0

    def __post_init__(self):
        if self.n_nodes < 1:
            raise ValueError("n_nodes must be >= 1")
        if self.n_affiliations < 1:
            raise ValueError("n_affiliations must be >= 1")
        if not 0.0 <= self.link_probability <= 1.0:
            raise ValueError("link_probability must lie in [0, 1]")

    def metadata(self) -> dict:
        return {
            "n_nodes": self.n_nodes,
            "link_probability": self.link_probability,
            "n_affiliations": self.n_affiliations,
            "seed": self.seed,
            "rng": RNG_ALGORITHM,
        }


def _pair_from_index(idx: int, n: int) -> tuple[int, int]:
    """Decode a linear index over the upper triangle into a pair i < j."""
    # offset(i) = i*n - i*(i+1)/2 is the index of pair (i, i+1)
    i = int((2 * n - 1 - math.sqrt((2 * n - 1) ** 2 - 8 * idx)) // 2)
    while i * n - i * (i + 1) // 2 > idx:
        i -= 1
    while (i + 1) * n - (i + 1) * (i + 2) // 2 <= idx:
        i += 1
    j = idx - (i * n - i * (i + 1) // 2) + i + 1
    return i, j


def _sample_pairs(rng: np.random.Generator, n: int, p: float) -> list[tuple[int, int]]:
    total = n * (n - 1) // 2
    if p <= 0.0 or total == 0:
        return []
    if p >= 1.0:
        return [(i, j) for i in range(n) for j in range(i + 1, n)]
    pairs = []
    log_q = math.log1p(-p)
    idx = -1
    while True:
        u = rng.random()
        idx += 1 + int(math.log(1.0 - u) / log_q)
        if idx >= total:
            break
        pairs.append(_pair_from_index(idx, n))
    return pairs


def generate_er_affiliation(config: ErConfig) -> tuple[Rank4Network, AffiliationMap]:
    """Generate one network; identical configs give identical networks."""
    rng = np.random.Generator(np.random.Philox(key=config.seed))
    n, m = config.n_nodes, config.n_affiliations
    affs = rng.integers(0, m, size=n)
    affiliation = AffiliationMap(tuple(int(a) for a in affs))
    links = [
        (i, j, int(affs[i]), int(affs[j]))
        for i, j in _sample_pairs(rng, n, config.link_probability)
    ]
    network = build_rank4(n, m, "undirected", links, affiliation)
    return network, affiliation


@dataclass(frozen=True)
class DensityReport:
    """Data-point density of one representation.

    ``populated`` counts distinct links: a link appearing in two rank-3
    layers, or mirrored in an undirected rank-4 tensor, is still one data
    point.  ``total_cells`` is N*N*M for rank-3 and N*N*M*M for rank-4.
    """

    rank: int
    populated: int
    total_cells: int

    @property
    def fraction(self) -> float:
        return self.populated / self.total_cells

    def to_dict(self) -> dict:
        return {
            "rank": self.rank,
            "populated": self.populated,
            "total_cells": self.total_cells,
            "fraction": self.fraction,
        }


def density_report(network: "Rank3Network | Rank4Network") -> DensityReport:
    n, m = network.n_nodes, network.n_layers
    if isinstance(network, Rank4Network):
        return DensityReport(4, network.n_links, n * n * m * m)
    return DensityReport(3, network.n_pairs, n * n * m)
