"""Core model: single-affiliation multilayer networks in two sparse tensor forms.

A single-affiliation system assigns every node to exactly one layer
(affiliation).  Links between nodes then live at a layer pair determined by
the endpoint affiliations.  Two representations of the same system are
provided:

* :class:`Rank4Network` stores links as sparse entries of an
  ``N x N x M x M`` adjacency tensor ``A[i, j, alpha, beta]``.
* :class:`Rank3Network` stores sparse entries of an ``N x N x M`` tensor,
  one ``N x N`` adjacency per layer, obtained by summing the rank-4 tensor
  over its last axis.  A node pair appearing in two layers marks an
  inter-affiliation link; a pair confined to one layer is intra-affiliation.

Both classes expose the same *slice* abstraction: an ``N x N`` block over
which all structural metrics are computed.  A rank-3 network has ``M``
slices (one per layer); a rank-4 network has ``M**2`` (one per ordered
layer pair).

Networks are immutable after construction.  All query methods are safe for
concurrent use.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .errors import (
    AffiliationViolationError,
    IndexOutOfRangeError,
    InvalidSliceError,
    OverlapViolationError,
    SelfLoopError,
)

__all__ = [
    "Directedness",
    "Slice",
    "AffiliationMap",
    "SliceView",
    "Rank4Network",
    "Rank3Network",
    "build_rank4",
    "build_rank3",
    "slice_view",
    "enumerate_slices",
]


class Directedness(enum.Enum):
    UNDIRECTED = "undirected"
    DIRECTED = "directed"

    @classmethod
    def coerce(cls, value: "Directedness | str | bool") -> "Directedness":
        if isinstance(value, cls):
            return value
        if isinstance(value, bool):
            return cls.DIRECTED if value else cls.UNDIRECTED
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"not a directedness: {value!r}") from None


@dataclass(frozen=True, order=True)
class Slice:
    """Address of one N x N block: layer ``alpha`` for rank-3 networks, the
    ordered layer pair ``(alpha, beta)`` for rank-4 networks."""

    alpha: int
    beta: int | None = None

    @property
    def is_rank4(self) -> bool:
        return self.beta is not None

    def __str__(self) -> str:
        if self.beta is None:
            return f"({self.alpha})"
        return f"({self.alpha},{self.beta})"


class AffiliationMap:
    """Total or partial assignment of nodes to layers.

    ``None`` marks an indeterminate node.  Indeterminate entries are only
    ever produced by structural inference; ingestion and generation always
    build total maps.
    """

    __slots__ = ("_assignments",)

    def __init__(self, assignments: Sequence[int | None]):
        self._assignments = tuple(assignments)

    @property
    def n_nodes(self) -> int:
        return len(self._assignments)

    def __len__(self) -> int:
        return len(self._assignments)

    def __getitem__(self, node: int) -> int | None:
        return self._assignments[node]

    def __iter__(self) -> Iterator[int | None]:
        return iter(self._assignments)

    @property
    def assignments(self) -> tuple[int | None, ...]:
        return self._assignments

    @property
    def is_total(self) -> bool:
        return all(a is not None for a in self._assignments)

    @property
    def indeterminate_nodes(self) -> frozenset[int]:
        return frozenset(i for i, a in enumerate(self._assignments) if a is None)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AffiliationMap):
            return NotImplemented
        return self._assignments == other._assignments

    def __hash__(self) -> int:
        return hash(self._assignments)

    def __repr__(self) -> str:
        return f"AffiliationMap({list(self._assignments)!r})"


def _default_labels(n: int) -> tuple[str, ...]:
    return tuple(str(i) for i in range(n))


def _check_labels(labels: Sequence[str] | None, n: int, kind: str) -> tuple[str, ...]:
    if labels is None:
        return _default_labels(n)
    labels = tuple(labels)
    if len(labels) != n:
        raise ValueError(f"{kind} label table has {len(labels)} entries, expected {n}")
    if len(set(labels)) != n:
        raise ValueError(f"{kind} labels are not unique")
    return labels


def _check_node(i: int, n: int) -> None:
    if not 0 <= i < n:
        raise IndexOutOfRangeError(f"node index {i} outside [0, {n})")


def _check_layer(a: int, m: int) -> None:
    if not 0 <= a < m:
        raise IndexOutOfRangeError(f"layer index {a} outside [0, {m})")


class SliceView:
    """Read-only sparse view of one N x N slice.

    ``rows`` maps a node to the frozen set of its targets within the slice;
    nodes with no entries are absent.  Row membership is what degree and
    activity are computed from (out-degree for directed networks).
    """

    __slots__ = ("_rows", "n_nodes", "slice")

    def __init__(self, rows: Mapping[int, frozenset[int]], n_nodes: int, sl: Slice):
        self._rows = rows
        self.n_nodes = n_nodes
        self.slice = sl

    @property
    def rows(self) -> Mapping[int, frozenset[int]]:
        return self._rows

    def degree(self, node: int) -> int:
        _check_node(node, self.n_nodes)
        return len(self._rows.get(node, ()))

    def in_degree(self, node: int) -> int:
        _check_node(node, self.n_nodes)
        return sum(1 for nbrs in self._rows.values() if node in nbrs)

    @property
    def nnz(self) -> int:
        return sum(len(nbrs) for nbrs in self._rows.values())

    def active_nodes(self) -> frozenset[int]:
        return frozenset(self._rows)

    def __contains__(self, cell: tuple[int, int]) -> bool:
        i, j = cell
        return j in self._rows.get(i, ())

    def cells(self) -> list[tuple[int, int]]:
        return sorted((i, j) for i, nbrs in self._rows.items() for j in nbrs)

    def to_dense(self) -> np.ndarray:
        dense = np.zeros((self.n_nodes, self.n_nodes), dtype=np.int8)
        for i, nbrs in self._rows.items():
            for j in nbrs:
                dense[i, j] = 1
        return dense


_EMPTY_ROWS: Mapping[int, frozenset[int]] = MappingProxyType({})


def _freeze_rows(rows: dict[int, set[int]]) -> Mapping[int, frozenset[int]]:
    return MappingProxyType({i: frozenset(nbrs) for i, nbrs in rows.items() if nbrs})


class Rank4Network:
    """Sparse rank-4 adjacency tensor over N nodes and M layers.

    A link is a tuple ``(i, j, alpha, beta)`` meaning node ``i`` in layer
    ``alpha`` is adjacent to node ``j`` in layer ``beta``; all stored values
    are 1.  Undirected networks keep one canonical copy per link
    (``i < j``, swapping the layer pair along with the nodes) and answer
    queries symmetrically; their slices carry both mirrored cells so that
    slice degrees count each neighbour once.
    """

    def __init__(
        self,
        n_nodes: int,
        n_layers: int,
        directedness: Directedness | str,
        links: Iterable[tuple[int, int, int, int]],
        node_labels: Sequence[str] | None = None,
        layer_labels: Sequence[str] | None = None,
        affiliations: AffiliationMap | None = None,
    ):
        if n_nodes < 1:
            raise IndexOutOfRangeError("a network needs at least one node")
        if n_layers < 1:
            raise IndexOutOfRangeError("a network needs at least one layer")
        self.n_nodes = int(n_nodes)
        self.n_layers = int(n_layers)
        self.directedness = Directedness.coerce(directedness)
        self.node_labels = _check_labels(node_labels, self.n_nodes, "node")
        self.layer_labels = _check_labels(layer_labels, self.n_layers, "layer")
        if affiliations is not None and len(affiliations) != self.n_nodes:
            raise IndexOutOfRangeError(
                f"affiliation map covers {len(affiliations)} nodes, expected {n_nodes}"
            )
        self.affiliations = affiliations

        undirected = self.directedness is Directedness.UNDIRECTED
        canonical: set[tuple[int, int, int, int]] = set()
        for i, j, a, b in links:
            _check_node(i, self.n_nodes)
            _check_node(j, self.n_nodes)
            _check_layer(a, self.n_layers)
            _check_layer(b, self.n_layers)
            if i == j:
                raise SelfLoopError(f"self-loop on node {i}")
            if undirected and i > j:
                i, j, a, b = j, i, b, a
            if affiliations is not None:
                ai, aj = affiliations[i], affiliations[j]
                if (ai is not None and ai != a) or (aj is not None and aj != b):
                    raise AffiliationViolationError(
                        f"link ({i},{j},{a},{b}) contradicts affiliations "
                        f"aff({i})={ai}, aff({j})={aj}"
                    )
            canonical.add((i, j, a, b))
        self._links = frozenset(canonical)

        # Per-slice row index; undirected links mirror into the swapped slice.
        rows: dict[tuple[int, int], dict[int, set[int]]] = {}
        for i, j, a, b in canonical:
            rows.setdefault((a, b), {}).setdefault(i, set()).add(j)
            if undirected:
                rows.setdefault((b, a), {}).setdefault(j, set()).add(i)
        self._slice_rows: dict[tuple[int, int], Mapping[int, frozenset[int]]] = {
            key: _freeze_rows(r) for key, r in rows.items()
        }

    @property
    def links(self) -> tuple[tuple[int, int, int, int], ...]:
        """Canonical link tuples in sorted order."""
        return tuple(sorted(self._links))

    @property
    def n_links(self) -> int:
        return len(self._links)

    @property
    def n_slices(self) -> int:
        return self.n_layers * self.n_layers

    def has_link(self, i: int, j: int, alpha: int, beta: int) -> bool:
        _check_node(i, self.n_nodes)
        _check_node(j, self.n_nodes)
        _check_layer(alpha, self.n_layers)
        _check_layer(beta, self.n_layers)
        if self.directedness is Directedness.UNDIRECTED and i > j:
            i, j, alpha, beta = j, i, beta, alpha
        return (i, j, alpha, beta) in self._links

    def slices(self) -> tuple[Slice, ...]:
        m = self.n_layers
        return tuple(Slice(a, b) for a in range(m) for b in range(m))

    def slice_rows(self, sl: Slice) -> Mapping[int, frozenset[int]]:
        if sl.beta is None:
            raise InvalidSliceError(f"slice {sl} is not a layer pair")
        _check_slice_layer(sl.alpha, self.n_layers)
        _check_slice_layer(sl.beta, self.n_layers)
        return self._slice_rows.get((sl.alpha, sl.beta), _EMPTY_ROWS)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Rank4Network):
            return NotImplemented
        return (
            self.n_nodes == other.n_nodes
            and self.n_layers == other.n_layers
            and self.directedness == other.directedness
            and self._links == other._links
            and self.node_labels == other.node_labels
            and self.layer_labels == other.layer_labels
        )

    def __repr__(self) -> str:
        return (
            f"Rank4Network(n_nodes={self.n_nodes}, n_layers={self.n_layers}, "
            f"{self.directedness.value}, n_links={self.n_links})"
        )


def _check_slice_layer(a: int, m: int) -> None:
    if not 0 <= a < m:
        raise InvalidSliceError(f"layer index {a} outside [0, {m})")


class Rank3Network:
    """Sparse rank-3 tensor: one N x N adjacency per layer.

    Cells are ordered ``(i, j)`` entries per layer.  A node pair may appear
    in at most two layers; presence in exactly two layers is the structural
    signature of an inter-affiliation link, presence in one layer marks an
    intra-affiliation link.  For undirected networks pair presence is
    orientation-free (``(i, j)`` and ``(j, i)`` address the same pair) while
    the stored cell orientation is preserved, because row membership is what
    carries each node's personal network.
    """

    def __init__(
        self,
        n_nodes: int,
        n_layers: int,
        directedness: Directedness | str,
        layer_cells: Sequence[Iterable[tuple[int, int]]],
        node_labels: Sequence[str] | None = None,
        layer_labels: Sequence[str] | None = None,
    ):
        if n_nodes < 1:
            raise IndexOutOfRangeError("a network needs at least one node")
        if n_layers < 1:
            raise IndexOutOfRangeError("a network needs at least one layer")
        if len(layer_cells) != n_layers:
            raise IndexOutOfRangeError(
                f"{len(layer_cells)} layers of cells for n_layers={n_layers}"
            )
        self.n_nodes = int(n_nodes)
        self.n_layers = int(n_layers)
        self.directedness = Directedness.coerce(directedness)
        self.node_labels = _check_labels(node_labels, self.n_nodes, "node")
        self.layer_labels = _check_labels(layer_labels, self.n_layers, "layer")

        undirected = self.directedness is Directedness.UNDIRECTED
        rows: list[dict[int, set[int]]] = [dict() for _ in range(self.n_layers)]
        pair_layers: dict[tuple[int, int], set[int]] = {}
        for layer, cells in enumerate(layer_cells):
            for i, j in cells:
                _check_node(i, self.n_nodes)
                _check_node(j, self.n_nodes)
                if i == j:
                    raise SelfLoopError(f"self-loop on node {i}")
                rows[layer].setdefault(i, set()).add(j)
                key = (min(i, j), max(i, j)) if undirected else (i, j)
                pair_layers.setdefault(key, set()).add(layer)
        for (i, j), layers in pair_layers.items():
            if len(layers) > 2:
                raise OverlapViolationError(
                    f"pair ({i},{j}) present in {len(layers)} layers: {sorted(layers)}"
                )
        self._rows: tuple[Mapping[int, frozenset[int]], ...] = tuple(
            _freeze_rows(r) for r in rows
        )
        self._pair_layers: dict[tuple[int, int], frozenset[int]] = {
            key: frozenset(layers) for key, layers in pair_layers.items()
        }

    @property
    def n_pairs(self) -> int:
        """Number of distinct linked node pairs (each counted once even when
        it appears in two layers)."""
        return len(self._pair_layers)

    @property
    def n_slices(self) -> int:
        return self.n_layers

    def pair_layers(self, i: int, j: int) -> frozenset[int]:
        _check_node(i, self.n_nodes)
        _check_node(j, self.n_nodes)
        if self.directedness is Directedness.UNDIRECTED:
            key = (min(i, j), max(i, j))
        else:
            key = (i, j)
        return self._pair_layers.get(key, frozenset())

    def pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self._pair_layers))

    def has_cell(self, i: int, j: int, layer: int) -> bool:
        _check_node(i, self.n_nodes)
        _check_node(j, self.n_nodes)
        _check_layer(layer, self.n_layers)
        return j in self._rows[layer].get(i, ())

    def cells(self) -> tuple[tuple[int, int, int], ...]:
        """All stored cells as sorted ``(i, j, layer)`` tuples."""
        out = [
            (i, j, layer)
            for layer, rows in enumerate(self._rows)
            for i, nbrs in rows.items()
            for j in nbrs
        ]
        return tuple(sorted(out))

    @property
    def n_cells(self) -> int:
        return sum(
            len(nbrs) for rows in self._rows for nbrs in rows.values()
        )

    def slices(self) -> tuple[Slice, ...]:
        return tuple(Slice(a) for a in range(self.n_layers))

    def slice_rows(self, sl: Slice) -> Mapping[int, frozenset[int]]:
        if sl.beta is not None:
            raise InvalidSliceError(f"slice {sl} is a layer pair, not a layer")
        _check_slice_layer(sl.alpha, self.n_layers)
        return self._rows[sl.alpha]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Rank3Network):
            return NotImplemented
        return (
            self.n_nodes == other.n_nodes
            and self.n_layers == other.n_layers
            and self.directedness == other.directedness
            and self._rows == other._rows
            and self.node_labels == other.node_labels
            and self.layer_labels == other.layer_labels
        )

    def __repr__(self) -> str:
        return (
            f"Rank3Network(n_nodes={self.n_nodes}, n_layers={self.n_layers}, "
            f"{self.directedness.value}, n_pairs={self.n_pairs})"
        )


def build_rank4(
    n_nodes: int,
    n_layers: int,
    directedness: Directedness | str,
    links: Iterable[tuple[int, int, int, int]],
    affiliation: AffiliationMap,
    node_labels: Sequence[str] | None = None,
    layer_labels: Sequence[str] | None = None,
) -> Rank4Network:
    """Build a validated rank-4 network with a total affiliation map.

    Every link ``(i, j, alpha, beta)`` must satisfy ``alpha == aff(i)`` and
    ``beta == aff(j)``.

    Raises
    ------
    IndexOutOfRangeError, SelfLoopError, AffiliationViolationError
    """
    if affiliation is None:
        raise AffiliationViolationError("an affiliation map is required")
    if not affiliation.is_total:
        raise AffiliationViolationError(
            "affiliation map has indeterminate entries; a total map is required"
        )
    for layer in affiliation:
        _check_layer(layer, n_layers)
    return Rank4Network(
        n_nodes,
        n_layers,
        directedness,
        links,
        node_labels=node_labels,
        layer_labels=layer_labels,
        affiliations=affiliation,
    )


def build_rank3(
    n_nodes: int,
    n_layers: int,
    directedness: Directedness | str,
    per_layer_links: Sequence[Iterable[tuple[int, int]]],
    node_labels: Sequence[str] | None = None,
    layer_labels: Sequence[str] | None = None,
) -> Rank3Network:
    """Build a validated rank-3 network from per-layer cell lists.

    Raises
    ------
    IndexOutOfRangeError, SelfLoopError, OverlapViolationError
    """
    return Rank3Network(
        n_nodes,
        n_layers,
        directedness,
        per_layer_links,
        node_labels=node_labels,
        layer_labels=layer_labels,
    )


def enumerate_slices(network: "Rank3Network | Rank4Network") -> tuple[Slice, ...]:
    """All slices of a network: M for rank-3 (layer order), M**2 for rank-4
    (row-major layer-pair order)."""
    return network.slices()


def slice_view(network: "Rank3Network | Rank4Network", sl: Slice) -> SliceView:
    """Read-only N x N adjacency view of one slice.

    Raises :class:`InvalidSliceError` when the slice does not match the
    network's representation or its indices are out of range.
    """
    rows = network.slice_rows(sl)
    return SliceView(rows, network.n_nodes, sl)
