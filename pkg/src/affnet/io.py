"""File ingestion and network serialization.

Two file families are understood:

* analysis inputs: a two-column edge list (source and target labels) plus
  a two-column affiliation file (node label, affiliation label), both
  tab- or comma-delimited with the delimiter auto-detected from the first
  line and an optional header row;
* the native network format: a tab-separated cell list (four index
  columns for rank-4 networks, three for rank-3) under a small comment
  header carrying dimensions, directedness, format version and the label
  tables, with affiliations in a sidecar file that is itself a valid
  affiliation input.

All writers emit sorted rows and plain ``repr`` floats so identical inputs
produce byte-identical files.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .errors import (
    MissingAffiliationError,
    ParseError,
    SelfLoopError,
)
from .network import (
    AffiliationMap,
    Directedness,
    Rank3Network,
    Rank4Network,
    build_rank4,
)
from .transforms import rank4_to_rank3

__all__ = [
    "FORMAT_VERSION",
    "IngestStats",
    "IngestResult",
    "read_edge_list",
    "read_affiliation_file",
    "ingest",
    "save_network",
    "load_network",
    "save_affiliations",
    "load_affiliations",
    "export_edge_list",
]

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1

_EDGE_HEADER_WORDS = {
    "source", "target", "src", "dst", "from", "to", "node1", "node2", "u", "v",
}
_AFF_HEADER_WORDS = {
    "node", "label", "affiliation", "layer", "department", "group", "id", "name",
}


def _detect_delimiter(line: str) -> str:
    if "\t" in line:
        return "\t"
    if "," in line:
        return ","
    raise ParseError("no tab or comma delimiter found in first line", line=1)


def _split_rows(path: Path, n_columns: int, header_words: set[str]):
    """Yield (line_number, fields) rows, skipping an optional header."""
    text = path.read_text(encoding="utf-8")
    delimiter = None
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped:
            continue
        if delimiter is None:
            delimiter = _detect_delimiter(stripped)
            fields = [f.strip() for f in stripped.split(delimiter)]
            if all(f.lower() in header_words for f in fields if f):
                continue  # header row
        fields = [f.strip() for f in stripped.split(delimiter)]
        if len(fields) != n_columns:
            raise ParseError(
                f"expected {n_columns} columns, got {len(fields)}", line=lineno
            )
        if any(not f for f in fields):
            raise ParseError("empty label", line=lineno)
        yield lineno, fields
    if delimiter is None:
        raise ParseError(f"{path} is empty")


def read_edge_list(path: "str | Path") -> list[tuple[str, str]]:
    """Read (source_label, target_label) rows; duplicates are preserved."""
    return [tuple(fields) for _, fields in _split_rows(Path(path), 2, _EDGE_HEADER_WORDS)]


def read_affiliation_file(path: "str | Path") -> dict[str, str]:
    """Read node -> affiliation label rows.

    Raises :class:`ParseError` when a node label appears twice.
    """
    mapping: dict[str, str] = {}
    for lineno, (node, aff) in _split_rows(Path(path), 2, _AFF_HEADER_WORDS):
        if node in mapping:
            raise ParseError(f"node {node!r} affiliated twice", line=lineno)
        mapping[node] = aff
    return mapping


@dataclass
class IngestStats:
    """Counts of rows collapsed or dropped during ingestion."""

    duplicate_links: int = 0
    dropped_self_loops: int = 0
    dropped_unaffiliated: int = 0
    unaffiliated_labels: list[str] = field(default_factory=list)


@dataclass(frozen=True)
class IngestResult:
    rank4: Rank4Network
    rank3: Rank3Network
    affiliations: AffiliationMap
    stats: IngestStats

    def __iter__(self):
        return iter((self.rank4, self.rank3, self.affiliations))


def ingest(
    edge_path: "str | Path",
    affiliation_path: "str | Path",
    directedness: "Directedness | str" = Directedness.UNDIRECTED,
    strict: bool = True,
) -> IngestResult:
    """Build both representations from an edge list and an affiliation file.

    In strict mode every edge endpoint must carry an affiliation and
    self-loops are errors.  In lenient mode links touching unaffiliated
    nodes and self-loops are dropped with counts, mirroring datasets where
    unaffiliated actors are omitted from analysis.
    """
    directedness = Directedness.coerce(directedness)
    edges = read_edge_list(edge_path)
    aff_by_label = read_affiliation_file(affiliation_path)
    stats = IngestStats()

    node_labels: list[str] = []
    node_index: dict[str, int] = {}
    layer_labels: list[str] = []
    layer_index: dict[str, int] = {}
    for label, aff_label in aff_by_label.items():
        node_index[label] = len(node_labels)
        node_labels.append(label)
        if aff_label not in layer_index:
            layer_index[aff_label] = len(layer_labels)
            layer_labels.append(aff_label)

    undirected = directedness is Directedness.UNDIRECTED
    links: dict[tuple[int, int], None] = {}
    for src, dst in edges:
        if src == dst:
            if strict:
                raise SelfLoopError(f"self-loop on {src!r}")
            stats.dropped_self_loops += 1
            continue
        missing = [lab for lab in (src, dst) if lab not in aff_by_label]
        if missing:
            if strict:
                raise MissingAffiliationError(
                    f"no affiliation for {missing[0]!r} (edge {src!r} -> {dst!r})"
                )
            stats.dropped_unaffiliated += 1
            for lab in missing:
                if lab not in stats.unaffiliated_labels:
                    stats.unaffiliated_labels.append(lab)
            continue
        i, j = node_index[src], node_index[dst]
        key = (min(i, j), max(i, j)) if undirected else (i, j)
        if key in links:
            stats.duplicate_links += 1
            continue
        links[key] = None

    if stats.duplicate_links:
        logger.warning("collapsed %d duplicate edge rows", stats.duplicate_links)
    if stats.dropped_unaffiliated:
        logger.warning(
            "dropped %d links touching %d unaffiliated nodes",
            stats.dropped_unaffiliated,
            len(stats.unaffiliated_labels),
        )
    if stats.dropped_self_loops:
        logger.warning("dropped %d self-loops", stats.dropped_self_loops)

    assignments = tuple(layer_index[aff_by_label[lab]] for lab in node_labels)
    affiliation = AffiliationMap(assignments)
    full_links = [
        (i, j, assignments[i], assignments[j]) for i, j in links
    ]
    rank4 = build_rank4(
        len(node_labels),
        len(layer_labels),
        directedness,
        full_links,
        affiliation,
        node_labels=node_labels,
        layer_labels=layer_labels,
    )
    rank3 = rank4_to_rank3(rank4)
    return IngestResult(rank4, rank3, affiliation, stats)


def _check_writable_label(label: str) -> str:
    if "\t" in label or "\n" in label or "," in label:
        raise ValueError(f"label {label!r} contains a delimiter character")
    return label


def _header_lines(network, rank: int) -> list[str]:
    lines = [
        "# affnet network",
        f"# version={FORMAT_VERSION} rank={rank} "
        f"n_nodes={network.n_nodes} n_layers={network.n_layers} "
        f"directed={'true' if network.directedness is Directedness.DIRECTED else 'false'}",
    ]
    for idx, label in enumerate(network.node_labels):
        lines.append(f"# node {idx} {_check_writable_label(label)}")
    for idx, label in enumerate(network.layer_labels):
        lines.append(f"# layer {idx} {_check_writable_label(label)}")
    return lines


def save_network(network: "Rank3Network | Rank4Network", path: "str | Path") -> Path:
    """Write a network in the native format; returns the path written."""
    path = Path(path)
    if isinstance(network, Rank4Network):
        lines = _header_lines(network, 4)
        lines += [f"{i}\t{j}\t{a}\t{b}" for i, j, a, b in network.links]
    else:
        lines = _header_lines(network, 3)
        lines += [f"{i}\t{j}\t{layer}" for i, j, layer in network.cells()]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def load_network(path: "str | Path") -> "Rank3Network | Rank4Network":
    """Read a network saved by :func:`save_network`."""
    path = Path(path)
    meta: dict[str, str] = {}
    node_labels: dict[int, str] = {}
    layer_labels: dict[int, str] = {}
    rows: list[tuple[int, ...]] = []
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            body = stripped.lstrip("#").strip()
            if body.startswith("node "):
                _, idx, label = body.split(" ", 2)
                node_labels[int(idx)] = label
            elif body.startswith("layer "):
                _, idx, label = body.split(" ", 2)
                layer_labels[int(idx)] = label
            elif "=" in body:
                for token in body.split():
                    if "=" in token:
                        key, value = token.split("=", 1)
                        meta[key] = value
            continue
        try:
            rows.append(tuple(int(f) for f in stripped.split("\t")))
        except ValueError:
            raise ParseError("non-integer index column", line=lineno) from None
    for key in ("rank", "n_nodes", "n_layers", "directed"):
        if key not in meta:
            raise ParseError(f"missing {key}= in network header")
    rank = int(meta["rank"])
    n_nodes, n_layers = int(meta["n_nodes"]), int(meta["n_layers"])
    directedness = (
        Directedness.DIRECTED if meta["directed"] == "true" else Directedness.UNDIRECTED
    )
    nodes = [node_labels.get(i, str(i)) for i in range(n_nodes)]
    layers = [layer_labels.get(a, str(a)) for a in range(n_layers)]
    if rank == 4:
        if any(len(r) != 4 for r in rows):
            raise ParseError("rank-4 rows need four index columns")
        return Rank4Network(
            n_nodes, n_layers, directedness, rows,
            node_labels=nodes, layer_labels=layers,
        )
    if rank == 3:
        if any(len(r) != 3 for r in rows):
            raise ParseError("rank-3 rows need three index columns")
        per_layer: list[list[tuple[int, int]]] = [[] for _ in range(n_layers)]
        for i, j, layer in rows:
            if not 0 <= layer < n_layers:
                raise ParseError(f"layer index {layer} out of range")
            per_layer[layer].append((i, j))
        return Rank3Network(
            n_nodes, n_layers, directedness, per_layer,
            node_labels=nodes, layer_labels=layers,
        )
    raise ParseError(f"unsupported rank {rank}")


def save_affiliations(
    affiliations: AffiliationMap,
    node_labels: Iterable[str],
    layer_labels: Iterable[str],
    path: "str | Path",
) -> Path:
    """Write an affiliation sidecar (valid ingestion input).

    Indeterminate nodes are omitted.
    """
    node_labels = list(node_labels)
    layer_labels = list(layer_labels)
    lines = []
    for idx, layer in enumerate(affiliations):
        if layer is None:
            continue
        lines.append(
            f"{_check_writable_label(node_labels[idx])}\t"
            f"{_check_writable_label(layer_labels[layer])}"
        )
    path = Path(path)
    path.write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")
    return path


def load_affiliations(
    path: "str | Path", network: "Rank3Network | Rank4Network"
) -> AffiliationMap:
    """Read a sidecar affiliation file against a network's label tables."""
    mapping = read_affiliation_file(path)
    node_index = {label: idx for idx, label in enumerate(network.node_labels)}
    layer_index = {label: idx for idx, label in enumerate(network.layer_labels)}
    assignments: list[int | None] = [None] * network.n_nodes
    for node_label, layer_label in mapping.items():
        if node_label not in node_index:
            raise ParseError(f"unknown node label {node_label!r}")
        if layer_label not in layer_index:
            raise ParseError(f"unknown layer label {layer_label!r}")
        assignments[node_index[node_label]] = layer_index[layer_label]
    return AffiliationMap(assignments)


def export_edge_list(network: Rank4Network, path: "str | Path") -> Path:
    """Write a label-based two-column edge list (ingestion input format)."""
    lines = ["source\ttarget"]
    labels = network.node_labels
    for i, j, _, _ in network.links:
        lines.append(
            f"{_check_writable_label(labels[i])}\t{_check_writable_label(labels[j])}"
        )
    path = Path(path)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path
