"""Conversions between the two tensor representations and structural
affiliation inference.

The rank-4 to rank-3 projection sums the tensor over its last layer axis.
For an undirected link between ``i`` (layer ``alpha``) and ``j`` (layer
``beta``) this leaves cell ``(i, j)`` in layer ``alpha`` and cell ``(j, i)``
in layer ``beta``: each node's full personal network occupies its own rows
in its own affiliation layer, and inter-affiliation pairs are the ones
present in two layers.  For a directed link the pair keeps its source to
target orientation and is written into both endpoint layers; the order of
the layer pair is the one piece of information the projection drops, and
reconstruction recovers it from node affiliations.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import (
    AffiliationViolationError,
    IndeterminateOrderingError,
    LinkNotFoundError,
)
from .network import (
    AffiliationMap,
    Directedness,
    Rank3Network,
    Rank4Network,
)

__all__ = [
    "LinkClass",
    "InferenceResult",
    "rank4_to_rank3",
    "rank3_to_rank4",
    "infer_affiliations",
    "classify_link",
]


class LinkClass(enum.Enum):
    INTRA = "intra"
    INTER = "inter"


@dataclass(frozen=True)
class InferenceResult:
    """Outcome of structural affiliation inference.

    ``indeterminate_nodes`` is exactly the set of nodes whose map entry is
    ``None``: isolated nodes, and nodes whose whole neighbourhood chain is
    structurally ambiguous.
    """

    affiliations: AffiliationMap
    indeterminate_nodes: frozenset[int]


def _implied_affiliations(a4: Rank4Network) -> list[int | None]:
    """Affiliations implied by link layer assignments.

    Raises :class:`AffiliationViolationError` when two links place the same
    node in different layers, which also catches networks constructed
    without a validated affiliation map.
    """
    implied: list[int | None] = [None] * a4.n_nodes
    for i, j, a, b in a4.links:
        for node, layer in ((i, a), (j, b)):
            known = implied[node]
            if known is None:
                implied[node] = layer
            elif known != layer:
                raise AffiliationViolationError(
                    f"node {node} appears in layers {known} and {layer}"
                )
    return implied


def rank4_to_rank3(a4: Rank4Network) -> Rank3Network:
    """Project a rank-4 network to its rank-3 form (sum over the second
    layer axis).

    Intra-affiliation links occupy one layer; inter-affiliation links
    occupy the layers of both endpoints.  The projection is lossless for
    undirected networks and loses only the layer-pair order for directed
    ones.
    """
    _implied_affiliations(a4)  # validates single-affiliation consistency
    cells: list[list[tuple[int, int]]] = [[] for _ in range(a4.n_layers)]
    undirected = a4.directedness is Directedness.UNDIRECTED
    for i, j, a, b in a4.links:
        if undirected:
            cells[a].append((i, j))
            cells[b].append((j, i))
        else:
            cells[a].append((i, j))
            if b != a:
                cells[b].append((i, j))
    return Rank3Network(
        a4.n_nodes,
        a4.n_layers,
        a4.directedness,
        cells,
        node_labels=a4.node_labels,
        layer_labels=a4.layer_labels,
    )


def _resolve_inter_orientation(
    a3: Rank3Network,
    i: int,
    j: int,
    layers: frozenset[int],
    affiliations: AffiliationMap | None,
    inference_cache: list,
) -> tuple[int, int]:
    """Return ``(aff(i), aff(j))`` for a pair present in two layers."""
    la, lb = sorted(layers)
    if affiliations is not None:
        ai, aj = affiliations[i], affiliations[j]
        for node, layer in ((i, ai), (j, aj)):
            if layer is not None and layer not in layers:
                raise AffiliationViolationError(
                    f"pair ({i},{j}) spans layers {sorted(layers)} "
                    f"but aff({node})={layer}"
                )
        if ai is not None and aj is not None and ai == aj:
            raise AffiliationViolationError(
                f"pair ({i},{j}) spans layers {sorted(layers)} but both "
                f"endpoints are affiliated with layer {ai}"
            )
        if ai is not None:
            return (ai, lb if ai == la else la)
        if aj is not None:
            return (lb if aj == la else la, aj)
    if a3.directedness is Directedness.UNDIRECTED:
        # Cell orientation encodes the owner: row i in aff(i)'s layer.
        i_in_a = a3.has_cell(i, j, la)
        i_in_b = a3.has_cell(i, j, lb)
        j_in_a = a3.has_cell(j, i, la)
        j_in_b = a3.has_cell(j, i, lb)
        if i_in_a and j_in_b and not (i_in_b or j_in_a):
            return (la, lb)
        if j_in_a and i_in_b and not (i_in_a or j_in_b):
            return (lb, la)
    if inference_cache[0] is None:
        inference_cache[0] = infer_affiliations(a3).affiliations
    inferred = inference_cache[0]
    ai = inferred[i]
    if ai is not None and ai in layers:
        return (ai, lb if ai == la else la)
    aj = inferred[j]
    if aj is not None and aj in layers:
        return (lb if aj == la else la, aj)
    raise IndeterminateOrderingError(
        f"cannot order layers {sorted(layers)} for pair ({i},{j}); "
        "supply an affiliation map"
    )


def rank3_to_rank4(
    a3: Rank3Network, affiliations: AffiliationMap | None = None
) -> Rank4Network:
    """Reconstruct the rank-4 network from its rank-3 form.

    A pair confined to one layer becomes an intra-affiliation link in that
    layer.  A pair present in two layers becomes an inter-affiliation link
    whose layer order is resolved, in order of preference, from the
    ``affiliations`` argument, from the stored cell orientation (undirected
    networks), or from structural inference.

    Raises
    ------
    IndeterminateOrderingError
        When the order cannot be resolved for some inter pair, which for
        directed networks happens whenever an endpoint's affiliation is
        unknown and not inferable.
    AffiliationViolationError
        When a supplied affiliation map contradicts the pair structure.
    """
    if affiliations is not None and len(affiliations) != a3.n_nodes:
        raise AffiliationViolationError(
            f"affiliation map covers {len(affiliations)} nodes, "
            f"expected {a3.n_nodes}"
        )
    inference_cache: list = [None]
    resolved: list[int | None] = list(affiliations) if affiliations is not None else [
        None
    ] * a3.n_nodes
    links: list[tuple[int, int, int, int]] = []
    for i, j in a3.pairs():
        layers = a3.pair_layers(i, j)
        if len(layers) == 1:
            (layer,) = layers
            if affiliations is not None:
                for node in (i, j):
                    known = affiliations[node]
                    if known is not None and known != layer:
                        raise AffiliationViolationError(
                            f"pair ({i},{j}) lies in layer {layer} but "
                            f"aff({node})={known}"
                        )
            links.append((i, j, layer, layer))
            resolved[i] = resolved[j] = layer
        else:
            ai, aj = _resolve_inter_orientation(
                a3, i, j, layers, affiliations, inference_cache
            )
            links.append((i, j, ai, aj))
            resolved[i], resolved[j] = ai, aj
    return Rank4Network(
        a3.n_nodes,
        a3.n_layers,
        a3.directedness,
        links,
        node_labels=a3.node_labels,
        layer_labels=a3.layer_labels,
        affiliations=AffiliationMap(resolved),
    )


def _incident_pairs(a3: Rank3Network) -> list[list[tuple[int, int]]]:
    incident: list[list[tuple[int, int]]] = [[] for _ in range(a3.n_nodes)]
    for i, j in a3.pairs():
        incident[i].append((i, j))
        incident[j].append((i, j))
    return incident


def infer_affiliations(a3: Rank3Network) -> InferenceResult:
    """Deduce node affiliations from the rank-3 structure alone.

    A node's affiliation layer is the one layer containing its full
    personal network, i.e. the intersection of the layer sets of all its
    incident pairs.  When that intersection is not a singleton (the node's
    links are all inter-affiliation towards a single other layer), the node
    is resolved by propagation from determinate neighbours: once ``aff(j)``
    is known, a shared pair's layer set fixes ``aff(i)``.  Propagation runs
    to a fixpoint; still-unresolved nodes and isolated nodes are reported
    as indeterminate.
    """
    n = a3.n_nodes
    incident = _incident_pairs(a3)
    assigned: list[int | None] = [None] * n
    pending: set[int] = set()

    for node in range(n):
        if not incident[node]:
            continue  # isolated, stays indeterminate
        candidates: frozenset[int] | None = None
        for i, j in incident[node]:
            layers = a3.pair_layers(i, j)
            candidates = layers if candidates is None else candidates & layers
        if candidates is not None and len(candidates) == 1:
            (assigned[node],) = candidates
        else:
            pending.add(node)

    # Fixpoint propagation from determinate neighbours.
    changed = True
    while changed and pending:
        changed = False
        for node in sorted(pending):
            for i, j in incident[node]:
                other = j if node == i else i
                other_aff = assigned[other]
                if other_aff is None:
                    continue
                layers = a3.pair_layers(i, j)
                if len(layers) == 1:
                    (assigned[node],) = layers
                elif other_aff in layers:
                    (assigned[node],) = layers - {other_aff}
                else:
                    continue
                pending.discard(node)
                changed = True
                break

    affmap = AffiliationMap(assigned)
    return InferenceResult(affmap, affmap.indeterminate_nodes)


def classify_link(a3: Rank3Network, i: int, j: int) -> LinkClass:
    """Classify a linked pair as intra- or inter-affiliation.

    Presence in one layer means intra, in two layers inter.  Raises
    :class:`LinkNotFoundError` for absent pairs.
    """
    layers = a3.pair_layers(i, j)
    if not layers:
        raise LinkNotFoundError(f"pair ({i},{j}) has no link")
    return LinkClass.INTRA if len(layers) == 1 else LinkClass.INTER
