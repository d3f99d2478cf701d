import numpy as np
import pytest
from hypothesis import given, strategies as st

from affnet import (
    AffiliationMap,
    AffiliationViolationError,
    Directedness,
    IndexOutOfRangeError,
    InvalidSliceError,
    OverlapViolationError,
    SelfLoopError,
    Slice,
    build_rank3,
    build_rank4,
    density_report,
    enumerate_slices,
    slice_view,
)

import oracles

D, E = 3, 4


def test_build_rank4_toy_valid(toy_rank4):
    assert toy_rank4.n_links == 9
    assert toy_rank4.has_link(3, 4, 0, 1)  # (D, E) at layer pair (1, 2)
    assert not toy_rank4.has_link(3, 4, 1, 0)


def test_build_rank4_empty_links():
    net = build_rank4(4, 2, "undirected", [], AffiliationMap([0, 0, 1, 1]))
    assert net.n_links == 0
    assert slice_view(net, Slice(0, 1)).nnz == 0


def test_build_rank4_affiliation_violation():
    aff = AffiliationMap([0, 0])
    with pytest.raises(AffiliationViolationError):
        build_rank4(2, 2, "undirected", [(0, 1, 0, 1)], aff)


def test_build_rank4_rejects_partial_affiliations():
    with pytest.raises(AffiliationViolationError):
        build_rank4(2, 2, "undirected", [], AffiliationMap([0, None]))


def test_build_rank4_index_and_self_loop_errors():
    aff = AffiliationMap([0, 0])
    with pytest.raises(IndexOutOfRangeError):
        build_rank4(2, 1, "undirected", [(0, 5, 0, 0)], aff)
    with pytest.raises(IndexOutOfRangeError):
        build_rank4(2, 1, "undirected", [(0, 1, 0, 3)], aff)
    with pytest.raises(SelfLoopError):
        build_rank4(2, 1, "undirected", [(1, 1, 0, 0)], aff)


def test_undirected_symmetric_queries():
    aff = AffiliationMap([0, 1])
    net = build_rank4(2, 2, "undirected", [(0, 1, 0, 1)], aff)
    assert net.has_link(0, 1, 0, 1)
    assert net.has_link(1, 0, 1, 0)  # mirrored query
    assert not net.has_link(1, 0, 0, 1)
    assert net.links == ((0, 1, 0, 1),)  # canonical storage, one copy


def test_undirected_canonicalises_reversed_input():
    aff = AffiliationMap([0, 1])
    net = build_rank4(2, 2, "undirected", [(1, 0, 1, 0)], aff)
    assert net.links == ((0, 1, 0, 1),)


def test_build_rank3_overlap_rule():
    # pair in two layers is a valid inter link
    net = build_rank3(7, 2, "undirected", [[(3, 4)], [(4, 3)]])
    assert net.pair_layers(3, 4) == frozenset({0, 1})
    # pair in one layer is intra
    net = build_rank3(7, 2, "undirected", [[(0, 1)], []])
    assert net.pair_layers(0, 1) == frozenset({0})
    # three layers violate the overlap bound
    with pytest.raises(OverlapViolationError):
        build_rank3(7, 3, "undirected", [[(0, 1)], [(0, 1)], [(1, 0)]])


def test_build_rank3_errors():
    with pytest.raises(SelfLoopError):
        build_rank3(3, 1, "undirected", [[(1, 1)]])
    with pytest.raises(IndexOutOfRangeError):
        build_rank3(3, 1, "undirected", [[(0, 7)]])
    with pytest.raises(IndexOutOfRangeError):
        build_rank3(3, 2, "undirected", [[(0, 1)]])  # one cell list for two layers


def test_directed_rank3_pairs_are_ordered():
    net = build_rank3(3, 2, "directed", [[(0, 1)], [(1, 0)]])
    assert net.pair_layers(0, 1) == frozenset({0})
    assert net.pair_layers(1, 0) == frozenset({1})


def test_enumerate_slices_counts():
    aff2 = AffiliationMap([0, 1])
    rank4 = build_rank4(2, 2, "undirected", [], aff2)
    assert enumerate_slices(rank4) == (
        Slice(0, 0), Slice(0, 1), Slice(1, 0), Slice(1, 1),
    )
    rank3 = build_rank3(2, 2, "undirected", [[], []])
    assert enumerate_slices(rank3) == (Slice(0), Slice(1))

    many = build_rank4(2, 17, "undirected", [], AffiliationMap([0, 16]))
    assert len(enumerate_slices(many)) == 289


def test_slice_view_toy_layer_pair(toy_rank4):
    view = slice_view(toy_rank4, Slice(0, 1))
    assert view.cells() == [(D, 4), (D, 5)]  # exactly (D,E) and (D,F)
    assert view.degree(D) == 2


def test_slice_view_rank3_layer_contents(toy_rank3):
    view = slice_view(toy_rank3, Slice(0))
    assert view.degree(D) == 3
    assert (D, 2) in view and (D, 4) in view and (D, 5) in view


def test_slice_view_invalid(toy_rank4, toy_rank3):
    with pytest.raises(InvalidSliceError):
        slice_view(toy_rank4, Slice(0))  # rank-3 slice on a rank-4 network
    with pytest.raises(InvalidSliceError):
        slice_view(toy_rank3, Slice(0, 1))
    with pytest.raises(InvalidSliceError):
        slice_view(toy_rank3, Slice(9))
    with pytest.raises(InvalidSliceError):
        slice_view(toy_rank4, Slice(0, 9))


def test_slice_view_dense_matches_cells(toy_rank3):
    view = slice_view(toy_rank3, Slice(1))
    dense = view.to_dense()
    assert dense.sum() == view.nnz
    for i, j in view.cells():
        assert dense[i, j] == 1


def test_label_tables_must_be_bijective():
    aff = AffiliationMap([0, 0])
    with pytest.raises(ValueError):
        build_rank4(2, 1, "undirected", [], aff, node_labels=["x", "x"])
    with pytest.raises(ValueError):
        build_rank4(2, 1, "undirected", [], aff, node_labels=["x"])


def test_minimum_dimensions():
    with pytest.raises(IndexOutOfRangeError):
        build_rank3(0, 1, "undirected", [[]])
    with pytest.raises(IndexOutOfRangeError):
        build_rank3(1, 0, "undirected", [])


@given(st.integers(0, 2**32 - 1))
def test_density_bounds_invariant(seed):
    rng = np.random.default_rng(seed)
    net = oracles.random_network(rng, max_n=12, max_m=4)
    m = net.n_layers
    assert density_report(net).fraction <= 1 / m**2
    from affnet.transforms import rank4_to_rank3

    assert density_report(rank4_to_rank3(net)).fraction <= 1 / m


@given(st.integers(0, 2**32 - 1))
def test_rank3_overlap_count_in_0_1_2(seed):
    rng = np.random.default_rng(seed)
    net = oracles.random_network(rng, max_n=10, max_m=3)
    from affnet.transforms import rank4_to_rank3

    a3 = rank4_to_rank3(net)
    for i in range(a3.n_nodes):
        for j in range(a3.n_nodes):
            assert len(a3.pair_layers(i, j)) in (0, 1, 2)


def test_directedness_coercion():
    assert Directedness.coerce("directed") is Directedness.DIRECTED
    assert Directedness.coerce(False) is Directedness.UNDIRECTED
    assert Directedness.coerce(Directedness.UNDIRECTED) is Directedness.UNDIRECTED
    with pytest.raises(ValueError):
        Directedness.coerce("sideways")
