from itertools import chain, combinations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mex.errors import DomainError
from mex.instances import (
    DeletionView,
    ElementarySplit,
    GraphMatroid,
    Spike,
    binary_spike,
    free_spike,
    graphic_is_independent,
    k4_as_split,
    k4_graph,
    spike_is_independent,
    split_is_independent,
    validate_instance,
    wheel,
)
from mex.oracle import enumerate_bases, enumerate_compatible_pairs


def subsets(ground):
    ground = sorted(ground)
    return chain.from_iterable(combinations(ground, k) for k in range(len(ground) + 1))


def is_forest(G: GraphMatroid, X) -> bool:
    H = nx.MultiGraph()
    H.add_nodes_from(range(G.n_vertices))
    H.add_edges_from(G.edges[e] for e in X)
    return nx.is_forest(H)


def test_wheel_shape():
    W = wheel(4)
    assert W.labels == ("s1", "s2", "s3", "r1", "r2", "r3")
    assert W.rank == 3 and W.ground_size == 6
    W = wheel(5)
    assert W.edges[W.index("r4")] == (4, 1)
    with pytest.raises(DomainError):
        wheel(3)


def test_graphic_examples():
    W = wheel(5)
    assert graphic_is_independent(W, W.elements("s1 s2 r2 r3".split()))
    assert graphic_is_independent(W, frozenset())
    assert not graphic_is_independent(W, W.elements("s1 s2 r1".split()))


@pytest.mark.parametrize("n", [4, 5, 6])
def test_wheel_independence_matches_networkx(n):
    W = wheel(n)
    for X in subsets(W.ground):
        assert W.is_independent(frozenset(X)) == is_forest(W, X)


def test_k4_bases_are_spanning_trees():
    G = k4_graph()
    bases = enumerate_bases(G)
    assert len(bases) == 16
    assert len(bases) == round(nx.number_of_spanning_trees(nx.complete_graph(4)))


def test_k4_split_matches_graph():
    G, S = k4_graph(), k4_as_split()
    assert G.labels == S.labels
    for X in subsets(G.ground):
        assert G.is_independent(frozenset(X)) == S.is_independent(frozenset(X))


def test_split_examples():
    S = k4_as_split()
    triangle = S.hyperedges[0]
    assert not split_is_independent(S, triangle)
    assert split_is_independent(S, frozenset())
    star = S.elements(["a", "b", "d"])  # every edge at vertex 0
    assert split_is_independent(S, star)


def test_spike_examples():
    K = free_spike(3)
    assert not spike_is_independent(K, K.elements(["t", "x1", "y1"]))
    assert spike_is_independent(K, K.elements(["x1", "y1", "x2"]))
    B = binary_spike(3)
    assert not spike_is_independent(B, B.elements(["x1", "y2", "y3"]))
    assert len(B.c3_members()) == 4
    with pytest.raises(DomainError):
        Spike(2)


def test_validate_instance():
    assert validate_instance(k4_as_split()) == []
    assert validate_instance(binary_spike(3)) == []
    assert validate_instance(wheel(6)) == []
    bad = ElementarySplit(6, 3, [{0, 1, 2, 3}, {0, 1, 2, 4}], [2, 2])
    assert len(validate_instance(bad)) == 1


def test_validate_rejects_non_matroid_c3():
    K = Spike(3)
    lone = Spike(3, [K.elements(["x1", "x2", "x3"])])
    assert validate_instance(lone) == []
    # two circuits sharing r - 1 elements break elimination
    clash = Spike(3, [K.elements(["x1", "x2", "x3"]), K.elements(["y1", "x2", "x3"])])
    assert len(validate_instance(clash)) == 1


@pytest.mark.parametrize("K", [free_spike(3), binary_spike(3), free_spike(4), binary_spike(4)],
                         ids=["free3", "binary3", "free4", "binary4"])
def test_spike_minus_any_element_splits(K):
    for s in K.ground:
        D = DeletionView(K, s)
        assert enumerate_compatible_pairs(D, D.ground)


@pytest.mark.parametrize("n", range(4, 9))
def test_wheel_splits_into_two_trees(n):
    W = wheel(n)
    red = frozenset(W.spokes[:1]) | frozenset(W.rims[1:])
    assert W.is_basis(red) and W.is_basis(W.ground - red)


@settings(max_examples=40, deadline=None)
@given(st.integers(4, 8), st.data())
def test_graph_independence_is_hereditary(n, data):
    W = wheel(n)
    X = frozenset(data.draw(st.sets(st.sampled_from(sorted(W.ground)))))
    assert W.is_independent(X) == is_forest(W, X)
    if W.is_independent(X) and X:
        e = data.draw(st.sampled_from(sorted(X)))
        assert W.is_independent(X - {e})
