import random
from itertools import chain, combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mex.core import BasisPair, replay, verify_sequence, weight_of
from mex.errors import DomainError, InfeasibleExchange
from mex.instances import PartitionMatroid, UniformMatroid
from mex.sbo import (
    SboBijections,
    partition_bijection,
    route_through,
    sbo_bipartition,
    sbo_candidates,
    solve_sbo,
)


def bp(red, blue):
    return BasisPair(frozenset(red), frozenset(blue))


@pytest.fixture
def two_parts():
    # parts {1,2},{3,4} shifted to ids 0..3
    M = PartitionMatroid([{0, 1}, {2, 3}])
    P1, P2 = bp({0, 2}, {1, 3}), bp({1, 3}, {0, 2})
    return M, P1, P2


def test_bipartition_example(two_parts):
    M, P1, P2 = two_parts
    bij = SboBijections({0: 1, 2: 3}, {1: 0, 3: 2})
    parts = sbo_bipartition(P1, P2, bij)
    assert parts.S == {0, 2} and parts.T == {1, 3}
    assert M.is_basis(parts.S) and M.is_basis(parts.T)


def test_solve_example(two_parts):
    M, P1, P2 = two_parts
    bij = partition_bijection(M.parts, P1, P2)
    assert bij.first == {0: 1, 2: 3}
    for seq, weight in sbo_candidates(M, P1, P2, bij):
        assert weight == 4 and replay(M, P1, seq) == P2
    seq = solve_sbo(M, P1, P2, bij)
    rep = verify_sequence(M, P1, P2, seq)
    assert rep.valid and rep.length == 2 and rep.max_usage <= 2 and rep.weight == 4


def test_identical_pairs_take_the_empty_route(two_parts):
    M, P1, _ = two_parts
    bij = partition_bijection(M.parts, P1, P1)
    parts = sbo_bipartition(P1, P1, bij)
    assert parts.S == P1.red and parts.T == P1.blue
    assert len(solve_sbo(M, P1, P1, bij)) == 0


def test_uniform_crossing_bijections():
    U = UniformMatroid(4, 2)
    P1, P2 = bp({0, 1}, {2, 3}), bp({0, 2}, {1, 3})
    bij = SboBijections({0: 2, 1: 3}, {0: 3, 2: 1})
    parts = sbo_bipartition(P1, P2, bij)
    assert len(parts.S) == len(parts.T) == 2
    assert U.is_basis(parts.S) and U.is_basis(parts.T)
    seq = solve_sbo(U, P1, P2, bij)
    assert verify_sequence(U, P1, P2, seq).valid


def test_partition_bijection_mismatch():
    M = PartitionMatroid([{0, 1, 2, 3}, {4, 5}], [2, 1])
    with pytest.raises(DomainError):
        partition_bijection([[0, 1], [2, 3], [4, 5]], bp({0, 1, 4}, {2, 3, 5}), bp({0, 1, 4}, {2, 3, 5}))
    P = bp({0, 2, 4}, {1, 3, 5})
    assert partition_bijection(M.parts, P, P).first == {0: 1, 2: 3, 4: 5}


def test_three_parts_exchange_property():
    M = PartitionMatroid([{0, 1}, {2, 3}, {4, 5}])
    P = bp({0, 3, 4}, {1, 2, 5})
    phi = partition_bijection(M.parts, P, P).first
    for X in chain.from_iterable(combinations(sorted(P.red), k) for k in range(4)):
        X = set(X)
        assert M.is_basis((P.red - X) | {phi[e] for e in X})
        assert M.is_basis((P.blue - {phi[e] for e in X}) | X)


def test_bad_bijections():
    U = UniformMatroid(4, 2)
    P1 = bp({0, 1}, {2, 3})
    with pytest.raises(DomainError):
        sbo_bipartition(P1, P1, SboBijections({0: 2}, {0: 2, 1: 3}))
    # maps that pair elements across parts lack the exchange property
    M = PartitionMatroid([{0, 2}, {1, 3}])
    P1, P2 = bp({0, 1}, {2, 3}), bp({2, 3}, {0, 1})
    with pytest.raises(InfeasibleExchange):
        solve_sbo(M, P1, P2, SboBijections({0: 3, 1: 2}, {2: 1, 3: 0}))


def random_partition_instance(seed: int):
    rng = random.Random(seed)
    n_parts = rng.randint(1, 4)
    sizes = [2 * rng.randint(1, 2) for _ in range(n_parts)]
    ids = list(range(sum(sizes)))
    rng.shuffle(ids)
    parts, k = [], 0
    for s in sizes:
        parts.append(sorted(ids[k:k + s]))
        k += s
    M = PartitionMatroid(parts, [s // 2 for s in sizes])
    pairs = []
    for _ in range(2):
        red = set()
        for p in parts:
            red |= set(rng.sample(p, len(p) // 2))
        pairs.append(bp(red, set(ids) - red))
    w = {e: rng.randint(0, 30) for e in ids}
    return M, pairs[0], pairs[1], w


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_candidate_weights_sum(seed):
    M, P1, P2, w = random_partition_instance(seed)
    bij = partition_bijection(M.parts, P1, P2)
    (s_seq, s_w), (t_seq, t_w) = sbo_candidates(M, P1, P2, bij, w)
    assert s_w + t_w == 2 * weight_of(w, P1.union)
    for seq, weight in ((s_seq, s_w), (t_seq, t_w)):
        rep = verify_sequence(M, P1, P2, seq, w)
        assert rep.valid and rep.weight == weight and rep.max_usage <= 2
    best = solve_sbo(M, P1, P2, bij, w)
    assert verify_sequence(M, P1, P2, best, w).weight == min(s_w, t_w) <= weight_of(w, P1.union)


def test_route_fixed_points_are_untouched(two_parts):
    M, P1, _ = two_parts
    P2 = bp({0, 3}, {1, 2})
    bij = partition_bijection(M.parts, P1, P2)
    parts = sbo_bipartition(P1, P2, bij)
    seq = route_through(P1, P2, bij, parts.S)
    used = verify_sequence(M, P1, P2, seq).usage
    assert 0 not in used
