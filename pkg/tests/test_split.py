import random

import pytest

from mex.core import BasisPair, lower_bounds, verify_sequence, weight_of
from mex.errors import CompletionNotFound, DomainError, IncompatiblePairs
from mex.instances import SplitDirectSum, k4_as_split, uniform
from mex.oracle import PairGraph, enumerate_compatible_pairs, exists_monotone_sequence
from mex.split import (
    completion_with_reuse,
    longest_monotone_prefix,
    random_elementary_split,
    solve_split,
    solve_uniform_monotone,
    tight_sets,
)
from mex.split import _completion_from

from conftest import pair, seeded_weights


def bp(red, blue):
    return BasisPair(frozenset(red), frozenset(blue))


@pytest.fixture
def k4_pair():
    S = k4_as_split()
    return S, pair(S, "a b c", "d e f"), pair(S, "b d f", "a c e")


def test_uniform_monotone_examples():
    seq = solve_uniform_monotone(2, frozenset(range(4)), bp({0, 1}, {2, 3}), bp({2, 3}, {0, 1}))
    assert list(seq) == [(0, 2), (1, 3)]
    assert len(solve_uniform_monotone(2, frozenset(range(4)), bp({0, 1}, {2, 3}), bp({0, 1}, {2, 3}))) == 0
    assert list(solve_uniform_monotone(1, frozenset({0, 1}), bp({0}, {1}), bp({1}, {0}))) == [(0, 1)]
    with pytest.raises(IncompatiblePairs):
        solve_uniform_monotone(2, frozenset(range(4)), bp({0, 1, 2}, {3}), bp({0, 1, 2}, {3}))


def test_prefix_examples(k4_pair):
    U = uniform(4, 2)
    P1, P2 = bp({0, 1}, {2, 3}), bp({2, 3}, {0, 1})
    seq, reached = longest_monotone_prefix(U, P1, P2)
    assert reached == P2 and len(seq) == 2
    seq, reached = longest_monotone_prefix(U, P1, P1)
    assert len(seq) == 0 and reached == P1
    S, P1, P2 = k4_pair
    assert not exists_monotone_sequence(S, P1, P2)
    seq, reached = longest_monotone_prefix(S, P1, P2)
    assert len(seq) < lower_bounds(P1, P2)[0] and reached != P2


def test_completion_on_k4_pair(k4_pair):
    S, P1, P2 = k4_pair
    w = seeded_weights(S, 5)
    prefix, reached = longest_monotone_prefix(S, P1, P2)
    pool = (P1.red & P2.red) | (P1.blue & P2.blue)
    tail = completion_with_reuse(S, reached, P2, w, pool=pool)
    seq = prefix + tail
    rep = verify_sequence(S, P1, P2, seq, w)
    assert rep.valid and rep.length == 3 == S.rank - len(P1.red & P2.red) + 1
    twice = [e for e, c in rep.usage.items() if c == 2]
    assert len(twice) == 1 and twice[0] in pool
    z = twice[0]
    assert 2 * w[z] <= weight_of(w, pool)
    assert rep.weight == weight_of(w, P1.union) + 2 * w[z] - weight_of(w, pool)
    # the candidate pool keeps at least two usable elements
    assert sum(completion_found(S, reached, P2, e) for e in pool) >= 2


def completion_found(S, start, P2, z) -> bool:
    return _completion_from(S, start, P2, z) is not None


def test_completion_without_candidates_fails(k4_pair):
    S, P1, P2 = k4_pair
    _, reached = longest_monotone_prefix(S, P1, P2)
    with pytest.raises(CompletionNotFound):
        completion_with_reuse(S, reached, P2, pool=set())


def test_solve_split_examples(k4_pair):
    S, P1, P2 = k4_pair
    assert len(solve_split(S, P1, P1)) == 0
    D = SplitDirectSum([str(i) for i in range(6)], None, [({0, 1}, 1), ({2, 3, 4, 5}, 2)])
    P1, P2 = bp({0, 2, 3}, {1, 4, 5}), bp({1, 4, 5}, {0, 2, 3})
    seq = solve_split(D, P1, P2)
    rep = verify_sequence(D, P1, P2, seq)
    assert rep.monotone and rep.length == 3


def test_solve_split_rejects_other_matroids(w5, wheel5_pairs):
    A, B, _ = wheel5_pairs
    with pytest.raises(DomainError):
        solve_split(w5, A, B)


def test_k4_sweep_matches_oracle():
    S = k4_as_split()
    pairs = enumerate_compatible_pairs(S)
    graph = PairGraph(S)
    extra = 0
    for P1 in pairs:
        hops = graph.bfs(P1)
        for P2 in pairs:
            seq = solve_split(S, P1, P2)
            rep = verify_sequence(S, P1, P2, seq)
            low = lower_bounds(P1, P2)[0]
            assert rep.valid and rep.length == hops[P2]
            assert rep.length <= min(S.rank, low + 1)
            if rep.length == low:
                assert rep.monotone
            else:
                extra += 1
                assert sorted(rep.usage.values()).count(2) == 1
    assert extra > 0


@pytest.mark.parametrize("seed", range(6))
def test_random_split_length_is_exact(seed):
    I = random_elementary_split(seed, rank=3 + seed % 2)
    graph = PairGraph(I)
    rng = random.Random(seed)
    pairs = enumerate_compatible_pairs(I)
    for P1 in pairs:
        hops = graph.bfs(P1)
        for P2 in pairs:
            w = seeded_weights(I, rng.randrange(10**6))
            rep = verify_sequence(I, P1, P2, solve_split(I, P1, P2, w), w)
            assert rep.valid and rep.length == hops[P2] and rep.max_usage <= 2
            assert rep.weight <= weight_of(w, P1.union)


def test_tight_sets():
    S = k4_as_split()
    F = S.elements(["a", "b", "c"])
    got = tight_sets(S, F)
    assert got.members == F
    assert all(len(F & S.hyperedges[i]) == 2 for i in got.hyperedges)
    # a and b lie on triangle 012, b and c on triangle 023
    assert len(got.hyperedges) == 2


def test_random_split_is_reproducible():
    a, b = random_elementary_split(4), random_elementary_split(4)
    assert (a.hyperedges, a.bounds) == (b.hyperedges, b.bounds)
    with pytest.raises(DomainError):
        random_elementary_split(0, rank=6)
