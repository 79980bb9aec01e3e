import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mex.core import BasisPair, Exchange, apply_exchange, lower_bounds, unit_weights, verify_sequence
from mex.errors import DomainError, NotAColoring, OrientationMismatch, PreconditionViolation
from mex.instances import wheel
from mex.oracle import PairGraph, exchange_distance, weighted_exchange_distance
from mex.wheel import (
    Orientation,
    admissible_index,
    all_colorings,
    check_ineq_A,
    check_ineq_B,
    coloring,
    decompose,
    interval_weights,
    monotone_same_orientation,
    orientation,
    solve_ge6,
    solve_le4,
    solve_wheel,
)

from conftest import pair, seeded_weights

POS, NEG = Orientation.POSITIVE, Orientation.NEGATIVE


def spokes(W, *idx):
    return [W.spoke(i) for i in idx]


def test_decompose_examples(w5):
    D = decompose(w5, pair(w5, "s1 s2 r2 r3", "s3 s4 r4 r1"))
    assert [w5.names(I) for I in D.intervals] == [["s1", "s2"], ["s3", "s4"]]
    assert D.colors == ("R", "B") and D.orientation is POS
    D = decompose(w5, pair(w5, "s1 s2 r3 r4", "s3 s4 r1 r2"))
    assert [w5.names(I) for I in D.intervals] == [["s1", "s2"], ["s3", "s4"]]
    assert D.orientation is NEG
    with pytest.raises(NotAColoring):
        decompose(w5, pair(w5, "s1 s2 s3 s4", "r1 r2 r3 r4"))


@pytest.mark.parametrize("n", [5, 6, 7])
def test_phi_maps_are_bijections(n):
    W = wheel(n)
    for P in all_colorings(W):
        D = decompose(W, P)
        assert sorted(D.phi_minus.values()) == sorted(W.rims)
        assert sorted(D.phi_plus.values()) == sorted(W.rims)
        for s in W.spokes:
            i = W.spoke_index(s)
            lo, hi = (D.phi_minus, D.phi_plus) if D.orientation is POS else (D.phi_plus, D.phi_minus)
            assert (lo[s], hi[s]) == (W.rim(i - 1), W.rim(i))


def test_monotone_examples(w5, wheel5_pairs):
    A, B, C = wheel5_pairs
    seq = monotone_same_orientation(w5, A, C)
    assert seq.labeled(w5) == [("s1", "r4"), ("r2", "s3")]
    assert len(monotone_same_orientation(w5, A, A)) == 0
    with pytest.raises(OrientationMismatch):
        monotone_same_orientation(w5, A, B)
    W = wheel(6)
    P1 = coloring(W, spokes(W, 1, 2, 3), POS)
    P2 = coloring(W, spokes(W, 1, 3), POS)
    seq = monotone_same_orientation(W, P1, P2)
    assert len(seq) == 1 == exchange_distance(W, P1, P2)


def test_le4_example(w5, wheel5_pairs):
    A, B, C = wheel5_pairs
    assert solve_le4(w5, A, B).labeled(w5) == [("r2", "r4")]
    assert exchange_distance(w5, A, B) == 1
    with pytest.raises(PreconditionViolation):
        solve_le4(w5, A, C)


def singleton_obstructions(W):
    """Positive two-interval colorings with a red singleton spoke, paired with targets of recolor set {b, c}."""
    for P1 in all_colorings(W):
        D = decompose(W, P1)
        if D.orientation is not POS or len(D.intervals) != 2 or len(D.intervals[0]) != 1:
            continue
        c = D.intervals[0][0]
        i = W.spoke_index(c)
        a, b, d = W.spoke(i - 1), W.rim(i - 1), W.rim(i)
        for P2 in all_colorings(W):
            if orientation(W, P2) is NEG:
                diff = {e for e in (a, b, c, d) if (e in P1.red) != (e in P2.red)}
                if diff == {b, c}:
                    yield P1, P2, (a, b, c, d)


def test_le4_singleton_three_step_shape():
    W = wheel(4)
    cases = list(singleton_obstructions(W))
    assert cases
    for P1, P2, (a, b, c, d) in cases:
        seq = solve_le4(W, P1, P2)  # unit weights: w(a) >= w(d)
        assert len(seq) >= 3
        assert set(seq[0]) == {b, d} and set(seq[2]) == {c, d}
        s, r = seq[1]
        s, r = (s, r) if W.is_spoke(s) else (r, s)
        assert r == W.rim(W.spoke_index(s))
        # heavier d flips the branch
        w = unit_weights(W.ground)
        w[d] = Fraction(5)
        seq = solve_le4(W, P1, P2, w)
        assert set(seq[0]) == {a, c} and set(seq[2]) == {a, b}


def test_interval_weights_sum(w5, wheel5_pairs):
    A, B, _ = wheel5_pairs
    w = seeded_weights(w5, 3)
    iw = interval_weights(w5, decompose(w5, A), B, w)
    assert sum(iw.xs) + sum(iw.ys) == sum(w.values())


def test_inequality_examples():
    assert check_ineq_A((1,) * 6, 1, 1)
    assert check_ineq_A((1, 0, 0, 0, 0, 0), 1, 1)
    with pytest.raises(DomainError):
        check_ineq_A((1,) * 8, 1, 1)
    with pytest.raises(DomainError):
        check_ineq_B((1,) * 6, 1, 1)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_inequality_counts(k):
    rng = random.Random(k)
    for _ in range(1000):
        xs = [Fraction(rng.randint(0, 20), rng.randint(1, 5)) for _ in range(4 * k + 2)]
        assert sum(check_ineq_A(xs, j, k) for j in range(1, 2 * k + 2)) >= k + 1
        assert all(check_ineq_A(xs, j, k) == check_ineq_A(xs, j + 2 * k + 1, k) for j in range(1, 2 * k + 2))
        if k >= 2:
            ys = xs[: 4 * k]
            assert sum(check_ineq_B(ys, j, k) for j in range(1, 4 * k + 1)) >= 2 * k + 1


def test_admissible_index_for_two_weightings():
    rng = random.Random(7)
    for _ in range(1000):
        q = rng.choice([3, 4, 5, 6])
        profiles = [[Fraction(rng.randint(0, 20), rng.randint(1, 5)) for _ in range(2 * q)] for _ in range(2)]
        assert admissible_index(profiles, q) is not None


def test_ge6_example():
    W = wheel(8)
    red = spokes(W, 1, 3, 5)
    P1, P2 = coloring(W, red, POS), coloring(W, red, NEG)
    assert len(decompose(W, P1).intervals) == 6
    seq = solve_ge6(W, P1, P2)
    rep = verify_sequence(W, P1, P2, seq)
    assert rep.valid and rep.weight <= 14 and rep.max_usage <= 2
    w1 = seeded_weights(W, 11)
    seq = solve_ge6(W, P1, P2, w1, unit_weights(W.ground))
    assert verify_sequence(W, P1, P2, seq, w1).weight <= sum(w1.values())
    assert verify_sequence(W, P1, P2, seq).weight <= 14
    with pytest.raises(PreconditionViolation):
        solve_ge6(W, coloring(W, spokes(W, 1, 2), POS), coloring(W, spokes(W, 1, 2), NEG))


def test_solve_wheel_trivial_and_same_orientation(w5, wheel5_pairs):
    A, _, C = wheel5_pairs
    assert len(solve_wheel(w5, A, A)) == 0
    assert len(solve_wheel(w5, A, C)) == 2 == exchange_distance(w5, A, C)


@pytest.mark.parametrize("n", [5, 6])
def test_solve_wheel_unit_sweep_against_oracle(n):
    W = wheel(n)
    cols = all_colorings(W)
    graph = PairGraph(W)
    for P1 in cols:
        hops = graph.bfs(P1)
        for P2 in cols:
            seq = solve_wheel(W, P1, P2)
            rep = verify_sequence(W, P1, P2, seq)
            assert rep.valid and rep.length <= W.m and rep.max_usage <= 2
            assert rep.length >= hops[P2]
            if orientation(W, P1) is orientation(W, P2):
                assert rep.length == hops[P2] == lower_bounds(P1, P2)[0]


@pytest.mark.parametrize("n", [5, 6, 7])
def test_spoke_exchanges_keep_orientation(n):
    W = wheel(n)
    for P in all_colorings(W):
        D = decompose(W, P)
        if len(D.intervals) < 4:
            continue
        for s in W.spokes:
            e, f = (s, D.phi_minus[s]) if s in P.red else (D.phi_minus[s], s)
            assert orientation(W, apply_exchange(W, P, Exchange(e, f))) is D.orientation


@pytest.mark.parametrize("n", [5, 6, 7])
def test_orientation_reversal_passes_two_intervals(n):
    W = wheel(n)
    cols = all_colorings(W)
    graph = PairGraph(W)
    rng = random.Random(n)
    for P2 in rng.sample(cols, 12):
        to_target = graph.bfs(P2)
        for P1 in cols:
            if orientation(W, P1) is orientation(W, P2):
                continue
            # walk one shortest path and record the interval counts met
            P, counts = P1, [len(decompose(W, P1).intervals)]
            while P != P2:
                P = min((Q for _, Q in graph.neighbors(P) if to_target[Q] == to_target[P] - 1),
                        key=lambda Q: sorted(Q.red))
                counts.append(len(decompose(W, P).intervals))
            assert 2 in counts


W7 = wheel(7)
W7_COLORINGS = all_colorings(W7)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(W7_COLORINGS), st.sampled_from(W7_COLORINGS),
       st.lists(st.fractions(min_value=0, max_value=20, max_denominator=6), min_size=12, max_size=12))
def test_solve_wheel_bounds_random(P1, P2, values):
    w = dict(enumerate(values))
    seq = solve_wheel(W7, P1, P2, w)
    rep = verify_sequence(W7, P1, P2, seq, w)
    assert rep.valid and rep.length <= 6 and rep.weight <= sum(values) and rep.max_usage <= 2
    if orientation(W7, P1) is orientation(W7, P2):
        assert rep.weight == weighted_exchange_distance(W7, P1, P2, w)
