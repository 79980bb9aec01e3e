"""Exchange sequences for split matroids.

Uniform components get a strictly monotone sequence.  The elementary
component gets the longest strictly monotone prefix followed, when that
prefix stalls, by a completion that spends one fixed element twice.  The
completion is found by a bounded search; its existence and the weight bound
on the reused element are what makes the result land within
``min{r, r - |R1 & R2| + 1}`` steps and weight ``w(R1 | B1)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import AbstractSet, Optional

from mex.core import (
    BasisPair,
    Exchange,
    ExchangeSequence,
    MatroidOracle,
    Weights,
    check_compatible,
    check_pair,
    ensure_bounds,
    is_feasible_exchange,
    weight_of,
)
from mex.errors import CompletionNotFound, DomainError, IncompatiblePairs, InternalBoundViolation
from mex.instances import ElementarySplit, SplitDirectSum, UniformMatroid, validate_instance


@dataclass(frozen=True)
class TightSets:
    """Hyperedge indices ``i`` with ``|F & H_i| = r_i``."""

    members: frozenset[int]
    hyperedges: tuple[int, ...]


def tight_sets(I: ElementarySplit, F: AbstractSet[int]) -> TightSets:
    return TightSets(frozenset(F), tuple(I.tight(F)))


def solve_uniform_monotone(rank: int, ground: AbstractSet[int], P1: BasisPair, P2: BasisPair) -> ExchangeSequence:
    """Pair ``R1 & B2`` with ``B1 & R2`` in index order; every swap is feasible."""
    check_compatible(P1, P2)
    for P in (P1, P2):
        if len(P.red) != rank or len(P.blue) != rank or not P.union <= ground:
            raise IncompatiblePairs("pair does not consist of two bases of the uniform matroid")
    out = sorted(P1.red & P2.blue)
    into = sorted(P1.blue & P2.red)
    return ExchangeSequence(tuple(Exchange(e, f) for e, f in zip(out, into)))


def longest_monotone_prefix(M: MatroidOracle, P1: BasisPair, P2: BasisPair) -> tuple[ExchangeSequence, BasisPair]:
    """A longest run of strictly monotone exchanges from ``P1`` toward ``P2``.

    Exact depth-first search over reachable monotone states, memoized on the
    red class; the first maximum in index order wins.
    """
    check_compatible(P1, P2)
    target = len(P1.red - P2.red)
    best: dict[frozenset, tuple[Exchange, ...]] = {}

    def longest(red: frozenset, blue: frozenset) -> tuple[Exchange, ...]:
        if red in best:
            return best[red]
        result: tuple[Exchange, ...] = ()
        depth_left = len(red - P2.red)
        P = BasisPair(red, blue)
        for e in sorted(red & P2.blue):
            for f in sorted(blue & P2.red):
                if not is_feasible_exchange(M, P, e, f):
                    continue
                tail = longest((red - {e}) | {f}, (blue - {f}) | {e})
                if 1 + len(tail) > len(result):
                    result = (Exchange(e, f),) + tail
                    if len(result) == depth_left:
                        break
            if len(result) == depth_left:
                break
        best[red] = result
        return result

    steps = longest(P1.red, P1.blue)
    P = P1
    for e, f in steps:
        P = BasisPair((P.red - {e}) | {f}, (P.blue - {f}) | {e})
    if len(steps) > target:
        raise InternalBoundViolation("monotone prefix longer than the symmetric difference")
    return ExchangeSequence(steps), P


def _completion_from(M: MatroidOracle, start: BasisPair, P2: BasisPair, z: int) -> Optional[tuple[Exchange, ...]]:
    """Sequence to ``P2`` moving every differing element once and ``z`` exactly twice."""
    budget = {e: 1 for e in (start.red ^ P2.red)}
    budget[z] = 2
    length = len(start.red - P2.red) + 1
    seen: set = set()

    def search(red: frozenset, blue: frozenset, left: int) -> Optional[tuple[Exchange, ...]]:
        if left == 0:
            return () if red == P2.red and budget[z] == 0 else None
        if len(red - P2.red) > left:
            return None
        key = (red, tuple(sorted(budget.items())))
        if key in seen:
            return None
        P = BasisPair(red, blue)
        for e in sorted(x for x in red if budget.get(x, 0) > 0):
            for f in sorted(x for x in blue if budget.get(x, 0) > 0):
                if not is_feasible_exchange(M, P, e, f):
                    continue
                budget[e] -= 1
                budget[f] -= 1
                tail = search((red - {e}) | {f}, (blue - {f}) | {e}, left - 1)
                budget[e] += 1
                budget[f] += 1
                if tail is not None:
                    return (Exchange(e, f),) + tail
        seen.add(key)
        return None

    return search(start.red, start.blue, length)


def completion_with_reuse(I: MatroidOracle, P1_prime: BasisPair, P2: BasisPair, w: Optional[Weights] = None,
                          *, pool: Optional[AbstractSet[int]] = None) -> ExchangeSequence:
    """Finish a stalled monotone run by reusing one fixed element twice.

    ``pool`` holds the elements colored alike in the original pairs, which
    are still untouched; it defaults to the elements ``P1_prime`` and ``P2``
    agree on.  Candidates are tried by increasing weight, ties by index.
    """
    check_compatible(P1_prime, P2)
    if pool is None:
        pool = (P1_prime.red & P2.red) | (P1_prime.blue & P2.blue)
    pool = frozenset(pool)

    def key(z):
        return (Fraction(1) if w is None else w[z], z)

    for z in sorted(pool, key=key):
        steps = _completion_from(I, P1_prime, P2, z)
        if steps is not None:
            if 2 * key(z)[0] > weight_of(w, pool):
                raise InternalBoundViolation("reused element is heavier than half the fixed elements")
            return ExchangeSequence(steps)
    raise CompletionNotFound("no element admits a completion that uses it twice")


def _solve_component(M: MatroidOracle, P1: BasisPair, P2: BasisPair, w: Optional[Weights]) -> ExchangeSequence:
    if P1 == P2:
        return ExchangeSequence()
    prefix, reached = longest_monotone_prefix(M, P1, P2)
    if reached == P2:
        return prefix
    pool = (P1.red & P2.red) | (P1.blue & P2.blue)
    return prefix + completion_with_reuse(M, reached, P2, w, pool=pool)


def solve_split(D: MatroidOracle, P1: BasisPair, P2: BasisPair, w: Optional[Weights] = None) -> ExchangeSequence:
    """Length <= min{r, r - |R1 & R2| + 1}, weight <= w(R1 | B1), usage <= 2.

    Accepts a :class:`SplitDirectSum`, a bare :class:`ElementarySplit` or a
    :class:`UniformMatroid`.
    """
    check_pair(D, P1)
    check_pair(D, P2)
    check_compatible(P1, P2)
    if isinstance(D, SplitDirectSum):
        components = D.components()
        uniform_blocks = {g for g, _ in D.uniform}
    elif isinstance(D, UniformMatroid):
        components, uniform_blocks = [(D.ground, D)], {D.ground}
    elif isinstance(D, ElementarySplit):
        components, uniform_blocks = [(D.ground, D)], set()
    else:
        raise DomainError("expected a split matroid instance")

    seq = ExchangeSequence()
    for elements, oracle in components:
        Q1 = BasisPair(P1.red & elements, P1.blue & elements)
        Q2 = BasisPair(P2.red & elements, P2.blue & elements)
        if elements in uniform_blocks:
            seq = seq + solve_uniform_monotone(oracle.rank, elements, Q1, Q2)
        else:
            seq = seq + _solve_component(oracle, Q1, Q2, w)
    r = D.rank
    common = len(P1.red & P2.red)
    ensure_bounds(D, P1, P2, seq, w, max_length=min(r, r - common + 1),
                  max_weight=weight_of(w, P1.union), what="split sequence")
    return seq


def random_elementary_split(seed: int, rank: int = 3, max_tries: int = 1000) -> ElementarySplit:
    """A seeded valid elementary split matroid on ``2 * rank`` elements.

    Hyperedges and bounds are drawn at random and kept only if the instance
    is valid and its ground set splits into two disjoint bases.
    """
    if not 2 <= rank <= 4:
        raise DomainError("rank must be between 2 and 4")
    rng = random.Random(seed)
    size = 2 * rank
    ground = range(size)
    for _ in range(max_tries):
        hyperedges, bounds = [], []
        for _ in range(rng.randint(1, 16)):
            # mostly rank-sized hyperedges, which block monotone routes most often
            k = rank if rng.random() < 0.7 else rng.randint(rank, size - 1)
            h = frozenset(rng.sample(ground, k))
            low = max(1, rank - (size - len(h)))
            high = min(len(h), rank) - 1
            if low > high:
                continue
            b = high if rng.random() < 0.7 else rng.randint(low, high)
            if all(len(h & g) <= b + c - rank for g, c in zip(hyperedges, bounds)):
                hyperedges.append(h)
                bounds.append(b)
        if not hyperedges:
            continue
        I = ElementarySplit(size, rank, hyperedges, bounds)
        if validate_instance(I):
            continue
        everything = frozenset(ground)
        if any(I.is_basis(frozenset(R)) and I.is_basis(everything - frozenset(R))
               for R in combinations(ground, rank)):
            return I
    raise DomainError(f"no valid split instance found for seed {seed}")
