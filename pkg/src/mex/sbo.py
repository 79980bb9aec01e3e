"""Two-route sequences for strongly base orderable matroids.

The caller supplies exchange bijections ``R1 -> B1`` and ``R2 -> B2``.  The
union of the two matchings is bipartite; routing through either color class
gives a valid sequence, and the two route weights add up to twice the
weight of the colored elements, so the lighter route is always within bound.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional

from mex.core import (
    BasisPair,
    Exchange,
    ExchangeSequence,
    MatroidOracle,
    Weights,
    check_compatible,
    check_pair,
    ensure_bounds,
    replay,
    weight_of,
)
from mex.errors import DomainError, InfeasibleExchange, NotBipartite


@dataclass(frozen=True)
class SboBijections:
    first: Mapping[int, int]
    second: Mapping[int, int]

    def check(self, P1: BasisPair, P2: BasisPair) -> None:
        for phi, P in ((self.first, P1), (self.second, P2)):
            if set(phi) != set(P.red) or set(phi.values()) != set(P.blue) or len(phi) != len(P.blue):
                raise DomainError("bijection must map the red class onto the blue class")


@dataclass(frozen=True)
class SboBipartition:
    S: frozenset[int]
    T: frozenset[int]


def sbo_bipartition(P1: BasisPair, P2: BasisPair, bij: SboBijections) -> SboBipartition:
    """Two-color the union of both matchings.

    In every component the class holding its smallest ``R1`` element goes to ``S``.
    """
    check_compatible(P1, P2)
    bij.check(P1, P2)
    adj: dict[int, list[int]] = {e: [] for e in P1.union}
    for phi in (bij.first, bij.second):
        for e, f in phi.items():
            adj[e].append(f)
            adj[f].append(e)
    side: dict[int, int] = {}
    S, T = set(), set()
    for start in sorted(P1.red):
        if start in side:
            continue
        side[start] = 0
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if v not in side:
                    side[v] = 1 - side[u]
                    queue.append(v)
                elif side[v] == side[u]:
                    raise NotBipartite("matching union has an odd cycle")
    for e, s in side.items():
        (S if s == 0 else T).add(e)
    return SboBipartition(frozenset(S), frozenset(T))


def route_through(P1: BasisPair, P2: BasisPair, bij: SboBijections, X: frozenset[int]) -> ExchangeSequence:
    """Exchange ``P1`` to ``(X, complement)`` along the first map, then on to ``P2`` along the second."""
    steps = [Exchange(e, bij.first[e]) for e in sorted(P1.red - X)]
    steps += [Exchange(bij.second[f], f) for f in sorted(P2.red - X)]
    return ExchangeSequence(tuple(steps))


def sbo_candidates(M: MatroidOracle, P1: BasisPair, P2: BasisPair, bij: SboBijections,
                   w: Optional[Weights] = None) -> list[tuple[ExchangeSequence, Fraction]]:
    """Both routes with their weights ``w(R1 ^ X) + w(R2 ^ X)``, ``S`` first."""
    parts = sbo_bipartition(P1, P2, bij)
    out = []
    for X in (parts.S, parts.T):
        seq = route_through(P1, P2, bij, X)
        out.append((seq, weight_of(w, P1.red ^ X) + weight_of(w, P2.red ^ X)))
    return out


def solve_sbo(M: MatroidOracle, P1: BasisPair, P2: BasisPair, bij: SboBijections,
              w: Optional[Weights] = None) -> ExchangeSequence:
    """Lighter of the two routes; weight <= w(R1 | B1), every element used at most twice."""
    check_pair(M, P1)
    check_pair(M, P2)
    (seq_s, w_s), (seq_t, w_t) = sbo_candidates(M, P1, P2, bij, w)
    seq = seq_s if w_s <= w_t else seq_t
    if replay(M, P1, seq) != P2:
        raise InfeasibleExchange("route does not end at the target pair")
    ensure_bounds(M, P1, P2, seq, w, max_weight=weight_of(w, P1.union), what="strongly base orderable sequence")
    return seq


def partition_bijection(parts: Iterable[Iterable[int]], P1: BasisPair, P2: BasisPair) -> SboBijections:
    """Match red to blue inside each part, in index order."""
    parts = [sorted(p) for p in parts]
    maps = []
    for P in (P1, P2):
        phi = {}
        for part in parts:
            red = [e for e in part if e in P.red]
            blue = [e for e in part if e in P.blue]
            if len(red) != len(blue):
                raise DomainError(f"part {part} holds {len(red)} red and {len(blue)} blue elements")
            phi.update(zip(red, blue))
        if set(phi) != set(P.red):
            raise DomainError("parts do not cover the red class")
        maps.append(phi)
    return SboBijections(maps[0], maps[1])
