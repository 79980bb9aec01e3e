"""Exhaustive ground truth at desk scale.

Pairs of disjoint bases with a fixed union form the nodes of a pair graph
whose arcs are feasible exchanges.  Distances are computed by BFS and
Dijkstra over that graph, expanded lazily.  ``math.inf`` stands for "no
sequence exists".
"""

from __future__ import annotations

import heapq
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Sequence

from mex.core import (
    BasisPair,
    Exchange,
    MatroidOracle,
    Weights,
    check_compatible,
    format_fraction,
    is_feasible_exchange,
    weight_of,
)
from mex.errors import DomainError, NotFound, TooLarge

MAX_GROUND = 16
MAX_RANK = 8


def _guard(M: MatroidOracle, size: int, max_ground: Optional[int], max_rank: Optional[int]) -> None:
    max_ground = MAX_GROUND if max_ground is None else max_ground
    max_rank = MAX_RANK if max_rank is None else max_rank
    if size > max_ground or M.rank > max_rank:
        raise TooLarge(f"{size} elements of rank {M.rank} exceed the limits ({max_ground}, {max_rank})")


def enumerate_bases(M: MatroidOracle, *, max_ground: Optional[int] = None,
                    max_rank: Optional[int] = None) -> list[frozenset[int]]:
    _guard(M, len(M.ground), max_ground, max_rank)
    return [B for B in map(frozenset, combinations(sorted(M.ground), M.rank)) if M.is_basis(B)]


def enumerate_compatible_pairs(M: MatroidOracle, union: Optional[Iterable[int]] = None, *,
                               max_ground: Optional[int] = None,
                               max_rank: Optional[int] = None) -> list[BasisPair]:
    """All ordered pairs ``(R, union - R)`` of disjoint bases."""
    union = M.ground if union is None else frozenset(union)
    _guard(M, len(union), max_ground, max_rank)
    if len(union) != 2 * M.rank:
        return []
    out = []
    for R in map(frozenset, combinations(sorted(union), M.rank)):
        if M.is_basis(R) and M.is_basis(union - R):
            out.append(BasisPair(R, union - R))
    return out


def pair_unions(M: MatroidOracle, *, max_ground: Optional[int] = None,
                max_rank: Optional[int] = None) -> list[frozenset[int]]:
    """Every ``2r``-subset of the ground set that splits into two bases."""
    _guard(M, len(M.ground), max_ground, max_rank)
    out = []
    for U in map(frozenset, combinations(sorted(M.ground), 2 * M.rank)):
        if enumerate_compatible_pairs(M, U, max_ground=len(U), max_rank=M.rank)[:1]:
            out.append(U)
    return out


def feasible_exchanges(M: MatroidOracle, P: BasisPair) -> set[Exchange]:
    return {Exchange(e, f) for e in P.red for f in P.blue if is_feasible_exchange(M, P, e, f)}


class PairGraph:
    """Lazily expanded graph of pairs; arcs are feasible exchanges."""

    def __init__(self, M: MatroidOracle):
        self.M = M
        self._neighbors: dict[BasisPair, list[tuple[Exchange, BasisPair]]] = {}

    def neighbors(self, P: BasisPair) -> list[tuple[Exchange, BasisPair]]:
        try:
            return self._neighbors[P]
        except KeyError:
            pass
        out = []
        for e in sorted(P.red):
            for f in sorted(P.blue):
                if is_feasible_exchange(self.M, P, e, f):
                    out.append((Exchange(e, f), BasisPair((P.red - {e}) | {f}, (P.blue - {f}) | {e})))
        self._neighbors[P] = out
        return out

    def __len__(self) -> int:
        return len(self._neighbors)

    def bfs(self, source: BasisPair, target: Optional[BasisPair] = None,
            max_depth: Optional[int] = None) -> dict[BasisPair, int]:
        """Hop distances from ``source``, stopping early at ``target`` or ``max_depth``."""
        dist = {source: 0}
        queue = deque([source])
        while queue:
            P = queue.popleft()
            if P == target:
                break
            d = dist[P]
            if max_depth is not None and d >= max_depth:
                continue
            for _, Q in self.neighbors(P):
                if Q not in dist:
                    dist[Q] = d + 1
                    queue.append(Q)
        return dist

    def dijkstra(self, source: BasisPair, w: Optional[Weights] = None,
                 target: Optional[BasisPair] = None) -> dict[BasisPair, Fraction]:
        """Least total weight ``w(e) + w(f)`` summed over steps (2 per step when unweighted)."""
        dist = {source: Fraction(0)}
        done = set()
        heap = [(Fraction(0), 0, source)]
        tick = 1
        while heap:
            d, _, P = heapq.heappop(heap)
            if P in done:
                continue
            done.add(P)
            if P == target:
                break
            for (e, f), Q in self.neighbors(P):
                nd = d + (2 if w is None else w[e] + w[f])
                if Q not in dist or nd < dist[Q]:
                    dist[Q] = nd
                    heapq.heappush(heap, (nd, tick, Q))
                    tick += 1
        return {P: dist[P] for P in done}


def _checked_graph(M, P1, P2, graph, max_ground, max_rank) -> PairGraph:
    check_compatible(P1, P2)
    _guard(M, len(P1.union), max_ground, max_rank)
    return graph if graph is not None else PairGraph(M)


def exchange_distance(M: MatroidOracle, P1: BasisPair, P2: BasisPair, *, graph: Optional[PairGraph] = None,
                      max_ground: Optional[int] = None, max_rank: Optional[int] = None):
    """Minimum number of exchanges, or ``math.inf``."""
    graph = _checked_graph(M, P1, P2, graph, max_ground, max_rank)
    return graph.bfs(P1, P2).get(P2, math.inf)


def weighted_exchange_distance(M: MatroidOracle, P1: BasisPair, P2: BasisPair, w: Optional[Weights] = None, *,
                               graph: Optional[PairGraph] = None, max_ground: Optional[int] = None,
                               max_rank: Optional[int] = None):
    """Minimum total weight, or ``math.inf``."""
    graph = _checked_graph(M, P1, P2, graph, max_ground, max_rank)
    return graph.dijkstra(P1, w, P2).get(P2, math.inf)


def exists_monotone_sequence(M: MatroidOracle, P1: BasisPair, P2: BasisPair, *,
                             max_ground: Optional[int] = None, max_rank: Optional[int] = None) -> bool:
    """Search over exchanges drawn from ``(R1 & B2) x (B1 & R2)`` without reuse."""
    check_compatible(P1, P2)
    _guard(M, len(P1.union), max_ground, max_rank)
    dead: set[frozenset] = set()

    def search(red: frozenset, blue: frozenset) -> bool:
        if red == P2.red:
            return True
        if red in dead:
            return False
        P = BasisPair(red, blue)
        for e in sorted(red & P2.blue):
            for f in sorted(blue & P2.red):
                if is_feasible_exchange(M, P, e, f) and search((red - {e}) | {f}, (blue - {f}) | {e}):
                    return True
        dead.add(red)
        return False

    return search(P1.red, P1.blue)


# --- sweeps -----------------------------------------------------------------

@dataclass
class SweepReport:
    pairs: int = 0
    checks: int = 0
    max_distance: float = 0
    max_distance_ratio: Fraction = Fraction(0)
    max_weight_ratio: Fraction = Fraction(0)
    violations: list = field(default_factory=list)

    def summary(self) -> dict:
        return {
            "pairs": self.pairs,
            "checks": self.checks,
            "max_distance": self.max_distance,
            "max_distance_ratio": format_fraction(self.max_distance_ratio),
            "max_weight_ratio": format_fraction(self.max_weight_ratio),
            "violations": len(self.violations),
        }


def conjecture_sweep(M: MatroidOracle, w_samples: Sequence[Optional[Weights]] = (None,), *,
                     unions: Optional[Iterable[Iterable[int]]] = None, max_ground: Optional[int] = None,
                     max_rank: Optional[int] = None) -> SweepReport:
    """Check distance <= r and weighted distance <= w(union) for every compatible pair.

    ``unions`` defaults to every ``2r``-subset that splits into two bases.
    """
    if unions is None:
        unions = pair_unions(M, max_ground=max_ground, max_rank=max_rank)
    report = SweepReport()
    r = M.rank
    for U in unions:
        U = frozenset(U)
        pairs = enumerate_compatible_pairs(M, U, max_ground=max_ground, max_rank=max_rank)
        report.pairs += len(pairs)
        graph = PairGraph(M)
        for P1 in pairs:
            hops = graph.bfs(P1)
            for P2 in pairs:
                d = hops.get(P2, math.inf)
                report.checks += 1
                if d > r:
                    report.violations.append(("distance", P1, P2, d))
                    continue
                report.max_distance = max(report.max_distance, d)
                report.max_distance_ratio = max(report.max_distance_ratio, Fraction(d, r))
            for w in w_samples:
                total = weight_of(w, U)
                costs = graph.dijkstra(P1, w)
                for P2 in pairs:
                    c = costs.get(P2, math.inf)
                    report.checks += 1
                    if c > total:
                        report.violations.append(("weight", P1, P2, c))
                    elif total > 0:
                        report.max_weight_ratio = max(report.max_weight_ratio, c / total)
    return report


# --- extremal searches ------------------------------------------------------

@dataclass(frozen=True)
class GapWitness:
    P1: BasisPair
    P2: BasisPair
    lower_bound: int
    distance: int
    required: int


def gap_search(W, *, max_n: int = 13) -> GapWitness:
    """Opposite-orientation wheel pair with lower bound 2 and distance >= ceil((n-1)/4).

    Candidates start from four-interval colorings, most balanced first, and
    move to every opposite-orientation coloring differing in two red edges.
    """
    from mex.wheel import Orientation, all_colorings, decompose

    if W.n > max_n:
        raise TooLarge(f"gap search is limited to wheels with at most {max_n} vertices")
    m = W.m
    required = -(-m // 4)
    limits = dict(max_ground=2 * m, max_rank=m)
    colorings = all_colorings(W)
    by_red = {P.red: P for P in colorings}
    starts = []
    for P in colorings:
        D = decompose(W, P)
        if D.orientation is Orientation.POSITIVE and len(D.intervals) == 4:
            starts.append((max(map(len, D.intervals)) - min(map(len, D.intervals)), sorted(P.red), P))
    starts.sort(key=lambda item: item[:2])
    graph = PairGraph(W)
    for _, _, P1 in starts:
        near = graph.bfs(P1, max_depth=required - 1)
        for out in combinations(sorted(P1.red), 2):
            for into in combinations(sorted(P1.blue), 2):
                P2 = by_red.get((P1.red - set(out)) | set(into))
                if P2 is None or P2 in near or decompose(W, P2).orientation is Orientation.POSITIVE:
                    continue
                d = exchange_distance(W, P1, P2, graph=graph, **limits)
                return GapWitness(P1, P2, m - len(P1.red & P2.red), d, required)
    raise NotFound(f"no pair with distance at least {required} on wheel({W.n})")


@dataclass(frozen=True)
class TwoWeightWitness:
    P1: BasisPair
    P2: BasisPair
    elements: tuple[int, int]


def _reachable_with_caps(M: MatroidOracle, P1: BasisPair, P2: BasisPair, capped: tuple[int, ...],
                         graph: PairGraph) -> bool:
    """Can ``P2`` be reached while using each ``capped`` element at most once?"""
    start = (P1, (0,) * len(capped))
    seen = {start}
    queue = deque([start])
    while queue:
        P, used = queue.popleft()
        if P == P2:
            return True
        for (e, f), Q in graph.neighbors(P):
            nxt = tuple(u + (c in (e, f)) for u, c in zip(used, capped))
            if max(nxt, default=0) > 1:
                continue
            if (Q, nxt) not in seen:
                seen.add((Q, nxt))
                queue.append((Q, nxt))
    return False


def two_weight_counterexample(M: MatroidOracle, *, pairs: Optional[Sequence[BasisPair]] = None,
                              max_ground: Optional[int] = None,
                              max_rank: Optional[int] = None) -> TwoWeightWitness:
    """A reachable pair and two elements such that every sequence uses one of them twice."""
    if pairs is None:
        pairs = [P for U in pair_unions(M, max_ground=max_ground, max_rank=max_rank)
                 for P in enumerate_compatible_pairs(M, U, max_ground=max_ground, max_rank=max_rank)]
    graph = PairGraph(M)
    for P1 in pairs:
        reach = graph.bfs(P1)
        for P2 in pairs:
            if P2 == P1 or P2 not in reach:
                continue
            for b, e in combinations(sorted(P1.union), 2):
                if not _reachable_with_caps(M, P1, P2, (b, e), graph):
                    return TwoWeightWitness(P1, P2, (b, e))
    raise NotFound("every reachable pair admits a sequence using each element pair at most once")


def every_sequence_reuses(M: MatroidOracle, P1: BasisPair, P2: BasisPair, elements: Sequence[int]) -> bool:
    """True when ``P2`` is reachable but not while using each listed element at most once."""
    graph = PairGraph(M)
    if P2 not in graph.bfs(P1, P2):
        return False
    return not _reachable_with_caps(M, P1, P2, tuple(elements), graph)


def distinguished_binary_pairs(K) -> list[BasisPair]:
    """Pairs on the spike minus ``x1``: ``y1`` red, ``t`` blue, an even number of red ``x`` elsewhere."""
    r = K.rank
    if r < 3:
        raise DomainError("spike rank must be at least 3")
    out = []
    for choice in range(2 ** (r - 1)):
        picks = [(choice >> (i - 2)) & 1 for i in range(2, r + 1)]
        if sum(picks) % 2:
            continue
        red = {K.y(1)} | {K.x(i) if p else K.y(i) for i, p in zip(range(2, r + 1), picks)}
        blue = {K.tip} | {K.y(i) if p else K.x(i) for i, p in zip(range(2, r + 1), picks)}
        out.append(BasisPair(frozenset(red), frozenset(blue)))
    return out
