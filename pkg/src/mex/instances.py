"""Concrete matroid families and generators.

Wheel labeling convention (all wheel index arithmetic relies on it): the
center is vertex 0, the rim vertices are ``v_1..v_m`` with ``m = n - 1``,
spoke ``s_i = (0, v_i)`` has id ``i - 1`` and rim edge
``r_i = (v_i, v_{i+1 mod m})`` has id ``m + i - 1``.

Spike labeling: tip ``t`` is id 0, ``x_i`` is ``2i - 1`` and ``y_i`` is ``2i``.
"""

from __future__ import annotations

from itertools import combinations, product
from typing import AbstractSet, Callable, Iterable, Optional, Sequence

from mex.core import MatroidOracle
from mex.errors import DomainError


class UnionFind:
    __slots__ = ("parent",)

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


class GraphMatroid(MatroidOracle):
    """Graphic matroid of a connected multigraph; bases are spanning trees."""

    kind = "graph"

    def __init__(self, n_vertices: int, edges: Sequence[tuple[int, int]], labels: Optional[Sequence[str]] = None):
        edges = tuple((int(u), int(v)) for u, v in edges)
        if labels is None:
            labels = [f"e{i}" for i in range(len(edges))]
        if len(labels) != len(edges):
            raise DomainError("one label per edge required")
        super().__init__(labels, n_vertices - 1)
        self.n_vertices = n_vertices
        self.edges = edges

    def is_independent(self, X: AbstractSet[int]) -> bool:
        if len(X) > self.rank:
            return False
        uf = UnionFind(self.n_vertices)
        edges = self.edges
        for e in X:
            u, v = edges[e]
            if not uf.union(u, v):
                return False
        return True


def graphic_is_independent(G: GraphMatroid, X: AbstractSet[int]) -> bool:
    return G.is_independent(X)


class Wheel(GraphMatroid):
    kind = "wheel"

    def __init__(self, n: int):
        if n < 4:
            raise DomainError(f"a wheel needs at least 4 vertices, got {n}")
        m = n - 1
        edges = [(0, i) for i in range(1, m + 1)] + [(i, i % m + 1) for i in range(1, m + 1)]
        labels = [f"s{i}" for i in range(1, m + 1)] + [f"r{i}" for i in range(1, m + 1)]
        super().__init__(n, edges, labels)
        self.n = n
        self.m = m

    def spoke(self, i: int) -> int:
        """Id of ``s_i``; ``i`` is taken cyclically in ``1..m``."""
        return (i - 1) % self.m

    def rim(self, i: int) -> int:
        return self.m + (i - 1) % self.m

    @property
    def spokes(self) -> range:
        return range(self.m)

    @property
    def rims(self) -> range:
        return range(self.m, 2 * self.m)

    def is_spoke(self, e: int) -> bool:
        return e < self.m

    def spoke_index(self, e: int) -> int:
        return e + 1

    def reflection(self) -> dict[int, int]:
        """Automorphism ``v_i -> v_{m+1-i}``; it reverses every orientation."""
        m = self.m
        mapping = {}
        for i in range(1, m + 1):
            mapping[self.spoke(i)] = self.spoke(m + 1 - i)
            mapping[self.rim(i)] = self.rim(m - i)
        return mapping


class UniformMatroid(MatroidOracle):
    kind = "uniform"

    def __init__(self, size: int, rank: int, labels: Optional[Sequence[str]] = None):
        if not 0 <= rank <= size:
            raise DomainError(f"uniform matroid needs 0 <= rank <= size, got U({rank},{size})")
        super().__init__(labels if labels is not None else [str(i) for i in range(size)], rank)

    def is_independent(self, X: AbstractSet[int]) -> bool:
        return len(X) <= self.rank


class PartitionMatroid(MatroidOracle):
    """Independent iff at most ``capacities[j]`` elements from part ``j``."""

    kind = "partition"

    def __init__(self, parts: Sequence[Iterable[int]], capacities: Optional[Sequence[int]] = None,
                 labels: Optional[Sequence[str]] = None):
        parts = tuple(frozenset(p) for p in parts)
        size = sum(len(p) for p in parts)
        if frozenset().union(*parts) != frozenset(range(size)):
            raise DomainError("parts must partition 0..n-1")
        if capacities is None:
            capacities = [1] * len(parts)
        capacities = tuple(capacities)
        if len(capacities) != len(parts) or any(not 0 <= c <= len(p) for c, p in zip(capacities, parts)):
            raise DomainError("bad partition capacities")
        super().__init__(labels if labels is not None else [str(i) for i in range(size)], sum(capacities))
        self.parts = parts
        self.capacities = capacities
        self._part_of = {e: j for j, p in enumerate(parts) for e in p}

    def is_independent(self, X: AbstractSet[int]) -> bool:
        used = [0] * len(self.parts)
        for e in X:
            j = self._part_of[e]
            used[j] += 1
            if used[j] > self.capacities[j]:
                return False
        return True


class ElementarySplit(MatroidOracle):
    """Independent iff ``|X| <= r`` and ``|X & H_i| <= r_i`` for every hyperedge."""

    kind = "elementary_split"

    def __init__(self, ground_size: int, rank: int, hyperedges: Sequence[Iterable[int]], bounds: Sequence[int],
                 labels: Optional[Sequence[str]] = None):
        hyperedges = tuple(frozenset(h) for h in hyperedges)
        if len(hyperedges) != len(bounds):
            raise DomainError("one bound per hyperedge required")
        super().__init__(labels if labels is not None else [str(i) for i in range(ground_size)], rank)
        self.hyperedges = hyperedges
        self.bounds = tuple(bounds)

    def is_independent(self, X: AbstractSet[int]) -> bool:
        if len(X) > self.rank:
            return False
        return all(len(X & h) <= b for h, b in zip(self.hyperedges, self.bounds))

    def tight(self, F: AbstractSet[int]) -> list[int]:
        """Indices of hyperedges ``H_i`` with ``|F & H_i| = r_i``."""
        F = frozenset(F)
        return [i for i, (h, b) in enumerate(zip(self.hyperedges, self.bounds)) if len(F & h) == b]


def split_is_independent(I: ElementarySplit, X: AbstractSet[int]) -> bool:
    return I.is_independent(frozenset(X))


class SplitDirectSum(MatroidOracle):
    """Direct sum of at most one elementary split matroid and uniform matroids.

    Components are given on disjoint subsets of a shared ground set; the
    elementary component's hyperedges use global ids.
    """

    kind = "split_sum"

    def __init__(self, labels: Sequence[str], elementary: Optional[tuple] = None,
                 uniform: Sequence[tuple[Iterable[int], int]] = ()):
        size = len(labels)
        self.uniform = tuple((frozenset(g), int(k)) for g, k in uniform)
        self.elementary = None
        rank = sum(k for _, k in self.uniform)
        blocks = [g for g, _ in self.uniform]
        if elementary is not None:
            elements, erank, hyperedges, bounds = elementary
            self.elementary = (frozenset(elements), int(erank), tuple(frozenset(h) for h in hyperedges), tuple(bounds))
            rank += erank
            blocks.append(self.elementary[0])
        if sum(len(b) for b in blocks) != size or frozenset().union(*blocks) != frozenset(range(size)):
            raise DomainError("component ground sets must partition the ground set")
        super().__init__(labels, rank)

    def components(self) -> list[tuple[frozenset[int], MatroidOracle]]:
        """``(elements, oracle)`` per component; oracles use global ids."""
        out = []
        if self.elementary is not None:
            elements, erank, hyperedges, bounds = self.elementary
            out.append((elements, _Restricted(self, elements, erank, hyperedges, bounds)))
        for g, k in self.uniform:
            out.append((g, _Restricted(self, g, k)))
        return out

    def is_independent(self, X: AbstractSet[int]) -> bool:
        if self.elementary is not None:
            elements, erank, hyperedges, bounds = self.elementary
            Y = frozenset(X) & elements
            if len(Y) > erank or any(len(Y & h) > b for h, b in zip(hyperedges, bounds)):
                return False
        return all(len(X & g) <= k for g, k in self.uniform)


class _Restricted(MatroidOracle):
    """One direct-sum component on global ids (elements outside are loops)."""

    def __init__(self, parent: MatroidOracle, elements: frozenset[int], rank: int, hyperedges=(), bounds=()):
        super().__init__(parent.labels, rank)
        self.elements_ = elements
        self.hyperedges = tuple(hyperedges)
        self.bounds = tuple(bounds)

    @property
    def ground(self) -> frozenset[int]:
        return self.elements_

    def is_independent(self, X: AbstractSet[int]) -> bool:
        X = frozenset(X)
        if not X <= self.elements_ or len(X) > self.rank:
            return False
        return all(len(X & h) <= b for h, b in zip(self.hyperedges, self.bounds))

    def tight(self, F: AbstractSet[int]) -> list[int]:
        F = frozenset(F)
        return [i for i, (h, b) in enumerate(zip(self.hyperedges, self.bounds)) if len(F & h) == b]


def _odd_x(K: "Spike", Z: frozenset[int]) -> bool:
    return sum(1 for e in Z if e % 2 == 1) % 2 == 1


C3_RULES: dict[str, Callable] = {"binary": _odd_x}


class Spike(MatroidOracle):
    """Rank-``r`` spike with tip ``t`` and legs ``{x_i, y_i}``.

    ``c3`` holds the size-``r`` leg transversals declared circuits, either as
    an explicit collection or via a named rule (``"binary"``: odd number of
    ``x`` elements).
    """

    kind = "spike"

    def __init__(self, r: int, c3: Iterable[Iterable[int]] = (), rule: Optional[str] = None):
        if r < 3:
            raise DomainError(f"spikes need rank >= 3, got {r}")
        if rule is not None and rule not in C3_RULES:
            raise DomainError(f"unknown C3 rule {rule!r}")
        labels = ["t"] + [lab for i in range(1, r + 1) for lab in (f"x{i}", f"y{i}")]
        super().__init__(labels, r)
        self.r = r
        self.tip = 0
        self.c3 = frozenset(frozenset(z) for z in c3)
        self.rule = rule

    def x(self, i: int) -> int:
        return 2 * i - 1

    def y(self, i: int) -> int:
        return 2 * i

    def leg(self, i: int) -> tuple[int, int]:
        return 2 * i - 1, 2 * i

    @staticmethod
    def leg_of(e: int) -> int:
        """Leg index of a non-tip element (0 for the tip)."""
        return (e + 1) // 2

    def is_transversal(self, Z: AbstractSet[int]) -> bool:
        if self.tip in Z or len(Z) != self.r:
            return False
        return len({self.leg_of(e) for e in Z}) == self.r

    def in_c3(self, Z: AbstractSet[int]) -> bool:
        Z = frozenset(Z)
        if not self.is_transversal(Z):
            return False
        if Z in self.c3:
            return True
        return self.rule is not None and C3_RULES[self.rule](self, Z)

    def is_independent(self, X: AbstractSet[int]) -> bool:
        if len(X) > self.r:
            return False
        seen = set()
        full = 0
        for e in X:
            if e == self.tip:
                continue
            leg = (e + 1) >> 1
            if leg in seen:
                full += 1
            else:
                seen.add(leg)
        if full >= 2 or (full == 1 and self.tip in X):
            return False
        return not (len(X) == self.r and full == 0 and self.tip not in X and self.in_c3(X))

    def c3_members(self) -> list[frozenset[int]]:
        out = []
        for choice in product((0, 1), repeat=self.r):
            Z = frozenset(2 * i + 1 + c for i, c in enumerate(choice))
            if self.in_c3(Z):
                out.append(Z)
        return out


def spike_is_independent(K: Spike, X: AbstractSet[int]) -> bool:
    return K.is_independent(frozenset(X))


class DeletionView(MatroidOracle):
    """``M \\ s``: same ids, independence restricted to ``S - s``."""

    def __init__(self, base: MatroidOracle, deleted: int):
        super().__init__(base.labels, base.rank)
        self.base = base
        self.deleted = deleted

    @property
    def kind(self):
        return getattr(self.base, "kind", "matroid")

    @property
    def ground(self) -> frozenset[int]:
        return self.base.ground - {self.deleted}

    def is_independent(self, X: AbstractSet[int]) -> bool:
        return self.deleted not in X and self.base.is_independent(X)


# --- generators -------------------------------------------------------------

def wheel(n: int) -> Wheel:
    return Wheel(n)


def free_spike(r: int) -> Spike:
    return Spike(r)


def binary_spike(r: int) -> Spike:
    return Spike(r, rule="binary")


# K4 on vertices 0..3, labeled so that R1={a,b,c}, B1={d,e,f}, R2={b,d,f},
# B2={a,c,e} are colorings and every sequence between them uses b or e twice.
K4_EDGES = {"a": (0, 1), "b": (0, 2), "c": (2, 3), "d": (0, 3), "e": (1, 3), "f": (1, 2)}


def k4_graph() -> GraphMatroid:
    labels = sorted(K4_EDGES)
    return GraphMatroid(4, [K4_EDGES[lab] for lab in labels], labels)


def k4_as_split() -> ElementarySplit:
    """Graphic matroid of K4 as an elementary split matroid: triangles, bound 2."""
    labels = sorted(K4_EDGES)
    triangles = []
    for tri in combinations(range(4), 3):
        h = frozenset(i for i, lab in enumerate(labels) if set(K4_EDGES[lab]) <= set(tri))
        triangles.append(h)
    return ElementarySplit(6, 3, triangles, [2] * 4, labels)


def uniform(size: int, rank: int) -> UniformMatroid:
    return UniformMatroid(size, rank)


# --- validation -------------------------------------------------------------

def validate_instance(I: MatroidOracle) -> list[str]:
    """Return human-readable invariant violations; empty means valid."""
    if isinstance(I, DeletionView):
        return validate_instance(I.base)
    if isinstance(I, GraphMatroid):
        return _validate_graph(I)
    if isinstance(I, ElementarySplit):
        return _validate_split(I.ground_size, I.rank, I.hyperedges, I.bounds)
    if isinstance(I, SplitDirectSum):
        out = []
        if I.elementary is not None:
            elements, erank, hyperedges, bounds = I.elementary
            out += _validate_split(len(elements), erank, hyperedges, bounds, elements)
        return out
    if isinstance(I, Spike):
        return _validate_spike(I)
    return []


def _validate_graph(G: GraphMatroid) -> list[str]:
    out = []
    for i, (u, v) in enumerate(G.edges):
        if u == v:
            out.append(f"edge {G.label(i)} is a self-loop")
        if not (0 <= u < G.n_vertices and 0 <= v < G.n_vertices):
            out.append(f"edge {G.label(i)} has an endpoint outside 0..{G.n_vertices - 1}")
    if not out:
        uf = UnionFind(G.n_vertices)
        comps = G.n_vertices
        for u, v in G.edges:
            comps -= uf.union(u, v)
        if comps != 1:
            out.append("graph is not connected")
    return out


def _validate_split(size, r, hyperedges, bounds, elements=None) -> list[str]:
    out = []
    if size < r:
        out.append(f"ground set of size {size} is smaller than the rank {r}")
    if elements is None:
        elements = frozenset(range(size))
    for i, (h, b) in enumerate(zip(hyperedges, bounds)):
        if not h <= elements:
            out.append(f"hyperedge {i} leaves the ground set")
        if b < 0:
            out.append(f"hyperedge {i} has a negative bound")
        if len(elements - h) + b < r:
            out.append(f"hyperedge {i}: |S - H| + r_i = {len(elements - h) + b} < r = {r}")
    for i, j in combinations(range(len(hyperedges)), 2):
        inter = len(hyperedges[i] & hyperedges[j])
        if inter > bounds[i] + bounds[j] - r:
            out.append(f"hyperedges {i},{j}: |H_i & H_j| = {inter} > r_i + r_j - r = {bounds[i] + bounds[j] - r}")
    return out


def spike_circuits(K: Spike) -> list[frozenset[int]]:
    """All circuits C1 u C2 u C3 u C4 (exhaustive; small ranks only)."""
    r = K.r
    small = [frozenset({K.tip, *K.leg(i)}) for i in range(1, r + 1)]
    small += [frozenset({*K.leg(i), *K.leg(j)}) for i, j in combinations(range(1, r + 1), 2)]
    small += K.c3_members()
    big = []
    for C in combinations(range(2 * r + 1), r + 1):
        C = frozenset(C)
        if not any(s <= C for s in small):
            big.append(C)
    return small + big


def _validate_spike(K: Spike) -> list[str]:
    out = []
    for Z in K.c3:
        if not K.is_transversal(Z):
            out.append(f"C3 member {K.names(Z)} is not a leg transversal avoiding the tip")
    if out or K.r > 5:
        return out
    circuits = spike_circuits(K)
    small = [C for C in circuits if len(C) <= K.r]

    def dependent(X: frozenset[int]) -> bool:
        return len(X) > K.r or any(C <= X for C in small)

    for C, D in combinations(circuits, 2):
        if C < D or D < C:
            out.append(f"circuit {K.names(C)} is contained in {K.names(D)}")
            continue
        U = C | D
        for e in C & D:
            if not dependent(U - {e}):
                out.append(f"circuit elimination fails for {K.names(C)}, {K.names(D)} at {K.label(e)}")
                break
        if len(out) > 20:
            break
    return out
