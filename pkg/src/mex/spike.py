"""Exchange sequences for compatible pairs of a spike missing one element.

The constructions work in a canonical frame: legs are permuted and flipped,
colors swapped and the two pairs possibly exchanged, so that the doubled and
empty legs sit in fixed positions.  A :class:`SpikeRelabeling` records that
frame and maps the resulting sequence back to the caller's elements.
Because a leg flip need not be an automorphism of the spike (the binary rule
counts ``x`` elements), feasibility questions are always asked through a
relabeled view of the original oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import AbstractSet, Mapping, Optional

from mex.core import (
    BasisPair,
    ExchangeSequence,
    MatroidOracle,
    PairState,
    Weights,
    check_compatible,
    check_pair,
    ensure_bounds,
    reverse_sequence,
    swap_colors_sequence,
    weight_of,
)
from mex.errors import DomainError, InternalBoundViolation, NotABasis
from mex.instances import Spike

TIP = 0


def _x(i: int) -> int:
    return 2 * i - 1


def _y(i: int) -> int:
    return 2 * i


def _leg(e: int) -> int:
    return (e + 1) // 2


# --- relabelings ------------------------------------------------------------

@dataclass(frozen=True)
class SpikeRelabeling:
    """Map from a canonical frame to the caller's spike.

    ``legs[i - 1]`` is the actual leg playing canonical leg ``i``; when
    ``flips[i - 1]`` is set, canonical ``x_i`` is the actual ``y`` element of
    that leg.  ``swap_colors`` exchanges red and blue in both pairs and
    ``swap_roles`` exchanges the two pairs.
    """

    legs: tuple[int, ...]
    flips: tuple[bool, ...]
    swap_colors: bool = False
    swap_roles: bool = False

    def __post_init__(self):
        r = len(self.legs)
        if sorted(self.legs) != list(range(1, r + 1)) or len(self.flips) != r:
            raise DomainError(f"not a leg permutation: {self.legs}")

    @classmethod
    def identity(cls, r: int) -> "SpikeRelabeling":
        return cls(tuple(range(1, r + 1)), (False,) * r)

    @classmethod
    def placing(cls, r: int, placed: Mapping[int, int], flips: Mapping[int, bool] = {}) -> "SpikeRelabeling":
        """Send the given canonical legs to chosen legs; the rest keep their order."""
        legs = [0] * r
        for canon, actual in placed.items():
            legs[canon - 1] = actual
        rest = iter(sorted(set(range(1, r + 1)) - set(placed.values())))
        legs = [leg or next(rest) for leg in legs]
        return cls(tuple(legs), tuple(bool(flips.get(i, False)) for i in range(1, r + 1)))

    @property
    def r(self) -> int:
        return len(self.legs)

    def element_map(self) -> dict[int, int]:
        """Canonical id -> actual id."""
        out = {TIP: TIP}
        for i, (leg, flip) in enumerate(zip(self.legs, self.flips), start=1):
            x, y = _x(leg), _y(leg)
            if flip:
                x, y = y, x
            out[_x(i)] = x
            out[_y(i)] = y
        return out

    def inverse_map(self) -> dict[int, int]:
        return {a: c for c, a in self.element_map().items()}

    def then(self, other: "SpikeRelabeling") -> "SpikeRelabeling":
        """Compose: ``other`` maps a finer frame into this one."""
        legs = tuple(self.legs[j - 1] for j in other.legs)
        flips = tuple(f ^ self.flips[j - 1] for j, f in zip(other.legs, other.flips))
        return SpikeRelabeling(legs, flips, self.swap_colors ^ other.swap_colors,
                               self.swap_roles ^ other.swap_roles)

    def inverse(self) -> "SpikeRelabeling":
        legs = [0] * self.r
        flips = [False] * self.r
        for i, (leg, flip) in enumerate(zip(self.legs, self.flips), start=1):
            legs[leg - 1] = i
            flips[leg - 1] = flip
        return SpikeRelabeling(tuple(legs), tuple(flips), self.swap_colors, self.swap_roles)

    def apply_pairs(self, P1: BasisPair, P2: BasisPair) -> tuple[BasisPair, BasisPair]:
        inv = self.inverse_map()
        Q1, Q2 = P1.relabeled(inv), P2.relabeled(inv)
        if self.swap_colors:
            Q1, Q2 = Q1.swapped(), Q2.swapped()
        if self.swap_roles:
            Q1, Q2 = Q2, Q1
        return Q1, Q2

    def apply_sequence(self, seq: ExchangeSequence) -> ExchangeSequence:
        """Actual sequence for ``P1 -> P2`` to the canonical one."""
        seq = seq.relabeled(self.inverse_map())
        if self.swap_colors:
            seq = swap_colors_sequence(seq)
        if self.swap_roles:
            seq = reverse_sequence(seq)
        return seq

    def restore_sequence(self, seq: ExchangeSequence) -> ExchangeSequence:
        """Canonical sequence back to the caller's elements and pair order."""
        if self.swap_roles:
            seq = reverse_sequence(seq)
        if self.swap_colors:
            seq = swap_colors_sequence(seq)
        return seq.relabeled(self.element_map())

    def apply_weights(self, w: Optional[Weights]) -> Optional[dict]:
        if w is None:
            return None
        return {c: w[a] for c, a in self.element_map().items() if a in w}

    def apply_instance(self, K: MatroidOracle) -> "RelabeledSpike":
        return RelabeledSpike(K, self.element_map())


class RelabeledSpike(MatroidOracle):
    """The spike seen through a canonical-to-actual element map."""

    kind = "spike"

    def __init__(self, base: MatroidOracle, mapping: Mapping[int, int]):
        super().__init__([base.label(mapping[c]) for c in range(base.ground_size)], base.rank)
        self.base = base
        self.mapping = dict(mapping)

    def is_independent(self, X: AbstractSet[int]) -> bool:
        return self.base.is_independent(frozenset(self.mapping[e] for e in X))


# --- basis classes ----------------------------------------------------------

@dataclass(frozen=True)
class BasisClass:
    """``kind`` with witnesses: ``doubled`` is a leg fully inside, ``empty`` a leg missed."""

    kind: str
    doubled: Optional[int] = None
    empty: Optional[int] = None

    def __str__(self):
        if self.kind == "NonTransversal":
            return f"NonTransversal(k={self.doubled}, l={self.empty})"
        if self.kind == "Type1":
            return f"Type1(l={self.empty})"
        if self.kind == "Type4":
            return f"Type4(l={self.doubled})"
        return self.kind


def _leg_counts(r: int, Z) -> dict[int, int]:
    counts = {i: 0 for i in range(1, r + 1)}
    for e in Z:
        if e != TIP:
            counts[_leg(e)] += 1
    return counts


def _find(counts: dict[int, int], value: int) -> Optional[int]:
    return next((i for i, c in counts.items() if c == value), None)


def classify_basis(K: Spike, missing: int, Z: AbstractSet[int]) -> BasisClass:
    """Class of a basis ``Z`` of the spike with ``missing`` deleted.

    Leg-element classes are named relative to the missing element's partner
    (``y_1`` when ``x_1`` is missing).
    """
    Z = frozenset(Z)
    if missing in Z or not K.is_basis(Z):
        raise NotABasis(f"{K.names(Z)} is not a basis of the spike without {K.label(missing)}")
    r = K.rank
    counts = _leg_counts(r, Z)
    if missing == TIP:
        if all(c == 1 for c in counts.values()):
            return BasisClass("Transversal")
        return BasisClass("NonTransversal", doubled=_find(counts, 2), empty=_find(counts, 0))
    partner = missing + 1 if missing % 2 else missing - 1
    j = _leg(missing)
    counts.pop(j)
    has_tip, has_partner = TIP in Z, partner in Z
    if has_tip and has_partner:
        return BasisClass("Type1", empty=_find(counts, 0))
    if has_tip:
        return BasisClass("Type2")
    if has_partner:
        return BasisClass("Type3")
    return BasisClass("Type4", doubled=_find(counts, 2))


# --- canonical frame --------------------------------------------------------

class _Frame:
    """Pairs, weights and oracle expressed in a relabeled frame."""

    def __init__(self, K: Spike, P1: BasisPair, P2: BasisPair, w: Optional[Weights], rho: SpikeRelabeling,
                 trace: Optional[list] = None):
        self.K, self.P1, self.P2, self.w_actual, self.rho = K, P1, P2, w, rho
        self.trace = [] if trace is None else trace
        self.r = K.rank
        self.M = rho.apply_instance(K)
        self.Q1, self.Q2 = rho.apply_pairs(P1, P2)
        self.w = rho.apply_weights(w)

    def refine(self, sigma: SpikeRelabeling) -> "_Frame":
        return _Frame(self.K, self.P1, self.P2, self.w_actual, self.rho.then(sigma), self.trace)

    def place(self, placed: Mapping[int, int], flips: Mapping[int, bool] = {}) -> "_Frame":
        return self.refine(SpikeRelabeling.placing(self.r, placed, flips))

    def swapped_colors(self) -> "_Frame":
        return self.refine(SpikeRelabeling(tuple(range(1, self.r + 1)), (False,) * self.r, swap_colors=True))

    def swapped_roles(self) -> "_Frame":
        return self.refine(SpikeRelabeling(tuple(range(1, self.r + 1)), (False,) * self.r, swap_roles=True))

    def weight(self, e: int) -> Fraction:
        return Fraction(1) if self.w is None else self.w[e]

    def state(self) -> PairState:
        return PairState(self.M, self.Q1)

    def note(self, case: str) -> None:
        self.trace.append(case)

    def finish(self, state: PairState) -> ExchangeSequence:
        return self.rho.restore_sequence(state.sequence())


def _red_in(P: BasisPair, leg: int) -> int:
    """The red element of a leg split between the colors."""
    x, y = _x(leg), _y(leg)
    return x if x in P.red else y


def _sync_legs(state: PairState, Q2: BasisPair, legs) -> None:
    """Flip every listed split leg whose ``x`` disagrees with ``Q2``."""
    for i in legs:
        x = _x(i)
        if state.is_red(x) != (x in Q2.red) and state.is_red(x) != state.is_red(_y(i)):
            state.swap(x, _y(i))


def _differing_legs(P: BasisPair, Q: BasisPair, legs) -> list[int]:
    return [i for i in legs if (_x(i) in P.red) != (_x(i) in Q.red)]


# --- missing tip ------------------------------------------------------------

def _tip_shape(r: int, red) -> tuple[Optional[int], Optional[int]]:
    counts = _leg_counts(r, red)
    return _find(counts, 2), _find(counts, 0)


def _tip_case1(F: _Frame, depth: int = 0) -> ExchangeSequence:
    r = F.r
    k1, l1 = _tip_shape(r, F.Q1.red)
    F = F.place({1: k1, r: l1})
    k, l = _tip_shape(r, F.Q2.red)
    middle = range(2, r)
    if k == 1:
        F.note("tip-1.1")
        state = F.state()
        _sync_legs(state, F.Q2, [i for i in middle if i != l])
        if l != r:
            state.swap(_red_in(F.Q1, l), _red_in(F.Q2, r))
        return F.finish(state)
    if 2 <= k <= r - 1:
        F = F.refine(SpikeRelabeling.placing(r, {}, {
            1: _x(1) in F.Q2.red,
            r: _x(r) in F.Q2.red,
            k: _x(k) not in F.Q1.red,
        }))
        F.note("tip-1.2")
        state = F.state()
        state.swap(_x(1), _y(k))
        _sync_legs(state, F.Q2, [i for i in middle if i not in (k, l)])
        if l != r:
            a = next(e for e in (_x(l), _y(l)) if state.is_red(e))
            state.swap(a, _y(r))
        return F.finish(state)
    if l != 1:
        F.note("tip-1.3")
        state = F.state()
        state.swap(_red_in(F.Q1, l), _x(r))
        _sync_legs(state, F.Q2, [i for i in middle if i != l])
        b = _x(1) if _x(1) in F.Q2.blue else _y(1)
        state.swap(b, _y(r))
        return F.finish(state)
    return _tip_case14(F, depth)


def _tip_case14(F: _Frame, depth: int) -> ExchangeSequence:
    r = F.r
    middle = range(2, r)
    diff = _differing_legs(F.Q1, F.Q2, middle)
    if diff:
        j = diff[0]
        F = F.refine(SpikeRelabeling.placing(r, {}, {j: _x(j) not in F.Q1.red}))
        F.note("tip-1.4")
        state = F.state()
        state.swap(_x(1), _y(j))
        _sync_legs(state, F.Q2, [i for i in middle if i != j])
        state.swap(_y(1), _x(r))
        state.swap(_x(j), _y(r))
        return F.finish(state)
    red, blue = _red_in(F.Q1, 2), _x(2) + _y(2) - _red_in(F.Q1, 2)
    if F.weight(blue) <= F.weight(red):
        F = F.refine(SpikeRelabeling.placing(r, {}, {2: _x(2) != red}))
        F.note("tip-1.4-reuse")
        state = F.state()
        state.swap(_x(1), _y(2))
        state.swap(_y(1), _x(r))
        state.swap(_y(2), _y(r))
        return F.finish(state)
    if depth:
        raise InternalBoundViolation("leg-2 weight comparison did not settle after a color swap")
    # the cheaper leg-2 element becomes blue once colors are swapped
    return _tip_case1(F.swapped_colors(), depth + 1)


def _tip_case2(F: _Frame) -> ExchangeSequence:
    r = F.r
    diff = _differing_legs(F.Q1, F.Q2, range(1, r + 1))
    if len(diff) == 1:
        F.note("tip-2-single")
        state = F.state()
        state.swap(_x(diff[0]), _y(diff[0]))
        return F.finish(state)
    F = F.place({1: diff[0], 2: diff[1]})
    F = F.refine(SpikeRelabeling.placing(r, {}, {1: _x(1) not in F.Q1.red, 2: _x(2) not in F.Q1.red}))
    F.note("tip-2")
    state = F.state()
    state.swap(_x(1), _y(2))
    _sync_legs(state, F.Q2, range(3, r + 1))
    state.swap(_x(2), _y(1))
    return F.finish(state)


def _tip_case3(F: _Frame) -> ExchangeSequence:
    r = F.r
    k1, l1 = _tip_shape(r, F.Q1.red)
    F = F.place({1: k1, r: l1})
    F.note("tip-3")
    state = F.state()
    _sync_legs(state, F.Q2, range(2, r))
    a = _x(1) if _x(1) in F.Q2.blue else _y(1)
    state.swap(a, _red_in(F.Q2, r))
    return F.finish(state)


def _check_spike_pairs(K: Spike, P1: BasisPair, P2: BasisPair) -> int:
    """Validate the pairs and return the missing element."""
    if not isinstance(K, Spike):
        raise DomainError("expected a spike instance")
    check_pair(K, P1)
    check_pair(K, P2)
    check_compatible(P1, P2)
    missing = K.ground - P1.union
    if len(missing) != 1:
        raise DomainError(f"pairs must miss exactly one element, they miss {len(missing)}")
    return next(iter(missing))


def _verified(K, P1, P2, seq, w, what) -> ExchangeSequence:
    ensure_bounds(K, P1, P2, seq, w, max_length=K.rank, max_weight=weight_of(w, P1.union), what=what)
    return seq


def _missing_tip(K: Spike, P1: BasisPair, P2: BasisPair, w: Optional[Weights],
                 trace: Optional[list] = None) -> ExchangeSequence:
    if P1 == P2:
        return ExchangeSequence()
    F = _Frame(K, P1, P2, w, SpikeRelabeling.identity(K.rank), trace)
    t1 = K.is_transversal(P1.red)
    t2 = K.is_transversal(P2.red)
    if not t1 and not t2:
        return _tip_case1(F)
    if t1 and t2:
        return _tip_case2(F)
    return _tip_case3(F.swapped_roles() if t1 else F)


def solve_missing_tip(K: Spike, P1: BasisPair, P2: BasisPair, w: Optional[Weights] = None) -> ExchangeSequence:
    """Length <= r, weight <= w(S - t), every element used at most twice."""
    if _check_spike_pairs(K, P1, P2) != TIP:
        raise DomainError("pairs do not miss the tip")
    return _verified(K, P1, P2, _missing_tip(K, P1, P2, w), w, "spike sequence (missing tip)")


# --- missing leg element ----------------------------------------------------

def _leg_case1(F: _Frame) -> ExchangeSequence:
    r = F.r
    t, y1 = TIP, _y(1)
    if (t in F.Q1.red) != (y1 in F.Q1.red):
        F = F.swapped_roles()
    if t in F.Q1.blue:
        F = F.swapped_colors()
    l1 = _find(_leg_counts(r, F.Q1.red), 0)
    F = F.place({r: l1})
    Q2 = F.Q2
    reds = (t in Q2.red) + (y1 in Q2.red)
    split_middle = [i for i in range(2, r) if (_x(i) in Q2.red) != (_y(i) in Q2.red)]

    if reds == 2:
        F.note("leg-1.1")
        state = F.state()
        _sync_legs(state, Q2, split_middle)
        l = _find(_leg_counts(r, Q2.red), 0)
        if l != r:
            state.swap(_red_in(F.Q1, l), _red_in(Q2, r))
        return F.finish(state)
    if reds == 1:
        F.note("leg-1.2")
        state = F.state()
        _sync_legs(state, Q2, split_middle)
        state.swap(t if t in Q2.blue else y1, _red_in(Q2, r))
        return F.finish(state)

    l = _find(_leg_counts(r, Q2.red), 2)
    if l == r:
        F.note("leg-1.3-last")
        state = F.state()
        _sync_legs(state, Q2, split_middle)
        for first, second in ((_x(r), _y(r)), (_y(r), _x(r))):
            trial = PairState(F.M, state.pair)
            if trial.can_swap(y1, first):
                trial.swap(y1, first)
                if trial.can_swap(t, second):
                    state.swap(y1, first)
                    state.swap(t, second)
                    return F.finish(state)
        raise InternalBoundViolation("neither completion through the last leg is feasible")

    F = F.refine(SpikeRelabeling.placing(r, {}, {l: _x(l) not in F.Q1.red, r: _x(r) not in F.Q2.red}))
    state = F.state()
    _sync_legs(state, F.Q2, split_middle)
    xl, yl, xr, yr = _x(l), _y(l), _x(r), _y(r)
    if state.can_swap(y1, xr):
        F.note("leg-1.3-direct")
        state.swap(y1, xr)
        state.swap(t, yl)
    elif F.weight(xl) >= F.weight(yr):
        F.note("leg-1.3-reuse")
        state.swap(y1, yr)
        state.swap(yl, t)
        state.swap(xr, yr)
    else:
        F.note("leg-1.3-reuse")
        state.swap(xl, xr)
        state.swap(y1, yl)
        state.swap(xl, t)
    return F.finish(state)


def _leg_case2(F: _Frame) -> ExchangeSequence:
    r = F.r
    t, y1 = TIP, _y(1)
    if y1 in F.Q1.blue:
        F = F.swapped_colors()
    diff = _differing_legs(F.Q1, F.Q2, range(2, r + 1))
    if not diff:
        F.note("leg-2-single")
        state = F.state()
        state.swap(y1, t)
        return F.finish(state)
    F = F.place({2: diff[0]})
    F = F.refine(SpikeRelabeling.placing(r, {}, {2: _x(2) not in F.Q1.blue}))
    state = F.state()
    rest = range(3, r + 1)
    if y1 in F.Q2.blue:
        F.note("leg-2.1")
        state.swap(_x(2), y1)
        _sync_legs(state, F.Q2, rest)
        state.swap(_y(2), t)
    elif F.weight(y1) <= F.weight(t):
        F.note("leg-2.2")
        state.swap(y1, _x(2))
        _sync_legs(state, F.Q2, rest)
        state.swap(y1, _y(2))
    else:
        F.note("leg-2.2")
        state.swap(t, _y(2))
        _sync_legs(state, F.Q2, rest)
        state.swap(t, _x(2))
    return F.finish(state)


def _missing_leg_element(K: Spike, P1: BasisPair, P2: BasisPair, w: Optional[Weights],
                         missing: int, trace: Optional[list] = None) -> ExchangeSequence:
    if P1 == P2:
        return ExchangeSequence()
    j = _leg(missing)
    F = _Frame(K, P1, P2, w, SpikeRelabeling.placing(K.rank, {1: j}, {1: missing == _y(j)}), trace)
    t, y1 = TIP, _y(1)
    if any((t in Q.red) == (y1 in Q.red) for Q in (F.Q1, F.Q2)):
        return _leg_case1(F)
    return _leg_case2(F)


def solve_missing_leg_element(K: Spike, P1: BasisPair, P2: BasisPair,
                              w: Optional[Weights] = None) -> ExchangeSequence:
    """Length <= r, weight <= w(S - s) for a missing leg element ``s``."""
    missing = _check_spike_pairs(K, P1, P2)
    if missing == TIP:
        raise DomainError("pairs miss the tip, not a leg element")
    seq = _missing_leg_element(K, P1, P2, w, missing)
    return _verified(K, P1, P2, seq, w, "spike sequence (missing leg element)")


def solve_spike(K: Spike, P1: BasisPair, P2: BasisPair, w: Optional[Weights] = None) -> ExchangeSequence:
    """Dispatch on the missing element; length <= r and weight <= w(S)."""
    missing = _check_spike_pairs(K, P1, P2)
    if missing == TIP:
        seq = _missing_tip(K, P1, P2, w)
    else:
        seq = _missing_leg_element(K, P1, P2, w, missing)
    return _verified(K, P1, P2, seq, w, "spike sequence")


# cases whose construction may reuse an element
REUSE_CASES = frozenset({"tip-1.4-reuse", "leg-1.3-reuse", "leg-2.2"})


def spike_case(K: Spike, P1: BasisPair, P2: BasisPair, w: Optional[Weights] = None) -> Optional[str]:
    """Name of the construction branch ``solve_spike`` takes (``None`` if ``P1 == P2``)."""
    missing = _check_spike_pairs(K, P1, P2)
    trace: list = []
    if missing == TIP:
        _missing_tip(K, P1, P2, w, trace)
    else:
        _missing_leg_element(K, P1, P2, w, missing, trace)
    return trace[-1] if trace else None
