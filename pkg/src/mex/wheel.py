"""Exchange sequences between colorings of wheel graphs.

A coloring of a wheel is fixed by the colors of its spokes together with its
orientation.  With positive orientation every rim edge ``r_i`` has the color
opposite to ``s_{i+1}``; with negative orientation the color opposite to
``s_i``.  Exchanging a spoke ``e`` with ``phi_minus(e)`` keeps the
orientation, so colorings of opposite orientation can only be joined through
a coloring with two intervals.

All solvers normalize the start coloring to positive orientation by the
reflection ``v_i -> v_{m+1-i}`` and map the result back.  Every returned
sequence is replayed and checked against the guaranteed bounds.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from mex.core import (
    BasisPair,
    ExchangeSequence,
    PairState,
    Weights,
    check_compatible,
    check_pair,
    ensure_bounds,
    swap_colors_sequence,
    weight_of,
)
from mex.errors import (
    DomainError,
    IncompatiblePairs,
    InternalBoundViolation,
    InvalidPair,
    NotAColoring,
    OrientationMismatch,
    PreconditionViolation,
)
from mex.instances import Wheel


class Orientation(enum.Enum):
    POSITIVE = "+"
    NEGATIVE = "-"

    def flipped(self) -> "Orientation":
        return Orientation.NEGATIVE if self is Orientation.POSITIVE else Orientation.POSITIVE


@dataclass(frozen=True)
class IntervalDecomposition:
    """Intervals ``I_1..I_2q`` in positive cyclic order, ``I_1`` red.

    ``intervals`` hold spoke ids; ``phi_minus``/``phi_plus`` map spoke ids to
    rim ids according to ``orientation``.
    """

    pair: BasisPair
    intervals: tuple[tuple[int, ...], ...]
    colors: tuple[str, ...]
    orientation: Orientation
    boundary: tuple[int, ...]
    phi_minus: dict
    phi_plus: dict

    @property
    def q(self) -> int:
        return len(self.intervals) // 2


@dataclass(frozen=True)
class IntervalWeights:
    xs: tuple[Fraction, ...]
    ys: tuple[Fraction, ...]


def _orientation(W: Wheel, red: set | frozenset) -> Orientation:
    m = W.m
    for i in range(1, m + 1):
        s, t = W.spoke(i), W.spoke(i + 1)
        if (s in red) != (t in red):
            return Orientation.POSITIVE if (W.rim(i) in red) == (s in red) else Orientation.NEGATIVE
    raise NotAColoring("all spokes have the same color")


def phi_maps(W: Wheel, orientation: Orientation) -> tuple[dict, dict]:
    """``(phi_minus, phi_plus)`` for the given orientation."""
    before = {W.spoke(i): W.rim(i - 1) for i in range(1, W.m + 1)}
    after = {W.spoke(i): W.rim(i) for i in range(1, W.m + 1)}
    return (before, after) if orientation is Orientation.POSITIVE else (after, before)


def orientation(W: Wheel, P: BasisPair) -> Orientation:
    return _orientation(W, P.red)


def decompose(W: Wheel, P: BasisPair) -> IntervalDecomposition:
    if P.union != W.ground or P.red & P.blue:
        raise NotAColoring("a wheel coloring must split all edges into two classes")
    for side in (P.red, P.blue):
        if not W.is_basis(side):
            raise NotAColoring(f"class {W.names(side)} is not a spanning tree")
    o = _orientation(W, P.red)
    m = W.m
    red = [W.spoke(i) in P.red for i in range(1, m + 1)]
    # first index i (1-based) where a new interval starts
    starts = [i for i in range(1, m + 1) if red[i - 1] != red[(i - 2) % m]]
    runs = []
    for a, b in zip(starts, starts[1:] + [starts[0] + m]):
        runs.append(tuple(W.spoke(i) for i in range(a, b)))
    first_red = min(k for k, run in enumerate(runs) if run[0] in P.red)
    runs = runs[first_red:] + runs[:first_red]
    colors = tuple("R" if run[0] in P.red else "B" for run in runs)
    boundary = tuple(W.rim(W.spoke_index(run[-1])) for run in runs)
    phi_minus, phi_plus = phi_maps(W, o)
    return IntervalDecomposition(P, tuple(runs), colors, o, boundary, phi_minus, phi_plus)


def interval_weights(W: Wheel, D: IntervalDecomposition, P2: BasisPair, w: Optional[Weights] = None) -> IntervalWeights:
    P1 = D.pair
    xs, ys = [], []
    for run in D.intervals:
        elems = set(run) | {D.phi_minus[s] for s in run}
        same = [e for e in elems if (e in P1.red) == (e in P2.red)]
        diff = elems.difference(same)
        xs.append(weight_of(w, same))
        ys.append(weight_of(w, diff))
    return IntervalWeights(tuple(xs), tuple(ys))


def _x(xs: Sequence, i: int):
    return xs[(i - 1) % len(xs)]


def check_ineq_A(xs: Sequence, j: int, k: int) -> bool:
    """Weight condition for collapsing around ``I_j`` when there are ``4k+2`` intervals."""
    if len(xs) != 4 * k + 2 or k < 1:
        raise DomainError(f"inequality A needs 4k+2 interval weights, got {len(xs)} for k={k}")
    lhs = sum(_x(xs, j + 2 * i - 1) for i in range(1, k + 1)) + sum(_x(xs, j + 2 * i) for i in range(k + 1, 2 * k + 1))
    rhs = sum(_x(xs, j + 2 * i) for i in range(0, k + 1)) + sum(_x(xs, j + 2 * i + 1) for i in range(k, 2 * k + 1))
    return lhs <= rhs


def check_ineq_B(xs: Sequence, j: int, k: int) -> bool:
    """Weight condition for collapsing around ``I_j`` when there are ``4k`` intervals."""
    if len(xs) != 4 * k or k < 2:
        raise DomainError(f"inequality B needs 4k interval weights (k >= 2), got {len(xs)} for k={k}")
    lhs = sum(_x(xs, j + 2 * i - 1) for i in range(1, k)) + sum(_x(xs, j + 2 * i) for i in range(k, 2 * k))
    rhs = sum(_x(xs, j + 2 * i) for i in range(0, k)) + sum(_x(xs, j + 2 * i + 1) for i in range(k - 1, 2 * k))
    return lhs <= rhs


def collapse_indices(q: int, j: int) -> list[int]:
    """1-based interval indices whose spokes are flipped in the >= 6 interval case."""
    n = 2 * q
    if q % 2 == 1:
        k = (q - 1) // 2
        idx = [j + 2 * i - 1 for i in range(1, k + 1)] + [j + 2 * i for i in range(k + 1, 2 * k + 1)]
    else:
        k = q // 2
        idx = [j + 2 * i - 1 for i in range(1, k)] + [j + 2 * i for i in range(k, 2 * k)]
    return [(i - 1) % n + 1 for i in idx]


# --- normalization ----------------------------------------------------------

def _check_colorings(W: Wheel, P1: BasisPair, P2: BasisPair) -> None:
    for P in (P1, P2):
        if P.union != W.ground:
            raise NotAColoring("a wheel coloring must use every edge")
        try:
            check_pair(W, P)
        except InvalidPair as exc:
            raise NotAColoring(str(exc)) from None
    check_compatible(P1, P2)


def _normalized(W: Wheel, P1: BasisPair, P2: BasisPair, w: Optional[Weights]):
    """Reflect so that ``P1`` has positive orientation; returns the mapping used."""
    if _orientation(W, P1.red) is Orientation.POSITIVE:
        return P1, P2, w, None
    rho = W.reflection()
    w2 = None if w is None else {rho[e]: v for e, v in w.items()}
    return P1.relabeled(rho), P2.relabeled(rho), w2, rho


def _restore(seq: ExchangeSequence, rho) -> ExchangeSequence:
    return seq if rho is None else seq.relabeled(rho)


# --- building blocks on a PairState -----------------------------------------

def _spokes_of(W: Wheel, state: PairState, red: bool) -> int:
    return sum(1 for s in W.spokes if (s in state.red) == red)


def _complete_monotone(W: Wheel, state: PairState, P2: BasisPair) -> None:
    """Flip every wrongly colored spoke against ``phi_minus``; orientations must agree."""
    o = _orientation(W, state.red)
    if o is not _orientation(W, P2.red):
        raise OrientationMismatch("monotone completion needs equal orientations")
    phi_minus, _ = phi_maps(W, o)
    pending = [s for s in W.spokes if (s in state.red) != (s in P2.red)]
    n_red = _spokes_of(W, state, True)
    n_blue = W.m - n_red
    while pending:
        for k, s in enumerate(pending):
            if s in state.red and n_red == 1 or s not in state.red and n_blue == 1:
                continue
            if s in state.red:
                n_red, n_blue = n_red - 1, n_blue + 1
            else:
                n_red, n_blue = n_red + 1, n_blue - 1
            state.swap(s, phi_minus[s])
            del pending[k]
            break
        else:
            raise InternalBoundViolation("monotone completion stuck: a spoke color class would become empty")


def _collapse(W: Wheel, state: PairState, spokes) -> None:
    phi_minus, _ = phi_maps(W, Orientation.POSITIVE)
    for s in spokes:
        state.swap(s, phi_minus[s])


def _two_intervals(W: Wheel, state: PairState) -> tuple[list[int], list[int]]:
    D = decompose(W, state.pair)
    if len(D.intervals) != 2 or D.orientation is not Orientation.POSITIVE:
        raise InternalBoundViolation(f"expected a positive coloring with two intervals, got {len(D.intervals)}")
    return list(D.intervals[0]), list(D.intervals[1])


def _singleton_frame(W: Wheel, c: int) -> tuple[int, int, int, int]:
    """``(a, b, c, d)`` around the singleton spoke ``c``, positive orientation."""
    i = W.spoke_index(c)
    a = W.spoke(i - 1)
    return a, W.rim(i - 1), c, W.rim(i)


def _diff(state: PairState, P2: BasisPair, elems) -> frozenset:
    return frozenset(e for e in elems if (e in state.red) != (e in P2.red))


def _singleton_obstructed(W: Wheel, state: PairState, P2: BasisPair, c: int) -> bool:
    a, b, c, d = _singleton_frame(W, c)
    return _diff(state, P2, (a, b, c, d)) == {b, c}


def _reverse_singleton(W: Wheel, state: PairState, P2: BasisPair, c: int, w: Optional[Weights],
                       allow_detour: bool) -> None:
    """Reverse the orientation when ``c`` is the only spoke of its color."""
    a, b, c, d = _singleton_frame(W, c)
    diff = _diff(state, P2, (a, b, c, d))
    if diff in ({a, c}, {a, d}, {b, d}):
        u, v = sorted(diff)
        state.swap(u, v)
        return
    if diff != {b, c}:
        raise InternalBoundViolation(f"unexpected recolor set {sorted(diff)} at a singleton interval")
    if not allow_detour:
        raise InternalBoundViolation("three-step reversal would exceed the length bound")
    c_red = c in state.red
    s = next(x for x in W.spokes if (x in P2.red) == c_red and x not in (a, c))
    _, phi_plus = phi_maps(W, Orientation.POSITIVE)
    wa = weight_of(w, [a])
    wd = weight_of(w, [d])
    if wa >= wd:
        state.swap(b, d)
        state.swap(s, phi_plus[s])
        state.swap(c, d)
    else:
        state.swap(a, c)
        state.swap(s, phi_plus[s])
        state.swap(a, b)


def _reverse_two(W: Wheel, state: PairState, P2: BasisPair, w: Optional[Weights], allow_detour: bool = True) -> None:
    """Reverse the orientation of a positive two-interval coloring towards ``P2``."""
    first, second = _two_intervals(W, state)
    if len(first) == 1:
        _reverse_singleton(W, state, P2, first[0], w, allow_detour)
        return
    if len(second) == 1:
        _reverse_singleton(W, state, P2, second[0], w, allow_detour)
        return
    _, phi_plus = phi_maps(W, Orientation.POSITIVE)
    c = first[-1]
    a = second[-1]
    b, d = phi_plus[a], phi_plus[c]
    diff = _diff(state, P2, (a, b, c, d))
    if diff not in ({a, c}, {a, d}, {b, c}, {b, d}):
        raise InternalBoundViolation(f"unexpected recolor set {sorted(diff)} in a two-interval coloring")
    u, v = sorted(diff)
    state.swap(u, v)


# --- solvers ----------------------------------------------------------------

def monotone_same_orientation(W: Wheel, P1: BasisPair, P2: BasisPair) -> ExchangeSequence:
    _check_colorings(W, P1, P2)
    if _orientation(W, P1.red) is not _orientation(W, P2.red):
        raise OrientationMismatch("colorings have different orientations")
    seq = _monotone(W, P1, P2)
    report = ensure_bounds(W, P1, P2, seq, None, max_length=W.m - len(P1.red & P2.red), max_usage=1,
                           what="monotone wheel sequence")
    if not report.monotone:
        raise InternalBoundViolation("same-orientation sequence is not monotone")
    return seq


def _monotone(W: Wheel, P1: BasisPair, P2: BasisPair) -> ExchangeSequence:
    state = PairState(W, P1)
    _complete_monotone(W, state, P2)
    return state.sequence()


def solve_le4(W: Wheel, P1: BasisPair, P2: BasisPair, w: Optional[Weights] = None) -> ExchangeSequence:
    _check_colorings(W, P1, P2)
    if _orientation(W, P1.red) is _orientation(W, P2.red):
        raise PreconditionViolation("colorings have the same orientation")
    seq = _le4(W, P1, P2, w)
    ensure_bounds(W, P1, P2, seq, w, max_length=W.m, max_weight=weight_of(w, W.ground),
                  what="wheel sequence (at most four intervals)")
    return seq


def _le4(W: Wheel, P1: BasisPair, P2: BasisPair, w: Optional[Weights]) -> ExchangeSequence:
    Q1, Q2, v, rho = _normalized(W, P1, P2, w)
    n_int = len(decompose(W, Q1).intervals)
    if n_int == 2:
        state = PairState(W, Q1)
        _reverse_two(W, state, Q2, v)
        _complete_monotone(W, state, Q2)
        seq = state.sequence()
    elif n_int == 4:
        seq = _solve_four(W, Q1, Q2, v)
    else:
        raise PreconditionViolation(f"start coloring has {n_int} intervals, expected at most 4")
    return _restore(seq, rho)


def _solve_four(W: Wheel, P1: BasisPair, P2: BasisPair, w: Optional[Weights], roles_switched: bool = False) -> ExchangeSequence:
    m = W.m
    r1 = sum(1 for s in W.spokes if s in P1.red)
    r2 = sum(1 for s in W.spokes if s in P2.red)
    if r1 + r2 > m:
        return swap_colors_sequence(_solve_four(W, P1.swapped(), P2.swapped(), w, roles_switched))
    D = decompose(W, P1)
    xw = interval_weights(W, D, P2, w).xs
    I1, _, I3, _ = D.intervals
    # ties go to I_3
    if xw[2] <= xw[0]:
        collapsed, kept = I3, I1
    else:
        collapsed, kept = I1, I3
    state = PairState(W, P1)
    _collapse(W, state, collapsed)
    if len(kept) >= 2:
        _reverse_two(W, state, P2, w, allow_detour=False)
    else:
        c = kept[0]
        if _singleton_obstructed(W, state, P2, c) and r1 + r2 == m:
            if roles_switched:
                raise InternalBoundViolation("singleton obstruction persists after switching colors")
            # both colors now satisfy the spoke-count bound; restart with roles switched
            return swap_colors_sequence(_solve_four(W, P1.swapped(), P2.swapped(), w, roles_switched=True))
        _reverse_singleton(W, state, P2, c, w, allow_detour=True)
    _complete_monotone(W, state, P2)
    return state.sequence()


def admissible_index(xs_list: Sequence[Sequence], q: int) -> Optional[int]:
    """First ``j`` in ``1..2q`` whose inequality holds for every weight profile."""
    for j in range(1, 2 * q + 1):
        if q % 2 == 1:
            ok = all(check_ineq_A(xs, j, (q - 1) // 2) for xs in xs_list)
        else:
            ok = all(check_ineq_B(xs, j, q // 2) for xs in xs_list)
        if ok:
            return j
    return None


def solve_ge6(W: Wheel, P1: BasisPair, P2: BasisPair, w1: Optional[Weights] = None,
              w2: Optional[Weights] = None) -> ExchangeSequence:
    _check_colorings(W, P1, P2)
    if _orientation(W, P1.red) is _orientation(W, P2.red):
        raise PreconditionViolation("colorings have the same orientation")
    seq = _ge6(W, P1, P2, w1, w2)
    for v in (w1, w2):
        ensure_bounds(W, P1, P2, seq, v, max_weight=weight_of(v, W.ground),
                      what="wheel sequence (at least six intervals)")
    return seq


def _ge6(W: Wheel, P1: BasisPair, P2: BasisPair, w1: Optional[Weights], w2: Optional[Weights]) -> ExchangeSequence:
    weights = [w1, w2]
    Q1, Q2, _, rho = _normalized(W, P1, P2, None)
    if rho is not None:
        weights = [None if v is None else {rho[e]: x for e, x in v.items()} for v in weights]
    D = decompose(W, Q1)
    q = D.q
    if q < 3:
        raise PreconditionViolation(f"start coloring has {2 * q} intervals, expected at least 6")
    profiles = [interval_weights(W, D, Q2, v).xs for v in weights]
    j = admissible_index(profiles, q)
    if j is None:
        raise InternalBoundViolation("no admissible collapse index for both weight functions")
    state = PairState(W, Q1)
    for i in collapse_indices(q, j):
        _collapse(W, state, D.intervals[i - 1])
    first, second = _two_intervals(W, state)
    if len(first) < 2 or len(second) < 2:
        raise InternalBoundViolation("collapse left an interval of length one")
    _reverse_two(W, state, Q2, None, allow_detour=False)
    _complete_monotone(W, state, Q2)
    return _restore(state.sequence(), rho)


def solve_wheel(W: Wheel, P1: BasisPair, P2: BasisPair, w: Optional[Weights] = None) -> ExchangeSequence:
    """Sequence of length <= n-1 and weight <= w(E) using each edge at most twice."""
    _check_colorings(W, P1, P2)
    if P1 == P2:
        return ExchangeSequence()
    if _orientation(W, P1.red) is _orientation(W, P2.red):
        seq = _monotone(W, P1, P2)
    elif len(decompose(W, P1).intervals) <= 4:
        seq = _le4(W, P1, P2, w)
    else:
        seq = _ge6(W, P1, P2, w, None)
    ensure_bounds(W, P1, P2, seq, w, max_length=W.m, max_weight=weight_of(w, W.ground), what="wheel sequence")
    return seq


# --- enumeration helpers ----------------------------------------------------

def coloring(W: Wheel, red_spokes, o: Orientation) -> BasisPair:
    """The coloring with the given red spoke ids and orientation."""
    red_spokes = frozenset(red_spokes)
    if not red_spokes or len(red_spokes) == W.m:
        raise NotAColoring("both colors need at least one spoke")
    red = set(red_spokes)
    for i in range(1, W.m + 1):
        nxt = W.spoke(i + 1) if o is Orientation.POSITIVE else W.spoke(i)
        if nxt not in red_spokes:
            red.add(W.rim(i))
    red = frozenset(red)
    return BasisPair(red, W.ground - red)


def all_colorings(W: Wheel) -> list[BasisPair]:
    """Every coloring of the wheel, ``2 (2^m - 2)`` of them."""
    out = []
    m = W.m
    for mask in range(1, 2 ** m - 1):
        spokes = [W.spoke(i + 1) for i in range(m) if mask >> i & 1]
        for o in (Orientation.POSITIVE, Orientation.NEGATIVE):
            out.append(coloring(W, spokes, o))
    return out
