"""Matroid oracles, basis pairs, symmetric exchanges and sequence verification.

Elements are small integers ``0..|S|-1``.  Labels are kept on the oracle and
are cosmetic; identity is always the integer id.  Weights are exact
``Fraction`` values so that every bound comparison is exact.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import AbstractSet, Iterable, Iterator, Mapping, NamedTuple, Optional, Sequence

from mex.errors import (
    DomainError,
    IncompatiblePairs,
    InfeasibleExchange,
    InternalBoundViolation,
    InvalidPair,
)

Weights = Mapping[int, Fraction]

BASIS_CACHE_SIZE = 1 << 18


class MatroidOracle(ABC):
    """A matroid given by an independence oracle.

    Subclasses implement :meth:`is_independent`.  ``ground`` defaults to all
    ids ``0..len(labels)-1``; deletion views shrink it without renumbering.
    """

    def __init__(self, labels: Sequence[str], rank: int):
        labels = tuple(str(x) for x in labels)
        if len(set(labels)) != len(labels):
            raise DomainError(f"duplicate element labels: {labels}")
        self.labels = labels
        self.rank = rank
        self._index = {lab: i for i, lab in enumerate(labels)}
        self._bases: dict = {}

    @property
    def ground_size(self) -> int:
        return len(self.labels)

    @property
    def ground(self) -> frozenset[int]:
        return frozenset(range(len(self.labels)))

    @abstractmethod
    def is_independent(self, X: AbstractSet[int]) -> bool:
        ...

    def is_basis(self, X: AbstractSet[int]) -> bool:
        if len(X) != self.rank:
            return False
        X = frozenset(X)
        try:
            return self._bases[X]
        except KeyError:
            pass
        if len(self._bases) > BASIS_CACHE_SIZE:
            self._bases.clear()
        result = self._bases[X] = self.is_independent(X)
        return result

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise DomainError(f"unknown element label {label!r}") from None

    def label(self, e: int) -> str:
        return self.labels[e]

    def elements(self, labels: Iterable[str]) -> frozenset[int]:
        return frozenset(self.index(lab) for lab in labels)

    def names(self, X: Iterable[int]) -> list[str]:
        return [self.labels[e] for e in sorted(X)]


@dataclass(frozen=True)
class BasisPair:
    """Ordered pair ``(R, B)``: red and blue color classes."""

    red: frozenset[int]
    blue: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "red", frozenset(self.red))
        object.__setattr__(self, "blue", frozenset(self.blue))

    @property
    def union(self) -> frozenset[int]:
        return self.red | self.blue

    def swapped(self) -> "BasisPair":
        return BasisPair(self.blue, self.red)

    def relabeled(self, mapping: Mapping[int, int]) -> "BasisPair":
        return BasisPair(frozenset(mapping[e] for e in self.red), frozenset(mapping[e] for e in self.blue))

    def color(self, e: int) -> str:
        if e in self.red:
            return "R"
        if e in self.blue:
            return "B"
        raise DomainError(f"element {e} is not colored")

    def describe(self, M: MatroidOracle) -> str:
        return f"({{{','.join(M.names(self.red))}}}, {{{','.join(M.names(self.blue))}}})"

    @classmethod
    def from_labels(cls, M: MatroidOracle, red: Iterable[str], blue: Iterable[str]) -> "BasisPair":
        return cls(M.elements(red), M.elements(blue))


class Exchange(NamedTuple):
    """``e`` leaves the red class, ``f`` enters it."""

    e: int
    f: int


@dataclass(frozen=True)
class ExchangeSequence:
    steps: tuple[Exchange, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(Exchange(*s) for s in self.steps))

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self) -> Iterator[Exchange]:
        return iter(self.steps)

    def __getitem__(self, i):
        return self.steps[i]

    def __add__(self, other: "ExchangeSequence") -> "ExchangeSequence":
        return ExchangeSequence(self.steps + tuple(other))

    def usage(self) -> Counter:
        counts: Counter = Counter()
        for e, f in self.steps:
            counts[e] += 1
            counts[f] += 1
        return counts

    @property
    def max_usage(self) -> int:
        return max(self.usage().values(), default=0)

    def weight(self, w: Optional[Weights] = None) -> Fraction:
        if w is None:
            return Fraction(2 * len(self.steps))
        return sum((w[e] + w[f] for e, f in self.steps), Fraction(0))

    def relabeled(self, mapping: Mapping[int, int]) -> "ExchangeSequence":
        return ExchangeSequence(tuple(Exchange(mapping[e], mapping[f]) for e, f in self.steps))

    def labeled(self, M: MatroidOracle) -> list[tuple[str, str]]:
        return [(M.label(e), M.label(f)) for e, f in self.steps]


@dataclass(frozen=True)
class SequenceReport:
    length: int
    weight: Fraction
    max_usage: int
    usage: dict = field(default_factory=dict)
    monotone: bool = False
    valid: bool = False
    failure_step: Optional[int] = None

    def summary(self) -> dict:
        return {
            "length": self.length,
            "weight": format_fraction(self.weight),
            "max_usage": self.max_usage,
            "monotone": self.monotone,
            "valid": self.valid,
            "failure_step": self.failure_step,
        }


def format_fraction(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def unit_weights(elements: Iterable[int]) -> dict[int, Fraction]:
    return {e: Fraction(1) for e in elements}


def random_weights(elements: Iterable[int], rng, *, max_num: int = 20, max_den: int = 5) -> dict[int, Fraction]:
    """Nonnegative rationals ``p/q`` drawn from ``rng`` (a ``random.Random``)."""
    return {e: Fraction(rng.randint(0, max_num), rng.randint(1, max_den)) for e in sorted(elements)}


def make_weights(values: Mapping[int, object]) -> dict[int, Fraction]:
    """Convert to exact fractions, rejecting negative values."""
    w = {}
    for e, v in values.items():
        v = Fraction(v)
        if v < 0:
            raise DomainError(f"negative weight {v} for element {e}")
        w[e] = v
    return w


def weight_of(w: Optional[Weights], X: Iterable[int]) -> Fraction:
    if w is None:
        return Fraction(sum(1 for _ in X))
    return sum((w[e] for e in X), Fraction(0))


def check_pair(M: MatroidOracle, P: BasisPair) -> None:
    if P.red & P.blue:
        raise InvalidPair(f"color classes overlap: {P.describe(M)}")
    if not P.union <= M.ground:
        raise InvalidPair("pair uses elements outside the ground set")
    for side, X in (("red", P.red), ("blue", P.blue)):
        if not M.is_basis(X):
            raise InvalidPair(f"{side} class {M.names(X)} is not a basis")


def check_compatible(P1: BasisPair, P2: BasisPair) -> None:
    if P1.union != P2.union:
        raise IncompatiblePairs("pairs cover different element sets")


def is_feasible_exchange(M: MatroidOracle, P: BasisPair, e: int, f: int) -> bool:
    if e not in P.red or f not in P.blue:
        return False
    return M.is_basis((P.red - {e}) | {f}) and M.is_basis((P.blue - {f}) | {e})


def apply_exchange(M: MatroidOracle, P: BasisPair, x: Exchange) -> BasisPair:
    e, f = x
    if not is_feasible_exchange(M, P, e, f):
        raise InfeasibleExchange(f"exchange ({M.label(e)}, {M.label(f)}) is not feasible in {P.describe(M)}")
    return BasisPair((P.red - {e}) | {f}, (P.blue - {f}) | {e})


def replay(M: MatroidOracle, P: BasisPair, seq: Iterable) -> BasisPair:
    """Apply every step, raising ``InfeasibleExchange`` on the first bad one."""
    for x in seq:
        P = apply_exchange(M, P, Exchange(*x))
    return P


def verify_sequence(
    M: MatroidOracle,
    P1: BasisPair,
    P2: BasisPair,
    seq: ExchangeSequence,
    w: Optional[Weights] = None,
) -> SequenceReport:
    check_pair(M, P1)
    check_pair(M, P2)
    check_compatible(P1, P2)
    return sequence_report(M, P1, P2, seq, w)


def sequence_report(
    M: MatroidOracle,
    P1: BasisPair,
    P2: BasisPair,
    seq: ExchangeSequence,
    w: Optional[Weights] = None,
) -> SequenceReport:
    """Replay ``seq`` from ``P1`` without re-validating the endpoints."""
    usage = seq.usage()
    max_usage = max(usage.values(), default=0)
    weight = seq.weight(w)
    movable = (P1.red & P2.blue) | (P2.red & P1.blue)
    monotone = max_usage <= 1 and set(usage) <= movable

    P = P1
    failure = None
    for i, (e, f) in enumerate(seq):
        if not is_feasible_exchange(M, P, e, f):
            failure = i
            break
        P = BasisPair((P.red - {e}) | {f}, (P.blue - {f}) | {e})
    else:
        if P != P2:
            failure = len(seq)
    valid = failure is None
    return SequenceReport(
        length=len(seq),
        weight=weight,
        max_usage=max_usage,
        usage=dict(usage),
        monotone=valid and monotone,
        valid=valid,
        failure_step=failure,
    )


def lower_bounds(P1: BasisPair, P2: BasisPair, w: Optional[Weights] = None) -> tuple[int, Fraction]:
    """``(r - |R1 & R2|, w(R1 ^ R2))``; met exactly by monotone sequences."""
    check_compatible(P1, P2)
    return len(P1.red) - len(P1.red & P2.red), weight_of(w, P1.red ^ P2.red)


def reverse_sequence(seq: ExchangeSequence) -> ExchangeSequence:
    """Sequence from P2 back to P1: steps reversed, each ``(e, f)`` -> ``(f, e)``."""
    return ExchangeSequence(tuple(Exchange(f, e) for e, f in reversed(seq.steps)))


def swap_colors_sequence(seq: ExchangeSequence) -> ExchangeSequence:
    """Same moves seen from the color-swapped pairs ``(B, R)``."""
    return ExchangeSequence(tuple(Exchange(f, e) for e, f in seq.steps))


def ensure_bounds(
    M: MatroidOracle,
    P1: BasisPair,
    P2: BasisPair,
    seq: ExchangeSequence,
    w: Optional[Weights],
    *,
    max_length: Optional[int] = None,
    max_weight: Optional[Fraction] = None,
    max_usage: int = 2,
    what: str = "sequence",
) -> SequenceReport:
    """Replay ``seq`` and raise ``InternalBoundViolation`` if any bound fails."""
    report = sequence_report(M, P1, P2, seq, w)
    problems = []
    if not report.valid:
        problems.append(f"invalid at step {report.failure_step}")
    if max_length is not None and report.length > max_length:
        problems.append(f"length {report.length} > {max_length}")
    if max_weight is not None and report.weight > max_weight:
        problems.append(f"weight {report.weight} > {max_weight}")
    if report.max_usage > max_usage:
        problems.append(f"max usage {report.max_usage} > {max_usage}")
    if problems:
        raise InternalBoundViolation(
            f"{what} from {P1.describe(M)} to {P2.describe(M)}: {'; '.join(problems)}; steps {seq.labeled(M)}"
        )
    return report


class PairState:
    """Mutable replay cursor used by the constructive solvers.

    ``swap(u, v)`` exchanges two elements of opposite colors, orienting the
    step by their current colors, and records it.
    """

    def __init__(self, M: MatroidOracle, P: BasisPair):
        self.M = M
        self.red = set(P.red)
        self.blue = set(P.blue)
        self.steps: list[Exchange] = []

    @property
    def pair(self) -> BasisPair:
        return BasisPair(frozenset(self.red), frozenset(self.blue))

    def is_red(self, e: int) -> bool:
        return e in self.red

    def can_swap(self, u: int, v: int) -> bool:
        e, f = (u, v) if u in self.red else (v, u)
        return is_feasible_exchange(self.M, self.pair, e, f)

    def swap(self, u: int, v: int) -> Exchange:
        if u in self.red and v in self.blue:
            x = Exchange(u, v)
        elif v in self.red and u in self.blue:
            x = Exchange(v, u)
        else:
            raise InfeasibleExchange(f"{self.M.label(u)} and {self.M.label(v)} have the same color")
        self.red.discard(x.e)
        self.red.add(x.f)
        self.blue.discard(x.f)
        self.blue.add(x.e)
        self.steps.append(x)
        return x

    def sequence(self) -> ExchangeSequence:
        return ExchangeSequence(tuple(self.steps))
