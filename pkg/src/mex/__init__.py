"""Symmetric exchange sequences between pairs of disjoint matroid bases."""

from mex.core import (
    BasisPair,
    Exchange,
    ExchangeSequence,
    MatroidOracle,
    SequenceReport,
    make_weights,
    verify_sequence,
)
from mex.errors import MexError

__all__ = [
    "BasisPair",
    "Exchange",
    "ExchangeSequence",
    "MatroidOracle",
    "MexError",
    "SequenceReport",
    "make_weights",
    "verify_sequence",
]
__version__ = "0.1.0"
