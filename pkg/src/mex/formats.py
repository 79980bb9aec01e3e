"""JSON documents for instances, pairs, weights, sequences and bijections.

Element sets are written as label lists and rationals as ``"p/q"`` strings.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Optional

from mex.core import BasisPair, Exchange, ExchangeSequence, MatroidOracle, SequenceReport, format_fraction, make_weights
from mex.errors import DomainError, InvalidInput
from mex.instances import (
    ElementarySplit,
    GraphMatroid,
    PartitionMatroid,
    Spike,
    SplitDirectSum,
    UniformMatroid,
    Wheel,
    validate_instance,
)
from mex.sbo import SboBijections


def _ids(M: MatroidOracle, labels) -> list[int]:
    return sorted(M.elements(labels))


def _names(M: MatroidOracle, X) -> list[str]:
    return M.names(X)


def instance_to_dict(I: MatroidOracle) -> dict:
    if isinstance(I, Wheel):
        return {"type": "wheel", "n": I.n, "labels": list(I.labels)}
    if isinstance(I, GraphMatroid):
        return {"type": "graph", "vertices": I.n_vertices, "edges": [list(e) for e in I.edges],
                "labels": list(I.labels)}
    if isinstance(I, UniformMatroid):
        return {"type": "uniform", "size": I.ground_size, "rank": I.rank, "labels": list(I.labels)}
    if isinstance(I, PartitionMatroid):
        return {"type": "partition", "labels": list(I.labels), "parts": [_names(I, p) for p in I.parts],
                "capacities": list(I.capacities)}
    if isinstance(I, ElementarySplit):
        return {"type": "elementary_split", "labels": list(I.labels), "rank": I.rank,
                "hyperedges": [_names(I, h) for h in I.hyperedges], "bounds": list(I.bounds)}
    if isinstance(I, SplitDirectSum):
        elementary = None
        if I.elementary is not None:
            elements, rank, hyperedges, bounds = I.elementary
            elementary = {"elements": _names(I, elements), "rank": rank,
                          "hyperedges": [_names(I, h) for h in hyperedges], "bounds": list(bounds)}
        return {"type": "split_sum", "labels": list(I.labels), "elementary": elementary,
                "uniform": [{"elements": _names(I, g), "rank": k} for g, k in I.uniform]}
    if isinstance(I, Spike):
        return {"type": "spike", "r": I.r, "rule": I.rule, "c3": sorted(_names(I, z) for z in I.c3)}
    raise DomainError(f"cannot serialize {type(I).__name__}")


def _build(d: dict) -> MatroidOracle:
    kind = d["type"]
    if kind == "wheel":
        W = Wheel(int(d["n"]))
        if "labels" in d and list(d["labels"]) != list(W.labels):
            raise DomainError("wheel labels must follow the s1..sm, r1..rm convention")
        return W
    if kind == "graph":
        return GraphMatroid(int(d["vertices"]), [tuple(e) for e in d["edges"]], d.get("labels"))
    if kind == "uniform":
        return UniformMatroid(int(d["size"]), int(d["rank"]), d.get("labels"))
    if kind == "spike":
        r = int(d["r"])
        probe = Spike(r)
        return Spike(r, [_ids(probe, z) for z in d.get("c3", [])], d.get("rule"))
    labels = list(d["labels"])
    index = {lab: i for i, lab in enumerate(labels)}

    def ids(names):
        try:
            return [index[x] for x in names]
        except KeyError as exc:
            raise DomainError(f"unknown element label {exc.args[0]!r}") from None

    if kind == "partition":
        return PartitionMatroid([ids(p) for p in d["parts"]], d.get("capacities"), labels)
    if kind == "elementary_split":
        return ElementarySplit(len(labels), int(d["rank"]), [ids(h) for h in d["hyperedges"]],
                               [int(b) for b in d["bounds"]], labels)
    if kind == "split_sum":
        e = d.get("elementary")
        elementary = None
        if e is not None:
            elementary = (ids(e["elements"]), int(e["rank"]), [ids(h) for h in e["hyperedges"]],
                          [int(b) for b in e["bounds"]])
        uniform = [(ids(u["elements"]), int(u["rank"])) for u in d.get("uniform", [])]
        return SplitDirectSum(labels, elementary, uniform)
    raise DomainError(f"unknown instance type {kind!r}")


def instance_from_dict(d: dict) -> MatroidOracle:
    """Build and validate an instance; malformed documents raise ``InvalidInput``."""
    try:
        I = _build(d)
    except InvalidInput:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise DomainError(f"malformed instance document: {exc!r}") from None
    problems = validate_instance(I)
    if problems:
        raise DomainError("invalid instance: " + "; ".join(problems))
    return I


def pair_to_dict(M: MatroidOracle, P1: BasisPair, P2: BasisPair) -> dict:
    return {"R1": _names(M, P1.red), "B1": _names(M, P1.blue), "R2": _names(M, P2.red), "B2": _names(M, P2.blue)}


def pair_from_dict(M: MatroidOracle, d: dict) -> tuple[BasisPair, BasisPair]:
    try:
        return (BasisPair(M.elements(d["R1"]), M.elements(d["B1"])),
                BasisPair(M.elements(d["R2"]), M.elements(d["B2"])))
    except (KeyError, TypeError) as exc:
        raise DomainError(f"malformed pair document: {exc!r}") from None


def weights_to_dict(M: MatroidOracle, w) -> dict:
    return {M.label(e): format_fraction(v) for e, v in sorted(w.items())}


def weights_from_dict(M: MatroidOracle, d: dict, required=()) -> dict[int, Fraction]:
    try:
        w = make_weights({M.index(lab): Fraction(str(v)) for lab, v in d.items()})
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"malformed weight: {exc}") from None
    missing = [M.label(e) for e in sorted(required) if e not in w]
    if missing:
        raise DomainError(f"no weight given for {', '.join(missing)}")
    return w


def sequence_to_dict(M: MatroidOracle, seq: ExchangeSequence, report: Optional[SequenceReport] = None) -> dict:
    out = {"steps": [list(step) for step in seq.labeled(M)]}
    if report is not None:
        out["summary"] = report.summary()
    return out


def sequence_from_dict(M: MatroidOracle, d: dict) -> ExchangeSequence:
    try:
        return ExchangeSequence(tuple(Exchange(M.index(e), M.index(f)) for e, f in d["steps"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise DomainError(f"malformed sequence document: {exc!r}") from None


def bijections_from_dict(M: MatroidOracle, d: dict) -> SboBijections:
    try:
        return SboBijections({M.index(a): M.index(b) for a, b in d["first"].items()},
                             {M.index(a): M.index(b) for a, b in d["second"].items()})
    except (KeyError, TypeError, AttributeError) as exc:
        raise DomainError(f"malformed bijection document: {exc!r}") from None


def read_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise DomainError(f"{path} is not valid JSON: {exc}") from None


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2)
