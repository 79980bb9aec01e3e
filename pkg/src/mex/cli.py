"""``mex`` command line: solve, verify, oracle, check and gen.

Every invocation prints one JSON object on stdout and a one-line summary on
stderr.  Exit codes: 0 success, 2 invalid input, 3 solver precondition
violated, 4 internal bound violated, 5 nothing found.
"""

from __future__ import annotations

import argparse
import math
import random
import sys
from pathlib import Path
from typing import Optional, Sequence

from mex import formats
from mex.core import (
    BasisPair,
    MatroidOracle,
    check_pair,
    format_fraction,
    lower_bounds,
    random_weights,
    verify_sequence,
    weight_of,
)
from mex.errors import (
    InfeasibleExchange,
    InternalBoundViolation,
    InvalidInput,
    MexError,
    NotFound,
    PreconditionViolation,
)
from mex.instances import (
    ElementarySplit,
    PartitionMatroid,
    Spike,
    SplitDirectSum,
    UniformMatroid,
    Wheel,
    binary_spike,
    free_spike,
    k4_as_split,
    k4_graph,
    uniform,
    wheel,
)
from mex.oracle import (
    conjecture_sweep,
    exchange_distance,
    exists_monotone_sequence,
    gap_search,
    two_weight_counterexample,
    weighted_exchange_distance,
)
from mex.sbo import SboBijections, partition_bijection, solve_sbo
from mex.spike import solve_spike
from mex.split import solve_split
from mex.wheel import solve_wheel

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_PRECONDITION = 3
EXIT_INTERNAL = 4
EXIT_NOT_FOUND = 5

SOLVERS = ("auto", "wheel", "spike", "split", "sbo")


def exit_code(exc: BaseException) -> int:
    if isinstance(exc, (InvalidInput, InfeasibleExchange)):
        return EXIT_INVALID
    if isinstance(exc, PreconditionViolation):
        return EXIT_PRECONDITION
    if isinstance(exc, InternalBoundViolation):
        return EXIT_INTERNAL
    if isinstance(exc, NotFound):
        return EXIT_NOT_FOUND
    return EXIT_INTERNAL


def _number(x):
    if x == math.inf:
        return "inf"
    return format_fraction(x) if not isinstance(x, int) else x


def infer_solver(I: MatroidOracle) -> str:
    if isinstance(I, Wheel):
        return "wheel"
    if isinstance(I, Spike):
        return "spike"
    if isinstance(I, (ElementarySplit, SplitDirectSum, UniformMatroid)):
        return "split"
    if isinstance(I, PartitionMatroid):
        return "sbo"
    raise PreconditionViolation(f"no solver applies to {getattr(I, 'kind', type(I).__name__)} instances")


def cmd_solve(I: MatroidOracle, P1: BasisPair, P2: BasisPair, w=None, solver: str = "auto",
              bijections: Optional[SboBijections] = None) -> dict:
    """Run a solver and return a sequence document with its bound check."""
    if solver == "auto":
        solver = infer_solver(I)
    r = I.rank
    if solver == "wheel":
        if not isinstance(I, Wheel):
            raise PreconditionViolation("the wheel solver needs a wheel instance")
        seq, length_bound = solve_wheel(I, P1, P2, w), r
    elif solver == "spike":
        if not isinstance(I, Spike):
            raise PreconditionViolation("the spike solver needs a spike instance")
        seq, length_bound = solve_spike(I, P1, P2, w), r
    elif solver == "split":
        if not isinstance(I, (ElementarySplit, SplitDirectSum, UniformMatroid)):
            raise PreconditionViolation("the split solver needs a split or uniform instance")
        seq, length_bound = solve_split(I, P1, P2, w), min(r, r - len(P1.red & P2.red) + 1)
    elif solver == "sbo":
        if bijections is None:
            if not isinstance(I, PartitionMatroid):
                raise PreconditionViolation("the sbo solver needs bijections unless the instance is a partition matroid")
            bijections = partition_bijection(I.parts, P1, P2)
        seq, length_bound = solve_sbo(I, P1, P2, bijections, w), None
    else:
        raise InvalidInput(f"unknown solver {solver!r}")
    report = verify_sequence(I, P1, P2, seq, w)
    doc = formats.sequence_to_dict(I, seq, report)
    weight_bound = weight_of(w, P1.union)
    doc["bounds"] = {
        "solver": solver,
        "rank": r,
        "length_bound": length_bound,
        "weight_bound": format_fraction(weight_bound),
        "usage_bound": 2,
        "within_bounds": report.valid and report.max_usage <= 2 and report.weight <= weight_bound
        and (length_bound is None or report.length <= length_bound),
    }
    return doc


def cmd_verify(I: MatroidOracle, P1: BasisPair, P2: BasisPair, seq, w=None) -> dict:
    return {"summary": verify_sequence(I, P1, P2, seq, w).summary()}


def cmd_oracle(I: MatroidOracle, P1: BasisPair, P2: BasisPair, w=None) -> dict:
    check_pair(I, P1)
    check_pair(I, P2)
    length, weight = lower_bounds(P1, P2, w)
    return {
        "distance": _number(exchange_distance(I, P1, P2)),
        "weighted_distance": _number(weighted_exchange_distance(I, P1, P2, w)),
        "lower_bound_length": length,
        "lower_bound_weight": format_fraction(weight),
        "monotone_exists": exists_monotone_sequence(I, P1, P2),
    }


def cmd_check(I: MatroidOracle, samples: int = 5, seed: int = 0) -> dict:
    rng = random.Random(seed)
    w_samples = [None] + [random_weights(I.ground, rng) for _ in range(samples)]
    report = conjecture_sweep(I, w_samples)
    doc = report.summary()
    doc.update(instance=getattr(I, "kind", type(I).__name__), rank=I.rank, samples=samples, seed=seed)
    doc["witnesses"] = [
        {"kind": kind, "pair": formats.pair_to_dict(I, P1, P2), "value": _number(value)}
        for kind, P1, P2, value in report.violations[:5]
    ]
    return doc


GENERATORS = {
    "wheel": (1, lambda n: wheel(n)),
    "free_spike": (1, lambda r: free_spike(r)),
    "binary_spike": (1, lambda r: binary_spike(r)),
    "uniform": (2, lambda n, k: uniform(n, k)),
    "k4_graph": (0, k4_graph),
    "k4_as_split": (0, k4_as_split),
    "gap_pair": (1, None),
    "k4_pair": (0, None),
}


def cmd_gen(name: str, params: Sequence[int] = ()) -> dict:
    """Instance document, or ``{"instance", "pair", ...}`` for the witness generators."""
    if name not in GENERATORS:
        raise InvalidInput(f"unknown generator {name!r}; choose from {', '.join(GENERATORS)}")
    arity, make = GENERATORS[name]
    if len(params) != arity:
        raise InvalidInput(f"{name} takes {arity} integer parameter(s)")
    if name == "gap_pair":
        W = wheel(params[0])
        found = gap_search(W)
        return {"instance": formats.instance_to_dict(W), "pair": formats.pair_to_dict(W, found.P1, found.P2),
                "lower_bound": found.lower_bound, "distance": found.distance, "required": found.required}
    if name == "k4_pair":
        G = k4_graph()
        found = two_weight_counterexample(G)
        return {"instance": formats.instance_to_dict(G), "pair": formats.pair_to_dict(G, found.P1, found.P2),
                "reused": G.names(found.elements)}
    return formats.instance_to_dict(make(*params))


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mex", description="Symmetric exchange sequences for matroid basis pairs.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="compute a bounded exchange sequence")
    s.add_argument("instance")
    s.add_argument("pair")
    s.add_argument("--weights")
    s.add_argument("--solver", choices=SOLVERS, default="auto")
    s.add_argument("--bijections")
    s.add_argument("--out", help="also write the sequence document here")

    v = sub.add_parser("verify", help="replay a sequence and report its statistics")
    v.add_argument("instance")
    v.add_argument("pair")
    v.add_argument("sequence")
    v.add_argument("--weights")

    o = sub.add_parser("oracle", help="exact distances by exhaustive search")
    o.add_argument("instance")
    o.add_argument("pair")
    o.add_argument("--weights")

    c = sub.add_parser("check", help="sweep every compatible pair of an instance")
    c.add_argument("instance")
    c.add_argument("--samples", type=int, default=5)
    c.add_argument("--seed", type=int, default=0)

    g = sub.add_parser("gen", help="emit a builtin instance or witness")
    g.add_argument("name", choices=sorted(GENERATORS))
    g.add_argument("params", nargs="*", type=int)
    g.add_argument("--instance-out")
    g.add_argument("--pair-out")
    return p


def _load(args):
    I = formats.instance_from_dict(formats.read_json(args.instance))
    P1, P2 = formats.pair_from_dict(I, formats.read_json(args.pair))
    w = None
    if getattr(args, "weights", None):
        w = formats.weights_from_dict(I, formats.read_json(args.weights), required=P1.union | P2.union)
    return I, P1, P2, w


def _write(path, doc) -> None:
    Path(path).write_text(formats.dumps(doc) + "\n", encoding="utf-8")


def _run(args) -> tuple[dict, str]:
    if args.command == "gen":
        doc = cmd_gen(args.name, args.params)
        if "pair" in doc:
            if args.instance_out:
                _write(args.instance_out, doc["instance"])
            if args.pair_out:
                _write(args.pair_out, doc["pair"])
        elif args.instance_out:
            _write(args.instance_out, doc)
        return doc, f"generated {args.name}"
    if args.command == "check":
        I = formats.instance_from_dict(formats.read_json(args.instance))
        doc = cmd_check(I, args.samples, args.seed)
        return doc, f"{doc['checks']} checks over {doc['pairs']} pairs, {doc['violations']} violations"
    I, P1, P2, w = _load(args)
    if args.command == "solve":
        bij = None
        if args.bijections:
            bij = formats.bijections_from_dict(I, formats.read_json(args.bijections))
        doc = cmd_solve(I, P1, P2, w, args.solver, bij)
        if args.out:
            _write(args.out, {"steps": doc["steps"], "summary": doc["summary"]})
        s, b = doc["summary"], doc["bounds"]
        return doc, (f"length {s['length']} (bound {b['length_bound']}), weight {s['weight']} "
                     f"(bound {b['weight_bound']}), max usage {s['max_usage']}")
    if args.command == "verify":
        seq = formats.sequence_from_dict(I, formats.read_json(args.sequence))
        doc = cmd_verify(I, P1, P2, seq, w)
        s = doc["summary"]
        return doc, f"valid={s['valid']} length {s['length']} weight {s['weight']} max usage {s['max_usage']}"
    doc = cmd_oracle(I, P1, P2, w)
    return doc, f"distance {doc['distance']}, weighted distance {doc['weighted_distance']}"


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _parser().parse_args(argv)
    try:
        doc, line = _run(args)
    except MexError as exc:
        print(formats.dumps({"error": type(exc).__name__, "message": str(exc)}))
        print(f"mex {args.command}: {exc}", file=sys.stderr)
        return exit_code(exc)
    print(formats.dumps(doc))
    print(f"mex {args.command}: {line}", file=sys.stderr)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
