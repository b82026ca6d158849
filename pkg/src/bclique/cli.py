"""Command line: build or load graphs, run the protocols, check the oracles.

Every command writes one JSON document to stdout.  Exit codes: 0 success,
1 verification failure or any module error (reported in an "error" field),
2 usage problems.  Stdout is byte-identical across repeated invocations;
wall-clock timing goes to stderr only.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import verify
from .clique import adjacency_inputs, ball_inputs
from .errors import BcliqueError
from .graph import (
    components_and_forest,
    core_peel,
    gen_graph,
    load_graph,
    serialize_graph,
    tilde_global,
)
from .intmath import ceil_log2, pow_ceil
from .protocols import (
    connectivity_one_round_r,
    prune_one_round,
    spanning_forest_multiround,
    sparsity_parameter,
)
from .sketch import cached_params

SCHEMA_VERSION = 1


@dataclass
class RunReport:
    """One protocol run: what ran, what came out, and whether the brute-force
    oracle agrees.  wall_ms is kept off the stdout document so repeated runs
    stay byte-identical."""

    protocol: str
    n: int
    parameters: dict
    rounds_used: int
    per_node_bits: int
    labels: list | None
    forest: list | None
    sketch_p: str | None
    sketch_xbar: int | None
    oracle_agreement: bool
    wall_ms: float
    extra: dict = field(default_factory=dict)

    def to_json_dict(self, include_timing: bool = False) -> dict:
        doc = {
            "protocol": self.protocol,
            "n": self.n,
            "parameters": self.parameters,
            "rounds_used": self.rounds_used,
            "per_node_bits": self.per_node_bits,
            "labels": self.labels,
            "forest": self.forest,
            "oracle_agreement": self.oracle_agreement,
        }
        if self.sketch_p is not None:
            doc["p"] = self.sketch_p
            doc["xbar"] = self.sketch_xbar
        if include_timing:
            doc["wall_ms"] = self.wall_ms
        doc.update(self.extra)
        return doc


def _emit(doc: dict) -> None:
    sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")


def _fail(command: str, exc: BcliqueError) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "error": {"type": type(exc).__name__, "message": str(exc)},
    }


def _read_graph(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return load_graph(fh.read())


def _parse_eps(text: str) -> Fraction:
    try:
        eps = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"cannot parse eps {text!r}") from None
    if not 0 < eps <= 1:
        raise argparse.ArgumentTypeError("eps must be in (0, 1]")
    return eps


def _cmd_params(args) -> tuple[dict, int]:
    params = cached_params(args.n, args.d)
    bound = 2 * args.d * ceil_log2(args.n + 1) + ceil_log2(args.n) + 2
    return {
        "schema_version": SCHEMA_VERSION,
        "command": "params",
        "n": args.n,
        "d": args.d,
        "p": str(params.p),
        "xbar": params.xbar,
        "p_bits": params.p_bits,
        "p_bits_bound": bound,
        "domain_size": params.domain_size,
    }, 0


def _cmd_prune(args) -> tuple[dict, int]:
    g = _read_graph(args.graph)
    t0 = time.perf_counter()
    result, transcript = prune_one_round(adjacency_inputs(g), args.d)
    wall_ms = (time.perf_counter() - t0) * 1000.0
    seq, remaining = core_peel(g, args.d)
    agree = result.sequence == seq and result.remaining == remaining
    params = cached_params(g.n, args.d)
    report = RunReport(
        protocol="prune_one_round",
        n=g.n,
        parameters={"d": args.d},
        rounds_used=transcript.rounds_used,
        per_node_bits=transcript.per_node_bits,
        labels=None,
        forest=None,
        sketch_p=str(params.p),
        sketch_xbar=params.xbar,
        oracle_agreement=agree,
        wall_ms=wall_ms,
        extra={
            "sequence": [[node, list(nbrs)] for node, nbrs in result.sequence],
            "remaining": list(result.remaining),
            "residual_degrees": [[v, deg] for v, deg in result.residual_degrees],
            "fully_reconstructed": result.fully_reconstructed,
        },
    )
    return _finish(args, "prune", report, transcript)


def _cmd_components(args) -> tuple[dict, int]:
    g = _read_graph(args.graph)
    t0 = time.perf_counter()
    labels, forest, transcript = spanning_forest_multiround(adjacency_inputs(g), args.eps)
    wall_ms = (time.perf_counter() - t0) * 1000.0
    oracle_labels, _ = components_and_forest(g)
    agree = labels == oracle_labels and verify.forest_is_valid(g, labels, forest)
    budget = -(-args.eps.denominator // args.eps.numerator)
    report = RunReport(
        protocol="spanning_forest_multiround",
        n=g.n,
        parameters={"eps": str(args.eps)},
        rounds_used=transcript.rounds_used,
        per_node_bits=transcript.per_node_bits,
        labels=list(labels),
        forest=[list(e) for e in forest],
        sketch_p=None,
        sketch_xbar=None,
        oracle_agreement=agree,
        wall_ms=wall_ms,
        extra={
            "component_count": len(set(labels)),
            "round_budget": budget,
            "neighbor_cap": max(1, pow_ceil(g.n, args.eps)),
        },
    )
    return _finish(args, "components", report, transcript)


def _cmd_one_round(args) -> tuple[dict, int]:
    g = _read_graph(args.graph)
    t0 = time.perf_counter()
    labels, forest, transcript = connectivity_one_round_r(ball_inputs(g, args.r), args.r)
    wall_ms = (time.perf_counter() - t0) * 1000.0
    oracle_labels, _ = components_and_forest(g)
    tilde = tilde_global(g, args.r).tilde
    agree = (labels == oracle_labels
             and verify.forest_is_valid(g, labels, forest)
             and set(forest) <= set(tilde.edges()))
    s = sparsity_parameter(g.n, args.r)
    params = cached_params(g.n, s)
    report = RunReport(
        protocol="connectivity_one_round_r",
        n=g.n,
        parameters={"r": args.r, "s": s},
        rounds_used=transcript.rounds_used,
        per_node_bits=transcript.per_node_bits,
        labels=list(labels),
        forest=[list(e) for e in forest],
        sketch_p=str(params.p),
        sketch_xbar=params.xbar,
        oracle_agreement=agree,
        wall_ms=wall_ms,
        extra={
            "component_count": len(set(labels)),
            "removed_edge_count": len(g.edges()) - len(tilde.edges()),
        },
    )
    return _finish(args, "one-round", report, transcript)


def _finish(args, command: str, report: RunReport, transcript) -> tuple[dict, int]:
    doc = {"schema_version": SCHEMA_VERSION, "command": command}
    doc.update(report.to_json_dict())
    if getattr(args, "transcript", False):
        doc["transcript"] = transcript.to_json_dict()
    print(f"elapsed_ms={report.wall_ms:.1f}", file=sys.stderr)
    if not report.oracle_agreement:
        doc["error"] = {"type": "OracleMismatch",
                        "message": "protocol output disagrees with the brute-force oracle"}
        return doc, 1
    return doc, 0


def _cmd_gen(args) -> tuple[dict, int]:
    extras = {}
    if args.q is not None:
        extras["q"] = args.q
    if args.d is not None:
        extras["d"] = args.d
    g = gen_graph(args.kind, args.n, seed=args.seed, **extras)
    text = serialize_graph(g)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return {
        "schema_version": SCHEMA_VERSION,
        "command": "gen",
        "kind": args.kind,
        "n": args.n,
        "seed": args.seed,
        "extras": extras,
        "edge_count": len(g.edges()),
        "out": args.out,
        "graph": None if args.out else text,
    }, 0


def _cmd_verify(args) -> tuple[dict, int]:
    result = verify.run_suite(args.suite)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "command": "verify",
        "suite": args.suite,
        "passed": result["passed"],
        "case_count": len(result["cases"]),
        "cases": result["cases"],
    }
    return doc, 0 if result["passed"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bclique",
        description="Deterministic single-broadcast graph protocols with oracle checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("params", help="print sketch parameters for (n, d)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(handler=_cmd_params)

    p = sub.add_parser("prune", help="one-round low-degree pruning")
    p.add_argument("--graph", required=True, help="edge-list file")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--transcript", action="store_true", help="embed the full transcript")
    p.set_defaults(handler=_cmd_prune)

    p = sub.add_parser("components", help="multi-round spanning forest")
    p.add_argument("--graph", required=True)
    p.add_argument("--eps", type=_parse_eps, required=True,
                   help="rational in (0,1], e.g. 0.5 or 1/3")
    p.add_argument("--transcript", action="store_true")
    p.set_defaults(handler=_cmd_components)

    p = sub.add_parser("one-round", help="one-round connectivity from radius-r views")
    p.add_argument("--graph", required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--transcript", action="store_true")
    p.set_defaults(handler=_cmd_one_round)

    p = sub.add_parser("gen", help="write a deterministic test graph")
    p.add_argument("--kind", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--q", type=float, default=None, help="edge probability for gnp")
    p.add_argument("--d", type=int, default=None, help="back-degree for random_degenerate")
    p.add_argument("--out", default=None, help="output file (default: inline in the report)")
    p.set_defaults(handler=_cmd_gen)

    p = sub.add_parser("verify", help="run the oracle-equivalence suites")
    p.add_argument("--suite", choices=("small", "full"), default="small")
    p.set_defaults(handler=_cmd_verify)

    return parser


def run_command(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        doc, code = args.handler(args)
    except BcliqueError as exc:
        _emit(_fail(args.command, exc))
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(doc)
    return code


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
