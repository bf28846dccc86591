"""Command-line interface.

Subcommands:
  analyze    condition report for a graphon file (JSON on stdout)
  sample     draw one graph and write the edge-list dump
  decide     Hamiltonian-decomposition decision for a graph dump
  mc         Monte Carlo estimate grid for a graphon file
  reproduce  run a pinned preset

Exit codes: 0 success, 2 invalid input, 3 violated precondition
(--constructive on a graphon whose skeleton is not a path with an end
self-loop).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .conditions import ConditionReport, classify
from .core import (
    GraphonError,
    NotALineGraphon,
    line_order,
    load_graphon,
    skeleton_graph,
)
from .hamdec import (
    NOT_RUN,
    construct_line_decomposition,
    has_hamiltonian_decomposition,
    verify_decomposition,
)
from .montecarlo import (
    ExperimentConfig,
    run_trials,
    summary_dict,
    write_convergence_csv,
    write_summary_json,
    write_trials_csv,
)
from .presets import PRESETS
from .sampling import MalformedGraphDump, load_graph, sample_graph, save_graph

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_PRECONDITION = 3


def report_to_dict(report: ConditionReport) -> dict:
    membership = {
        "status": report.membership.status,
        "certificate": (
            [str(a) for a in report.membership.certificate]
            if report.membership.certificate is not None
            else None
        ),
        "infeasibility_witness": report.membership.infeasibility_witness,
    }
    return {
        "condition1": report.condition1,
        "condition2A": report.condition2A,
        "condition2B": report.condition2B,
        "polytope_rank": report.polytope_rank,
        "verdict": report.verdict,
        "membership": membership,
    }


def _fail(message: str, code: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def cmd_analyze(args) -> int:
    try:
        graphon = load_graphon(args.graphon)
        report = classify(graphon)
    except GraphonError as exc:
        return _fail(f"{type(exc).__name__}: {exc}", EXIT_INPUT)
    except OSError as exc:
        return _fail(str(exc), EXIT_INPUT)
    print(json.dumps(report_to_dict(report), indent=2))
    return EXIT_OK


def cmd_sample(args) -> int:
    try:
        graphon = load_graphon(args.graphon)
        if args.n < 1:
            raise ValueError("--n must be at least 1")
        sg = sample_graph(graphon, args.n, args.seed)
        save_graph(sg, args.out)
    except (GraphonError, ValueError) as exc:
        return _fail(f"{type(exc).__name__}: {exc}", EXIT_INPUT)
    except OSError as exc:
        return _fail(str(exc), EXIT_INPUT)
    return EXIT_OK


def cmd_decide(args) -> int:
    try:
        sg = load_graph(args.graph)
    except (MalformedGraphDump, OSError) as exc:
        return _fail(f"{type(exc).__name__}: {exc}", EXIT_INPUT)

    payload: dict = {}
    if args.constructive:
        if not args.graphon:
            return _fail("--constructive requires --graphon", EXIT_INPUT)
        try:
            graphon = load_graphon(args.graphon)
        except (GraphonError, OSError) as exc:
            return _fail(f"{type(exc).__name__}: {exc}", EXIT_INPUT)
        try:
            order = line_order(skeleton_graph(graphon))
        except NotALineGraphon as exc:
            return _fail(f"NotALineGraphon: {exc}", EXIT_PRECONDITION)
        if graphon.q != sg.q:
            return _fail(
                f"graph dump has q={sg.q} groups, graphon has q={graphon.q}", EXIT_INPUT
            )
        result = construct_line_decomposition(sg, order)
        payload["constructive_outcome"] = result.outcome
        if result.succeeded:
            assert result.decomposition is not None
            if not verify_decomposition(sg, result.decomposition):
                raise AssertionError("constructed decomposition failed verification")
            payload["decision"] = True
            payload["method"] = "constructive"
            payload["cycles"] = [list(c) for c in result.decomposition.cycles]
            print(json.dumps(payload, indent=2))
            return EXIT_OK
        # fall through: constructive is best-effort, matching is authoritative

    decision, decomposition = has_hamiltonian_decomposition(sg)
    payload["decision"] = decision
    payload["method"] = "matching"
    if decision:
        assert decomposition is not None
        if not verify_decomposition(sg, decomposition):
            raise AssertionError("matching decomposition failed verification")
        payload["cycles"] = [list(c) for c in decomposition.cycles]
    print(json.dumps(payload, indent=2))
    return EXIT_OK


def _write_run_artifacts(cfg: ExperimentConfig, records, out_dir: str) -> None:
    os.makedirs(out_dir, exist_ok=True)
    with open(os.path.join(out_dir, "trials.csv"), "w", encoding="utf-8", newline="") as fh:
        write_trials_csv(records, fh)
    with open(os.path.join(out_dir, "convergence.csv"), "w", encoding="utf-8", newline="") as fh:
        write_convergence_csv(records, fh)
    with open(os.path.join(out_dir, "summary.json"), "w", encoding="utf-8", newline="\n") as fh:
        write_summary_json(cfg, records, fh)


def _print_summary(cfg: ExperimentConfig, records) -> None:
    summary = summary_dict(cfg, records)
    for est in summary["estimates"]:
        print(
            f"n={est['n']}: {est['successes']}/{est['trials']} "
            f"estimate={est['estimate']:.4f} "
            f"wilson=[{est['wilson_low']:.4f}, {est['wilson_high']:.4f}]"
        )


def _run_and_write(cfg: ExperimentConfig, out_dir: str, threads: int) -> int:
    try:
        records, _ = run_trials(cfg, workers=threads)
        _write_run_artifacts(cfg, records, out_dir)
    except OSError as exc:
        return _fail(str(exc), EXIT_INPUT)
    _print_summary(cfg, records)
    return EXIT_OK


def cmd_mc(args) -> int:
    try:
        graphon = load_graphon(args.graphon)
        n_values = tuple(int(tok) for tok in args.n_values.split(","))
        cfg = ExperimentConfig(
            graphon=graphon,
            n_values=n_values,
            trials_per_n=args.trials,
            master_seed=args.master_seed,
            method=args.method,
        )
    except (GraphonError, ValueError) as exc:
        return _fail(f"{type(exc).__name__}: {exc}", EXIT_INPUT)
    except OSError as exc:
        return _fail(str(exc), EXIT_INPUT)
    try:
        return _run_and_write(cfg, args.out, args.threads)
    except NotALineGraphon as exc:
        return _fail(f"NotALineGraphon: {exc}", EXIT_PRECONDITION)


def cmd_reproduce(args) -> int:
    preset = PRESETS[args.preset]
    print(f"preset {preset.name}: {preset.description}")
    return _run_and_write(preset.config, args.out, args.threads)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hgraphon",
        description="step-graphon analysis and Hamiltonian-decomposition experiments",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="condition report for a graphon file")
    p.add_argument("--graphon", required=True, help="graphon JSON file")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("sample", help="draw one graph and write a dump file")
    p.add_argument("--graphon", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("decide", help="Hamiltonian-decomposition decision for a dump")
    p.add_argument("--graph", required=True, help="graph dump file")
    p.add_argument("--constructive", action="store_true")
    p.add_argument("--graphon", help="graphon JSON file (with --constructive)")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("mc", help="Monte Carlo estimates over an n grid")
    p.add_argument("--graphon", required=True)
    p.add_argument("--n-values", required=True, help="comma-separated node counts")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--master-seed", type=int, required=True)
    p.add_argument("--method", choices=["matching", "constructive", "both"], default="matching")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--threads", type=int, default=1, help="worker count (does not affect results)")
    p.set_defaults(func=cmd_mc)

    p = sub.add_parser("reproduce", help="run a pinned preset")
    p.add_argument("--preset", choices=sorted(PRESETS), required=True)
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--threads", type=int, default=1, help="worker count (does not affect results)")
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
