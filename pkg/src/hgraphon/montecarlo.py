"""Seeded trial runner estimating the decomposition probability.

Each trial samples one graph and decides whether its directed version has a
Hamiltonian decomposition.  Trial seeds are derived by hashing
(master seed, n, trial index), so every trial is reproducible in isolation
and results are identical for any worker count or execution order.
Estimates carry 95% Wilson score intervals, which stay honest next to 0 and
1 where the limit probabilities live.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .core import StepGraphon, graphon_to_dict, line_order, skeleton_graph
from .hamdec import (
    NOT_RUN,
    construct_line_decomposition,
    has_hamiltonian_decomposition,
    verify_decomposition,
)
from .sampling import group_counts, sample_graph

METHOD_MATCHING = "matching"
METHOD_CONSTRUCTIVE = "constructive"
METHOD_BOTH = "both"

_WILSON_Z = 1.959963984540054  # two-sided 95%


class NotTwoBlocks(ValueError):
    """Conditional split by sign(n_1 - n_2) needs a two-group graphon."""


@dataclass(frozen=True)
class ExperimentConfig:
    graphon: StepGraphon
    n_values: tuple[int, ...]
    trials_per_n: int
    master_seed: int
    method: str = METHOD_MATCHING

    def __post_init__(self):
        if not self.n_values or list(self.n_values) != sorted(set(self.n_values)):
            raise ValueError("n_values must be nonempty and strictly increasing")
        if any(n < 1 for n in self.n_values):
            raise ValueError("node counts must be positive")
        if self.trials_per_n < 1:
            raise ValueError("trials_per_n must be at least 1")
        if not 0 <= self.master_seed < 2**64:
            raise ValueError("master_seed must fit in 64 bits")
        if self.method not in (METHOD_MATCHING, METHOD_CONSTRUCTIVE, METHOD_BOTH):
            raise ValueError(f"unknown method {self.method!r}")


@dataclass(frozen=True)
class TrialRecord:
    n: int
    trial: int
    seed: int
    counts: tuple[int, ...]
    decision: bool
    constructive: str
    elapsed_ms: float

    def deterministic_fields(self) -> tuple:
        """Everything except wall-clock time; equal across reruns."""
        return (self.n, self.trial, self.seed, self.counts, self.decision, self.constructive)


@dataclass(frozen=True)
class Estimate:
    n: int
    trials: int
    successes: int
    estimate: float
    wilson_low: float
    wilson_high: float


def wilson_interval(successes: int, trials: int, z: float = _WILSON_Z) -> tuple[float, float]:
    """95% Wilson score interval; always inside [0,1] with positive width."""
    if trials < 1:
        raise ValueError("trials must be positive")
    if not 0 <= successes <= trials:
        raise ValueError("successes out of range")
    phat = successes / trials
    z2 = z * z
    denom = 1.0 + z2 / trials
    center = (phat + z2 / (2 * trials)) / denom
    spread = (
        z * ((phat * (1.0 - phat) / trials + z2 / (4 * trials * trials)) ** 0.5) / denom
    )
    return (max(0.0, center - spread), min(1.0, center + spread))


def trial_seed(master_seed: int, n: int, trial: int) -> int:
    """Stable 64-bit per-trial seed derived from (master seed, n, trial)."""
    digest = hashlib.sha256(
        b"hgraphon-trial:%d:%d:%d" % (master_seed, n, trial)
    ).digest()
    return int.from_bytes(digest[:8], "little")


def _run_trial(
    graphon: StepGraphon,
    n: int,
    trial: int,
    seed: int,
    method: str,
    order: tuple[int, ...] | None,
) -> TrialRecord:
    start = time.perf_counter()
    sg = sample_graph(graphon, n, seed)
    counts = group_counts(sg)

    constructive_outcome = NOT_RUN
    constructive_ok = False
    if method in (METHOD_CONSTRUCTIVE, METHOD_BOTH):
        assert order is not None
        result = construct_line_decomposition(sg, order)
        constructive_outcome = result.outcome
        if result.succeeded:
            assert result.decomposition is not None
            if not verify_decomposition(sg, result.decomposition):
                raise AssertionError("constructed decomposition failed verification")
            constructive_ok = True

    if method == METHOD_CONSTRUCTIVE:
        decision = constructive_ok
    else:
        decision, _ = has_hamiltonian_decomposition(sg)
    elapsed_ms = (time.perf_counter() - start) * 1000.0
    return TrialRecord(
        n=n,
        trial=trial,
        seed=seed,
        counts=counts,
        decision=decision,
        constructive=constructive_outcome,
        elapsed_ms=elapsed_ms,
    )


def run_trials(
    cfg: ExperimentConfig, workers: int = 1
) -> tuple[list[TrialRecord], list[Estimate]]:
    """Run the full grid; identical output for any worker count.

    With method constructive/both the graphon must have a path-with-end-loop
    skeleton (line_order raises otherwise).  With method constructive the
    decision column records constructive success, a sound lower bound for
    the exact decision.
    """
    order: tuple[int, ...] | None = None
    if cfg.method in (METHOD_CONSTRUCTIVE, METHOD_BOTH):
        order = line_order(skeleton_graph(cfg.graphon))

    tasks = []
    chunk = max(1, min(64, -(-cfg.trials_per_n // (max(1, workers) * 4))))
    for n in cfg.n_values:
        for start in range(0, cfg.trials_per_n, chunk):
            trials = list(range(start, min(start + chunk, cfg.trials_per_n)))
            tasks.append((cfg.graphon, n, trials, cfg.master_seed, cfg.method, order))

    records: list[TrialRecord] = []
    if workers <= 1:
        for task in tasks:
            records.extend(_run_task(task))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_run_task, tasks):
                records.extend(part)
    records.sort(key=lambda r: (r.n, r.trial))
    return records, estimates_from_records(records)


def _run_task(args) -> list[TrialRecord]:
    graphon, n, trials, master_seed, method, order = args
    return [
        _run_trial(graphon, n, trial, trial_seed(master_seed, n, trial), method, order)
        for trial in trials
    ]


def estimates_from_records(records: list[TrialRecord]) -> list[Estimate]:
    by_n: dict[int, list[TrialRecord]] = {}
    for record in records:
        by_n.setdefault(record.n, []).append(record)
    out = []
    for n in sorted(by_n):
        group = by_n[n]
        successes = sum(1 for r in group if r.decision)
        low, high = wilson_interval(successes, len(group))
        out.append(
            Estimate(
                n=n,
                trials=len(group),
                successes=successes,
                estimate=successes / len(group),
                wilson_low=low,
                wilson_high=high,
            )
        )
    return out


def conditional_split(records: list[TrialRecord]) -> dict[str, Estimate]:
    """Success frequencies keyed by sign(n_1 - n_2); ties reported separately.

    All records must come from a two-group graphon at a single n.
    """
    if not records:
        raise ValueError("no records to split")
    if any(len(r.counts) != 2 for r in records):
        raise NotTwoBlocks("conditional split needs exactly two groups")
    n_values = {r.n for r in records}
    if len(n_values) != 1:
        raise ValueError("records must share a single n")
    n = n_values.pop()
    buckets = {"n1_gt_n2": [], "n1_lt_n2": [], "tie": []}
    for r in records:
        n1, n2 = r.counts
        key = "n1_gt_n2" if n1 > n2 else ("n1_lt_n2" if n1 < n2 else "tie")
        buckets[key].append(r)
    out: dict[str, Estimate] = {}
    for key, group in buckets.items():
        if not group:
            continue
        successes = sum(1 for r in group if r.decision)
        low, high = wilson_interval(successes, len(group))
        out[key] = Estimate(
            n=n,
            trials=len(group),
            successes=successes,
            estimate=successes / len(group),
            wilson_low=low,
            wilson_high=high,
        )
    return out


# -- artifacts -----------------------------------------------------------

TRIAL_CSV_FLOAT_FORMAT = "%.3f"


def trials_csv_header(q: int) -> list[str]:
    return (
        ["n", "trial", "seed"]
        + [f"n_{i}" for i in range(1, q + 1)]
        + ["decision", "constructive_outcome", "elapsed_ms"]
    )


def write_trials_csv(records: list[TrialRecord], fh) -> None:
    if not records:
        raise ValueError("no records to write")
    q = len(records[0].counts)
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(trials_csv_header(q))
    for r in records:
        writer.writerow(
            [r.n, r.trial, r.seed]
            + list(r.counts)
            + [int(r.decision), r.constructive, TRIAL_CSV_FLOAT_FORMAT % r.elapsed_ms]
        )


def trials_csv_text(records: list[TrialRecord]) -> str:
    buf = io.StringIO()
    write_trials_csv(records, buf)
    return buf.getvalue()


def strip_elapsed_column(csv_text: str) -> str:
    """Project away the wall-clock column for reproducibility comparisons."""
    lines = csv_text.splitlines()
    return "\n".join(line.rsplit(",", 1)[0] for line in lines) + "\n"


def convergence_rows(records: list[TrialRecord]) -> list[dict]:
    """One row per n: estimate, Wilson bounds, mean elapsed milliseconds."""
    estimates = estimates_from_records(records)
    by_n: dict[int, list[TrialRecord]] = {}
    for r in records:
        by_n.setdefault(r.n, []).append(r)
    rows = []
    for est in estimates:
        mean_ms = sum(r.elapsed_ms for r in by_n[est.n]) / est.trials
        rows.append(
            {
                "n": est.n,
                "estimate": est.estimate,
                "ci_low": est.wilson_low,
                "ci_high": est.wilson_high,
                "mean_elapsed_ms": mean_ms,
            }
        )
    return rows


def write_convergence_csv(records: list[TrialRecord], fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["n", "estimate", "ci_low", "ci_high", "mean_elapsed_ms"])
    for row in convergence_rows(records):
        writer.writerow(
            [
                row["n"],
                "%.6f" % row["estimate"],
                "%.6f" % row["ci_low"],
                "%.6f" % row["ci_high"],
                "%.3f" % row["mean_elapsed_ms"],
            ]
        )


def summary_dict(cfg: ExperimentConfig, records: list[TrialRecord]) -> dict:
    estimates = estimates_from_records(records)
    constructive: dict[str, dict[str, int]] = {}
    if cfg.method in (METHOD_CONSTRUCTIVE, METHOD_BOTH):
        for r in records:
            tally = constructive.setdefault(str(r.n), {})
            tally[r.constructive] = tally.get(r.constructive, 0) + 1
    out = {
        "graphon": graphon_to_dict(cfg.graphon),
        "method": cfg.method,
        "master_seed": cfg.master_seed,
        "trials_per_n": cfg.trials_per_n,
        "estimates": [
            {
                "n": e.n,
                "trials": e.trials,
                "successes": e.successes,
                "estimate": e.estimate,
                "wilson_low": e.wilson_low,
                "wilson_high": e.wilson_high,
            }
            for e in estimates
        ],
    }
    if constructive:
        out["constructive_outcomes"] = constructive
    return out


def write_summary_json(cfg: ExperimentConfig, records: list[TrialRecord], fh) -> None:
    json.dump(summary_dict(cfg, records), fh, indent=2)
    fh.write("\n")
