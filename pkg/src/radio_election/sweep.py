"""Seeded Monte Carlo sweeps over protocol x topology family x n."""

from __future__ import annotations

import csv
import io
import json
import logging
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product

import yaml

from .audit import audit_trace
from .election import ALLOWED_MODELS, DEFAULT_MODEL, PROTOCOLS, ProtocolSpec, run_protocol
from .network import DEFAULT_ROUND_CAP, RoundCapExceeded
from .rng import derive_seed
from .topology import FAMILIES, TopologySpec, build_topology

log = logging.getLogger(__name__)

AUDITED = ("decay", "pmb", "witness", "selection", "search", "beep_wave", "coverage")

STATS_COLUMNS = [
    "cell", "protocol", "model", "family", "n", "trials", "mean_D",
    "success_rate", "mean_rounds", "std_rounds", "min_rounds", "max_rounds",
    "mean_iterations", "aborts",
] + [f"violations_{c}" for c in AUDITED]


class SpecError(ValueError):
    pass


@dataclass(frozen=True)
class ExperimentSpec:
    protocol: str
    families: tuple[str, ...]
    n_values: tuple[int, ...]
    trials: int
    seed: int = 0
    model: str | None = None
    alpha: int = 4
    p: float = 0.1
    width: int = 2
    D: int | None = None
    round_cap: int = DEFAULT_ROUND_CAP
    workers: int = 1
    thresholds: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.protocol not in PROTOCOLS:
            raise SpecError(f"unknown protocol {self.protocol!r}")
        model = self.model or DEFAULT_MODEL[self.protocol]
        if model not in ALLOWED_MODELS[self.protocol]:
            raise SpecError(f"protocol {self.protocol!r} cannot run under model {model!r}")
        bad = [f for f in self.families if f not in FAMILIES]
        if bad:
            raise SpecError(f"unknown families {bad}")
        if self.trials < 1:
            raise SpecError("trials must be positive")
        if any(n < 1 for n in self.n_values):
            raise SpecError("n values must be positive")
        unknown = set(self.thresholds) - {"min_success_rate", "max_violation_rate"}
        if unknown:
            raise SpecError(f"unknown thresholds {sorted(unknown)}")

    @property
    def resolved_model(self) -> str:
        return self.model or DEFAULT_MODEL[self.protocol]

    def cells(self) -> list[tuple[str, int]]:
        return list(product(self.families, self.n_values))

    @classmethod
    def from_mapping(cls, raw: dict) -> "ExperimentSpec":
        raw = dict(raw)
        try:
            families = raw.pop("families")
            n_values = raw.pop("n")
        except KeyError as exc:
            raise SpecError(f"spec lacks {exc}") from None
        if isinstance(families, str):
            families = [families]
        if isinstance(n_values, int):
            n_values = [n_values]
        known = set(cls.__dataclass_fields__) - {"families", "n_values"}
        extra = set(raw) - known
        if extra:
            raise SpecError(f"unknown spec keys {sorted(extra)}")
        return cls(families=tuple(families or ()), n_values=tuple(n_values or ()), **raw)

    @classmethod
    def load(cls, path) -> "ExperimentSpec":
        with open(path) as fh:
            raw = yaml.safe_load(fh)
        if not isinstance(raw, dict):
            raise SpecError("spec file must hold a mapping")
        return cls.from_mapping(raw)


def run_one(spec: ExperimentSpec, cell: int, family: str, n: int, trial: int) -> dict:
    """One seeded run, audited from its primitive summaries."""
    seed = derive_seed(spec.seed, cell, trial)
    topo = build_topology(TopologySpec(family, n, seed=seed, p=spec.p, width=spec.width))
    proto = ProtocolSpec(spec.protocol, spec.model, spec.alpha, spec.D, spec.round_cap, record="events")
    rec = {"cell": cell, "trial": trial, "family": family, "seed": seed}
    try:
        outcome, trace = run_protocol(topo, proto, seed)
    except RoundCapExceeded:
        rec.update({"protocol": spec.protocol, "n": n, "D": topo.D, "success": False,
                    "leader_node": None, "output_id": None, "rounds": spec.round_cap,
                    "iterations": None, "aborted": True, "violations": {}})
        return rec
    report = audit_trace(trace, topo)
    rec.update(outcome.to_record())
    rec["seed"] = seed
    rec["aborted"] = False
    rec["violations"] = report.counts()
    return rec


def _run_cell_trial(args):
    return run_one(*args)


def aggregate(spec: ExperimentSpec, runs: list[dict]) -> list[dict]:
    rows = []
    by_cell: dict[int, list[dict]] = {}
    for r in sorted(runs, key=lambda r: (r["cell"], r["trial"])):
        by_cell.setdefault(r["cell"], []).append(r)
    for cell, (family, n) in enumerate(spec.cells()):
        rs = by_cell.get(cell, [])
        done = [r for r in rs if not r["aborted"]]
        rounds = [r["rounds"] for r in done]
        iters = [r["iterations"] for r in done]
        row = {
            "cell": cell,
            "protocol": spec.protocol,
            "model": spec.resolved_model,
            "family": family,
            "n": n,
            "trials": len(rs),
            "mean_D": _f(statistics.fmean(r["D"] for r in rs)) if rs else "",
            "success_rate": _f(sum(r["success"] for r in rs) / len(rs)) if rs else "",
            "mean_rounds": _f(statistics.fmean(rounds)) if rounds else "",
            "std_rounds": _f(statistics.pstdev(rounds)) if rounds else "",
            "min_rounds": min(rounds) if rounds else "",
            "max_rounds": max(rounds) if rounds else "",
            "mean_iterations": _f(statistics.fmean(iters)) if iters else "",
            "aborts": len(rs) - len(done),
        }
        for c in AUDITED:
            row[f"violations_{c}"] = sum(1 for r in rs if r["violations"].get(c))
        rows.append(row)
    return rows


def _f(x: float) -> str:
    return f"{x:.6f}"


def stats_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=STATS_COLUMNS, lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow(row)
    return buf.getvalue()


def runs_jsonl(runs: list[dict]) -> str:
    ordered = sorted(runs, key=lambda r: (r["cell"], r["trial"]))
    return "".join(json.dumps(r, separators=(",", ":")) + "\n" for r in ordered)


def breaches(spec: ExperimentSpec, rows: list[dict]) -> list[str]:
    out = []
    lo = spec.thresholds.get("min_success_rate")
    vmax = spec.thresholds.get("max_violation_rate")
    for row in rows:
        if not row["trials"]:
            continue
        if lo is not None and float(row["success_rate"]) < lo:
            out.append(f"cell {row['cell']} ({row['family']}, n={row['n']}): "
                       f"success rate {row['success_rate']} < {lo}")
        if vmax is not None:
            for c in AUDITED:
                rate = row[f"violations_{c}"] / row["trials"]
                if rate > vmax:
                    out.append(f"cell {row['cell']}: {c} violation rate {rate:.4f} > {vmax}")
    return out


def run_sweep(spec: ExperimentSpec) -> tuple[list[dict], list[dict]]:
    """Execute every (cell, trial); returns (stats rows, run records)."""
    jobs = [(spec, cell, family, n, trial)
            for cell, (family, n) in enumerate(spec.cells())
            for trial in range(spec.trials)]
    t0 = time.perf_counter()
    if spec.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(spec.workers) as pool:
            runs = list(pool.map(_run_cell_trial, jobs, chunksize=16))
    else:
        runs = [run_one(*job) for job in jobs]
    log.info("sweep: %d runs in %.1fs", len(runs), time.perf_counter() - t0)
    return aggregate(spec, runs), runs
