"""Monte Carlo sweeps of mean makespan against the fiducial machine."""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple

import numpy as np

from .core import ProcessingTimeTable, _as_table, fiducial_makespans
from .distributions import DistributionSpec, substream

__all__ = [
    "RULES",
    "RunningStats",
    "SweepResult",
    "RuleComparison",
    "reorder_jobs",
    "trial_makespans",
    "monte_carlo_sweep",
    "compare_rules",
]

RULES = ("normal", "spt", "lpt")


def reorder_jobs(table: ProcessingTimeTable, rule: str) -> ProcessingTimeTable:
    """Reorder job columns by machine 1's processing times.

    ``spt`` sorts ascending, ``lpt`` descending; ties keep the original job
    order. ``normal`` returns the table unchanged.
    """
    table = _as_table(table)
    if rule == "normal":
        return table
    key = table.x[0]
    if rule == "spt":
        order = np.argsort(key, kind="stable")
    elif rule == "lpt":
        order = np.argsort(-key, kind="stable")
    else:
        raise ValueError(f"unknown rule {rule!r}; expected one of {RULES}")
    return ProcessingTimeTable(table.x[:, order])


class RunningStats:
    """Elementwise running mean and variance (Welford), mergeable (Chan et al.)."""

    def __init__(self, size: int):
        self.count = 0
        self.mean = np.zeros(size)
        self.m2 = np.zeros(size)

    def push(self, values) -> None:
        values = np.asarray(values, dtype=float)
        self.count += 1
        delta = values - self.mean
        self.mean += delta / self.count
        self.m2 += delta * (values - self.mean)

    def merge(self, other: "RunningStats") -> "RunningStats":
        out = RunningStats(self.mean.size)
        n = self.count + other.count
        if n == 0:
            return out
        delta = other.mean - self.mean
        out.count = n
        out.mean = self.mean + delta * (other.count / n)
        out.m2 = self.m2 + other.m2 + delta**2 * (self.count * other.count / n)
        return out

    @property
    def stddev(self) -> np.ndarray:
        if self.count < 2:
            return np.zeros_like(self.mean)
        return np.sqrt(self.m2 / (self.count - 1))

    @property
    def stderr(self) -> np.ndarray:
        if self.count < 1:
            return np.zeros_like(self.mean)
        return self.stddev / math.sqrt(self.count)


@dataclass(frozen=True)
class SweepResult:
    machines: int
    jobs: int
    spec: DistributionSpec
    rule: str
    trials: int
    seed: int
    mean: np.ndarray
    stddev: np.ndarray
    stderr: np.ndarray

    @property
    def nu(self) -> np.ndarray:
        return np.arange(1, self.machines + 1)

    def metadata(self) -> dict:
        return {
            "machines": self.machines,
            "jobs": self.jobs,
            "spec": self.spec.to_dict(),
            "rule": self.rule,
            "trials": self.trials,
            "seed": self.seed,
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["nu", "mean", "stddev", "stderr"])
        for k in range(self.machines):
            w.writerow([k + 1, repr(float(self.mean[k])), repr(float(self.stddev[k])), repr(float(self.stderr[k]))])
        return buf.getvalue()

    def save(self, path) -> tuple[Path, Path]:
        """Write ``path`` (CSV) and ``path`` + ``.json`` (metadata sidecar)."""
        path = Path(path)
        sidecar = sidecar_path(path)
        path.write_text(self.to_csv())
        sidecar.write_text(json.dumps(self.metadata(), indent=2) + "\n")
        return path, sidecar

    @classmethod
    def load(cls, path) -> "SweepResult":
        path = Path(path)
        nu, mean, sd, se = read_sweep_csv(path.read_text())
        meta = json.loads(sidecar_path(path).read_text())
        if len(nu) != meta["machines"] or not np.array_equal(nu, np.arange(1, len(nu) + 1)):
            raise ValueError(f"{path}: nu column does not run 1..{meta['machines']}")
        return cls(
            machines=meta["machines"],
            jobs=meta["jobs"],
            spec=DistributionSpec.from_dict(meta["spec"]),
            rule=meta["rule"],
            trials=meta["trials"],
            seed=meta["seed"],
            mean=mean,
            stddev=sd,
            stderr=se,
        )


def sidecar_path(path) -> Path:
    path = Path(path)
    return path.with_name(path.name + ".json")


def read_sweep_csv(text: str) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Parse ``nu,mean,stddev,stderr`` rows; returns the four columns."""
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or [c.strip() for c in rows[0]] != ["nu", "mean", "stddev", "stderr"]:
        raise ValueError("sweep CSV must start with header nu,mean,stddev,stderr")
    body = [r for r in rows[1:] if r]
    if not body:
        raise ValueError("sweep CSV has no data rows")
    try:
        data = np.array([[float(c) for c in r] for r in body])
    except ValueError as exc:
        raise ValueError(f"sweep CSV: {exc}") from None
    if data.shape[1] != 4:
        raise ValueError("sweep CSV rows must have 4 columns")
    return data[:, 0].astype(int), data[:, 1], data[:, 2], data[:, 3]


def trial_makespans(spec: DistributionSpec, machines: int, jobs: int, seed: int, trial: int, rule: str = "normal") -> np.ndarray:
    """Makespan for every fiducial machine on the table drawn for ``trial``."""
    x = spec.sample(substream(seed, trial), (machines, jobs))
    table = reorder_jobs(ProcessingTimeTable(x), rule)
    return fiducial_makespans(table)


def _trial_block(args) -> RunningStats:
    spec, machines, jobs, seed, rule, start, stop = args
    stats = RunningStats(machines)
    for trial in range(start, stop):
        stats.push(trial_makespans(spec, machines, jobs, seed, trial, rule))
    return stats


def monte_carlo_sweep(
    spec: DistributionSpec,
    machines: int,
    jobs: int,
    trials: int,
    seed: int,
    rule: str = "normal",
    workers: int = 1,
) -> SweepResult:
    """Average the fiducial sweep over ``trials`` random tables.

    Trial ``k`` uses ``substream(seed, k)``. Trials are cut into fixed
    blocks whose statistics are merged in block order, so the result is
    bit-identical for any ``workers``.
    """
    if machines < 1 or jobs < 1 or trials < 1:
        raise ValueError("machines, jobs and trials must be at least 1")
    if rule not in RULES:
        raise ValueError(f"unknown rule {rule!r}; expected one of {RULES}")
    block = 16
    blocks = [
        (spec, machines, jobs, seed, rule, start, min(start + block, trials))
        for start in range(0, trials, block)
    ]
    if workers > 1 and len(blocks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_trial_block, blocks))
    else:
        parts = [_trial_block(b) for b in blocks]
    stats = parts[0]
    for part in parts[1:]:
        stats = stats.merge(part)
    return SweepResult(
        machines=machines,
        jobs=jobs,
        spec=spec,
        rule=rule,
        trials=trials,
        seed=seed,
        mean=stats.mean,
        stddev=stats.stddev,
        stderr=stats.stderr,
    )


class RuleComparison(NamedTuple):
    min_rel: float
    max_rel: float
    relative: np.ndarray


def compare_rules(base: SweepResult, other: SweepResult) -> RuleComparison:
    """Relative change of ``other``'s mean makespan against ``base`` per fiducial machine."""
    if (base.machines, base.jobs, base.trials) != (other.machines, other.jobs, other.trials) or base.spec != other.spec:
        raise ValueError("sweeps differ in machines, jobs, trials or distribution")
    rel = (other.mean - base.mean) / base.mean
    return RuleComparison(float(rel.min()), float(rel.max()), rel)
