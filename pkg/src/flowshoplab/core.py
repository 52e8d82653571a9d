"""Deterministic permutation-flowshop scheduling around a fiducial machine.

All public functions take and return 1-based machine/job indices. Arrays
inside :class:`ProcessingTimeTable` and :class:`Schedule` are ordinary
0-based numpy arrays of shape ``(machines, jobs)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

__all__ = [
    "ProcessingTimeTable",
    "Schedule",
    "Violation",
    "TABLE2",
    "row_totals",
    "bottleneck",
    "schedule_fiducial",
    "makespan",
    "sweep_fiducial",
    "fiducial_makespans",
    "validate",
    "normalize",
    "reverse_table",
]


@dataclass(frozen=True, eq=False)
class ProcessingTimeTable:
    """M x N matrix of nonnegative processing times (row = machine, column = job)."""

    x: np.ndarray

    def __post_init__(self):
        arr = np.array(self.x, dtype=float, copy=True)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(f"processing times must be a non-empty 2-D matrix, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("processing times must be finite")
        if np.any(arr < 0):
            mu, i = np.argwhere(arr < 0)[0]
            raise ValueError(f"negative processing time at machine {mu + 1}, job {i + 1}")
        arr.setflags(write=False)
        object.__setattr__(self, "x", arr)

    @property
    def machines(self) -> int:
        return self.x.shape[0]

    @property
    def jobs(self) -> int:
        return self.x.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.x.shape

    def __getitem__(self, key):
        """``table[mu, i]`` with 1-based machine and job."""
        mu, i = key
        _check_index(mu, self.machines, "machine")
        _check_index(i, self.jobs, "job")
        return self.x[mu - 1, i - 1]

    def __eq__(self, other):
        if not isinstance(other, ProcessingTimeTable):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self.x, other.x))

    def __hash__(self):
        return hash((self.shape, self.x.tobytes()))

    def tolist(self) -> list[list[float]]:
        return self.x.tolist()


# Worked example: N = 8 jobs on M = 7 machines.
TABLE2 = ProcessingTimeTable(
    [
        [2, 5, 4, 1, 3, 1, 2, 4],
        [2, 3, 2, 4, 3, 4, 2, 5],
        [3, 5, 4, 1, 5, 1, 3, 4],
        [4, 5, 1, 1, 3, 1, 2, 1],
        [1, 2, 4, 2, 5, 1, 4, 1],
        [5, 2, 3, 1, 4, 1, 5, 2],
        [1, 1, 1, 4, 1, 4, 4, 1],
    ]
)


@dataclass(frozen=True, eq=False)
class Schedule:
    """Start and end times for every (machine, job) cell.

    Times are measured so that job 1 on the fiducial machine starts at
    ``origin`` (0 unless the schedule was shifted by :func:`normalize`);
    machines upstream of the fiducial one usually start at negative times.
    """

    fiducial: int
    starts: np.ndarray
    ends: np.ndarray
    origin: float = 0.0

    def __post_init__(self):
        starts = np.array(self.starts, dtype=float, copy=True)
        ends = np.array(self.ends, dtype=float, copy=True)
        if starts.shape != ends.shape or starts.ndim != 2:
            raise ValueError("starts and ends must be 2-D arrays of equal shape")
        _check_index(self.fiducial, starts.shape[0], "fiducial machine")
        starts.setflags(write=False)
        ends.setflags(write=False)
        object.__setattr__(self, "starts", starts)
        object.__setattr__(self, "ends", ends)

    @property
    def shape(self) -> tuple[int, int]:
        return self.starts.shape

    @property
    def makespan(self) -> float:
        return makespan(self)

    def start(self, mu: int, i: int) -> float:
        return self.starts[mu - 1, i - 1]

    def end(self, mu: int, i: int) -> float:
        return self.ends[mu - 1, i - 1]

    def __eq__(self, other):
        if not isinstance(other, Schedule):
            return NotImplemented
        return (
            self.fiducial == other.fiducial
            and self.origin == other.origin
            and np.array_equal(self.starts, other.starts)
            and np.array_equal(self.ends, other.ends)
        )

    __hash__ = None


class Violation(NamedTuple):
    invariant: str
    machine: int
    job: int
    detail: str


def _check_index(value, upper: int, what: str) -> None:
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise TypeError(f"{what} index must be an integer, got {value!r}")
    if not 1 <= value <= upper:
        raise IndexError(f"{what} index {value} out of range 1..{upper}")


def _as_table(table) -> ProcessingTimeTable:
    if isinstance(table, ProcessingTimeTable):
        return table
    return ProcessingTimeTable(table)


def row_totals(table: ProcessingTimeTable) -> np.ndarray:
    """Necessary processing time per machine, ``y[mu] = sum_i x[mu, i]``."""
    return _as_table(table).x.sum(axis=1)


def bottleneck(table: ProcessingTimeTable) -> int:
    """1-based index of the machine with the largest row total (lowest index on ties)."""
    return int(np.argmax(row_totals(table))) + 1


def schedule_fiducial(table: ProcessingTimeTable, fiducial: int) -> Schedule:
    """Build the schedule that fixes machine ``fiducial`` first.

    The fiducial machine runs its jobs back to back from time 0. Machines
    below it are scheduled forward (each operation starts as soon as both
    the previous job on the machine and the same job upstream have
    finished); machines above it are scheduled backward (each operation
    ends as late as both the next job on the machine and the same job
    downstream allow).
    """
    table = _as_table(table)
    M, N = table.shape
    _check_index(fiducial, M, "fiducial machine")
    x = table.x.tolist()
    s = [[0.0] * N for _ in range(M)]
    t = [[0.0] * N for _ in range(M)]

    nu = fiducial - 1
    clock = 0.0
    for i in range(N):
        s[nu][i] = clock
        clock = clock + x[nu][i]
        t[nu][i] = clock

    for mu in range(nu + 1, M):
        above, row, xs = t[mu - 1], t[mu], x[mu]
        srow = s[mu]
        prev = -math.inf
        for i in range(N):
            start = above[i] if above[i] > prev else prev
            srow[i] = start
            prev = row[i] = start + xs[i]

    for mu in range(nu - 1, -1, -1):
        below, row, xs = s[mu + 1], s[mu], x[mu]
        trow = t[mu]
        nxt = math.inf
        for i in range(N - 1, -1, -1):
            end = below[i] if below[i] < nxt else nxt
            trow[i] = end
            nxt = row[i] = end - xs[i]

    return Schedule(fiducial, np.array(s), np.array(t))


def makespan(schedule: Schedule) -> float:
    """``t[M, N] - s[1, 1]``."""
    return float(schedule.ends[-1, -1] - schedule.starts[0, 0])


def sweep_fiducial(table: ProcessingTimeTable) -> np.ndarray:
    """Makespan for every choice of fiducial machine, element ``nu - 1`` for machine ``nu``."""
    table = _as_table(table)
    return np.array([makespan(schedule_fiducial(table, nu)) for nu in range(1, table.machines + 1)])


def fiducial_makespans(table: ProcessingTimeTable) -> np.ndarray:
    """Same values as :func:`sweep_fiducial` in O(M N) instead of O(M^2 N).

    Uses two longest-path sweeps over the table: one from the top-left
    corner (completion of rows ``1..nu``) and one from the bottom-right
    corner (completion of rows ``nu..M``). The fiducial row is shared by
    both paths, so it is subtracted once.
    """
    from .percolation import lpp_matrix

    x = _as_table(table).x
    head = lpp_matrix(x)
    tail = lpp_matrix(x[::-1, ::-1])[::-1, ::-1]
    return head[:, -1] + tail[:, 0] - x.sum(axis=1)


def validate(schedule: Schedule, table: ProcessingTimeTable, tol: float | None = None) -> list[Violation]:
    """List every broken schedule invariant; an empty list means feasible.

    ``tol`` is an absolute slack on each comparison. By default it is zero
    for integer-valued tables and ``1e-9`` times the largest time
    magnitude otherwise (backward scheduling recovers starts by
    subtraction, which can round).

    Each violation is reported at the cell whose start (or duration) is
    constrained: duration at (mu, i); machine order between jobs i-1 and i
    at (mu, i); precedence between machines mu-1 and mu at (mu, i);
    fiducial contiguity at (nu, i).
    """
    table = _as_table(table)
    if schedule.shape != table.shape:
        raise ValueError(f"schedule shape {schedule.shape} does not match table shape {table.shape}")
    s, t, x = schedule.starts, schedule.ends, table.x
    if tol is None:
        integral = np.all(x == np.round(x)) and np.all(s == np.round(s)) and np.all(t == np.round(t))
        scale = max(1.0, float(np.max(np.abs(t))), float(np.max(np.abs(s))))
        tol = 0.0 if integral else 1e-9 * scale

    out: list[Violation] = []

    bad = np.abs(t - (s + x)) > tol
    for mu, i in np.argwhere(bad):
        out.append(
            Violation("duration", mu + 1, i + 1, f"end {t[mu, i]} != start {s[mu, i]} + {x[mu, i]}")
        )

    bad = t[:, :-1] > s[:, 1:] + tol
    for mu, i in np.argwhere(bad):
        out.append(
            Violation(
                "machine-order", mu + 1, i + 2,
                f"job {i + 1} ends at {t[mu, i]} after job {i + 2} starts at {s[mu, i + 1]}",
            )
        )

    bad = t[:-1, :] > s[1:, :] + tol
    for mu, i in np.argwhere(bad):
        out.append(
            Violation(
                "precedence", mu + 2, i + 1,
                f"machine {mu + 1} ends at {t[mu, i]} after machine {mu + 2} starts at {s[mu + 1, i]}",
            )
        )

    nu = schedule.fiducial - 1
    if abs(s[nu, 0] - schedule.origin) > tol:
        out.append(
            Violation("fiducial-contiguity", nu + 1, 1, f"fiducial start {s[nu, 0]} != {schedule.origin}")
        )
    gaps = np.abs(s[nu, 1:] - t[nu, :-1]) > tol
    for (i,) in np.argwhere(gaps):
        out.append(
            Violation(
                "fiducial-contiguity", nu + 1, i + 2,
                f"idle gap: start {s[nu, i + 1]} != previous end {t[nu, i]}",
            )
        )

    out.sort(key=lambda v: (v.machine, v.job, v.invariant))
    return out


def normalize(schedule: Schedule) -> Schedule:
    """Shift all times so the earliest start is 0."""
    shift = float(schedule.starts.min())
    if shift == 0.0:
        return schedule
    return Schedule(schedule.fiducial, schedule.starts - shift, schedule.ends - shift, schedule.origin - shift)


def reverse_table(table: ProcessingTimeTable) -> ProcessingTimeTable:
    """Reverse both machine order and job order (time-reversed flowshop)."""
    return ProcessingTimeTable(_as_table(table).x[::-1, ::-1])
