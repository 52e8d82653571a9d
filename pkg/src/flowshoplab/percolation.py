"""Last-passage percolation view of the flowshop.

The completion time of forward scheduling equals the heaviest monotone
(down/right) path through the processing-time grid. This module provides
the longest-path DP, an exhaustive oracle for small grids, the split of a
fiducial makespan into two percolation blocks, and the shape functions
known in closed form for exponential and geometric weights.

Grid convention: ``lpp`` of an ``(m + 1) x (n + 1)`` matrix is the
last-passage time usually written ``T_{m,n}`` (paths include both corner
vertices).
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .core import ProcessingTimeTable, _as_table, _check_index

__all__ = [
    "ShapeParams",
    "Decomposition",
    "as_weights",
    "lpp",
    "lpp_matrix",
    "lpp_bruteforce",
    "decompose_makespan",
    "shape_closed_form",
    "shape_function",
    "shape_tilde",
    "asymptotic_makespan",
    "h_kappa",
    "empirical_shape",
    "BRUTEFORCE_MAX_PATHS",
]

# C(22, 11): every grid with R + C <= 24 fits.
BRUTEFORCE_MAX_PATHS = math.comb(22, 11)


def as_weights(weights) -> np.ndarray:
    """Validate a vertex-weight grid and return it as a float matrix."""
    if isinstance(weights, ProcessingTimeTable):
        return weights.x
    w = np.asarray(weights, dtype=float)
    if w.ndim != 2 or w.shape[0] < 1 or w.shape[1] < 1:
        raise ValueError(f"weights must be a non-empty 2-D matrix, got shape {w.shape}")
    if not np.all(np.isfinite(w)):
        raise ValueError("weights must be finite")
    return w


def lpp_matrix(weights) -> np.ndarray:
    """Last-passage times from the top-left corner to every vertex.

    ``T[r, c] = w[r, c] + max(T[r - 1, c], T[r, c - 1])``, evaluated one
    anti-diagonal at a time so every cell follows the recurrence literally.
    """
    w = as_weights(weights)
    R, C = w.shape
    T = np.empty((R, C))
    T[0, 0] = w[0, 0]
    for d in range(1, R + C - 1):
        r0, r1 = max(0, d - C + 1), min(d, R - 1)
        rows = np.arange(r0, r1 + 1)
        cols = d - rows
        up = np.full(rows.size, -np.inf)
        left = np.full(rows.size, -np.inf)
        has_up = rows > 0
        has_left = cols > 0
        up[has_up] = T[rows[has_up] - 1, cols[has_up]]
        left[has_left] = T[rows[has_left], cols[has_left] - 1]
        T[rows, cols] = w[rows, cols] + np.maximum(up, left)
    return T


def lpp(weights) -> float:
    """Maximum vertex-weight sum over monotone paths from top-left to bottom-right."""
    rows = as_weights(weights).tolist()
    # row-by-row scan, O(C) memory
    prev = [-math.inf] * len(rows[0])
    prev[0] = 0.0
    for row in rows:
        acc = -math.inf
        for c, wc in enumerate(row):
            up = prev[c]
            acc = (acc if acc > up else up) + wc
            prev[c] = acc
    return float(prev[-1])


def lpp_bruteforce(weights, max_paths: int = BRUTEFORCE_MAX_PATHS) -> float:
    """Enumerate every monotone path and return the heaviest one.

    Raises ``ValueError`` when the number of paths exceeds ``max_paths``.
    """
    w = as_weights(weights)
    R, C = w.shape
    steps = R + C - 2
    count = math.comb(steps, R - 1)
    if count > max_paths:
        raise ValueError(f"{R}x{C} grid has {count} monotone paths, more than the limit {max_paths}")
    rows = w.tolist()
    best = -math.inf
    for downs in itertools.combinations(range(steps), R - 1):
        r = c = 0
        total = rows[0][0]
        k = 0
        for step in range(steps):
            if k < len(downs) and downs[k] == step:
                r += 1
                k += 1
            else:
                c += 1
            total += rows[r][c]
        if total > best:
            best = total
    return float(best)


class Decomposition(NamedTuple):
    upper: float
    lower: float
    fiducial_sum: float

    @property
    def total(self) -> float:
        return self.upper + self.lower - self.fiducial_sum


def decompose_makespan(table: ProcessingTimeTable, fiducial: int) -> Decomposition:
    """Split the fiducial makespan into two last-passage blocks.

    ``upper`` is the longest path through rows ``fiducial..M`` (forward
    part), ``lower`` the longest path through rows ``1..fiducial``
    (backward part), and ``fiducial_sum`` the fiducial row total that both
    blocks contain. ``upper + lower - fiducial_sum`` is the makespan. The
    blocks are computed from the table alone, without any schedule.
    """
    table = _as_table(table)
    _check_index(fiducial, table.machines, "fiducial machine")
    x = table.x
    nu = fiducial - 1
    return Decomposition(
        upper=lpp(x[nu:, :]),
        lower=lpp(x[: nu + 1, :]),
        fiducial_sum=float(x[nu].sum()),
    )


@dataclass(frozen=True)
class ShapeParams:
    """Weight distribution with a known shape function.

    ``kind`` is ``"exponential"`` (mean ``mean``, stddev equal to the mean)
    or ``"geometric"`` with ``P(X = k) = (1 - q) q**k`` on ``k = 0, 1, ...``
    (mean ``q / (1 - q)``, variance ``q / (1 - q)**2``).
    """

    kind: str
    mean: float
    stddev: float
    q: float | None = None

    def __post_init__(self):
        if self.kind == "exponential":
            if not self.mean > 0:
                raise ValueError("exponential mean must be positive")
            if not math.isclose(self.stddev, self.mean, rel_tol=1e-12):
                raise ValueError("exponential stddev must equal its mean")
            if self.q is not None:
                raise ValueError("q is only used by the geometric kind")
        elif self.kind == "geometric":
            q = self.q
            if q is None or not 0 < q < 1:
                raise ValueError("geometric q must lie in (0, 1)")
            if not math.isclose(self.mean, q / (1 - q), rel_tol=1e-12):
                raise ValueError(f"geometric mean must be q/(1-q) = {q / (1 - q)}")
            if not math.isclose(self.stddev, math.sqrt(q) / (1 - q), rel_tol=1e-12):
                raise ValueError(f"geometric stddev must be sqrt(q)/(1-q) = {math.sqrt(q) / (1 - q)}")
        else:
            raise ValueError(f"unknown shape kind {self.kind!r}; expected 'exponential' or 'geometric'")

    @classmethod
    def exponential(cls, mean: float) -> "ShapeParams":
        return cls("exponential", float(mean), float(mean))

    @classmethod
    def geometric(cls, q: float) -> "ShapeParams":
        q = float(q)
        if not 0 < q < 1:
            raise ValueError("geometric q must lie in (0, 1)")
        return cls("geometric", q / (1 - q), math.sqrt(q) / (1 - q), q)

    @classmethod
    def geometric_from_mean(cls, mean: float) -> "ShapeParams":
        if not mean > 0:
            raise ValueError("geometric mean must be positive")
        return cls.geometric(mean / (1 + mean))

    def to_distribution(self):
        from .distributions import DistributionSpec

        if self.kind == "exponential":
            return DistributionSpec.exponential(self.mean)
        return DistributionSpec.geometric(self.q)


def _check_xi(xi: float) -> float:
    xi = float(xi)
    if not xi >= 0 or not math.isfinite(xi):
        raise ValueError(f"xi must be a finite nonnegative number, got {xi}")
    return xi


def shape_closed_form(params: ShapeParams, xi: float) -> float:
    """Shape function ``g(xi, 1)``.

    Exponential: ``lambda (1 + xi) + 2 sigma sqrt(xi)``.
    Geometric: ``(1 + sqrt(q xi))**2 / (1 - q) - 1`` (Johansson's form,
    algebraically the same expression).
    """
    xi = _check_xi(xi)
    if params.kind == "geometric":
        q = params.q
        return (1 + math.sqrt(q * xi)) ** 2 / (1 - q) - 1
    return params.mean * (1 + xi) + 2 * params.stddev * math.sqrt(xi)


def shape_function(params: ShapeParams, v1: float, v2: float) -> float:
    """Two-argument shape function ``g(v1, v2)`` on the closed quadrant.

    Exponential: ``lambda (v1 + v2) + 2 sigma sqrt(v1 v2)``.
    Geometric: ``(q (v1 + v2) + 2 sqrt(q v1 v2)) / (1 - q)``.
    """
    v1, v2 = _check_xi(v1), _check_xi(v2)
    if params.kind == "geometric":
        q = params.q
        return (q * (v1 + v2) + 2 * math.sqrt(q * v1 * v2)) / (1 - q)
    return params.mean * (v1 + v2) + 2 * params.stddev * math.sqrt(v1 * v2)


def shape_tilde(params: ShapeParams, xi: float) -> float:
    """Centered shape function ``g(xi, 1) - lambda (1 + xi) = 2 sigma sqrt(xi)``."""
    xi = _check_xi(xi)
    return 2 * params.stddev * math.sqrt(xi)


def _check_kappa_tau(kappa: float, tau: float) -> tuple[float, float]:
    kappa, tau = float(kappa), float(tau)
    if not kappa >= 0 or not math.isfinite(kappa):
        raise ValueError(f"kappa must be a finite nonnegative number, got {kappa}")
    if not 0 <= tau <= 1:
        raise ValueError(f"tau must lie in [0, 1], got {tau}")
    return kappa, tau


def asymptotic_makespan(kappa: float, tau: float, params: ShapeParams) -> float:
    """Limit of ``T(nu) / N`` with ``M ~ kappa N`` machines and fiducial ``nu ~ tau M``."""
    kappa, tau = _check_kappa_tau(kappa, tau)
    sigma, lam = params.stddev, params.mean
    return 2 * sigma * (math.sqrt(kappa * (1 - tau)) + math.sqrt(kappa * tau)) + lam * (kappa + 1)


def h_kappa(tau: float, kappa: float, params: ShapeParams) -> float:
    """``g(kappa (1 - tau), 1) + g(kappa tau, 1) - lambda`` built from :func:`shape_closed_form`."""
    kappa, tau = _check_kappa_tau(kappa, tau)
    return (
        shape_closed_form(params, kappa * (1 - tau))
        + shape_closed_form(params, kappa * tau)
        - params.mean
    )


Sampler = Callable[[np.random.Generator, tuple], np.ndarray]


def _resolve_sampler(dist) -> Sampler:
    from .distributions import DistributionSpec

    if isinstance(dist, ShapeParams):
        dist = dist.to_distribution()
    if isinstance(dist, DistributionSpec):
        return dist.sample
    if callable(dist):
        return dist
    raise TypeError(f"expected ShapeParams, DistributionSpec or sampler callable, got {type(dist).__name__}")


def _shape_trial(args) -> float:
    sampler, shape, seed, trial, n = args
    from .distributions import substream

    w = sampler(substream(seed, trial), shape)
    return float(lpp_matrix(w)[-1, -1]) / n


def empirical_shape(
    dist,
    v1: float,
    v2: float,
    n: int,
    trials: int,
    seed: int,
    workers: int = 1,
) -> tuple[float, float]:
    """Monte Carlo estimate of ``g(v1, v2)`` as ``T_{floor(n v1), floor(n v2)} / n``.

    ``dist`` is a :class:`ShapeParams`, a
    :class:`~flowshoplab.distributions.DistributionSpec`, or a callable
    ``sampler(rng, shape) -> array``. Trial ``k`` draws its grid from
    ``substream(seed, k)``, so the estimate does not depend on ``workers``.

    Returns ``(mean, standard error)`` over trials (standard error is 0
    for a single trial).
    """
    if n < 1 or trials < 1:
        raise ValueError("n and trials must be at least 1")
    if v1 < 0 or v2 < 0:
        raise ValueError("v1 and v2 must be nonnegative")
    sampler = _resolve_sampler(dist)
    shape = (math.floor(n * v1) + 1, math.floor(n * v2) + 1)
    jobs = [(sampler, shape, seed, k, n) for k in range(trials)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            values = np.array(list(pool.map(_shape_trial, jobs, chunksize=max(1, trials // (4 * workers)))))
    else:
        values = np.array([_shape_trial(job) for job in jobs])
    stderr = float(values.std(ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
    return float(values.mean()), stderr
