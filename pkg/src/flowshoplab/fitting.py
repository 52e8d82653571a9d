"""Fit ``mean(nu) = A (nu - 1)**alpha + A (M - nu)**alpha + B`` to sweep data.

For fixed ``alpha`` the model is linear in ``A`` and ``B``, so the fit
profiles them out with a small least-squares solve and searches only over
``alpha``: a coarse grid, then golden-section refinement around the best
grid point.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass

import numpy as np

__all__ = ["FitError", "FitResult", "fit_curve", "fit_makespan_curve", "eval_fit", "curve"]

GOLDEN = (math.sqrt(5) - 1) / 2


class FitError(ArithmeticError):
    pass


@dataclass(frozen=True)
class FitResult:
    A: float
    B: float
    alpha: float
    rmse: float
    machines: int
    alpha_lo: float = 0.2
    alpha_hi: float = 0.9
    converged: bool = True
    identifiable: bool = True
    weighted: bool = False

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, data: dict) -> "FitResult":
        return cls(**data)


def _basis(nu: np.ndarray, machines: int, alpha: float) -> np.ndarray:
    return (nu - 1.0) ** alpha + (machines - nu) ** alpha


def curve(nu, machines: int, A: float, B: float, alpha: float):
    """Evaluate the two-term model at ``nu`` (scalar or array)."""
    nu = np.asarray(nu, dtype=float)
    out = A * _basis(nu, machines, alpha) + B
    return float(out) if out.ndim == 0 else out


def _profile(nu, y, weights, machines, alpha):
    """Best ``(A, B)`` for this ``alpha`` and the weighted residual sum of squares."""
    f = _basis(nu, machines, alpha)
    X = np.column_stack([f, np.ones_like(f)])
    sw = np.sqrt(weights)
    coef, *_ = np.linalg.lstsq(X * sw[:, None], y * sw, rcond=None)
    resid = (y - X @ coef) * sw
    return float(coef[0]), float(coef[1]), float(resid @ resid)


def fit_curve(
    nu,
    mean,
    machines: int,
    weights=None,
    alpha_range: tuple[float, float] = (0.2, 0.9),
    grid: int = 71,
    xtol: float = 1e-10,
    max_iter: int = 200,
) -> FitResult:
    """Least-squares fit of the two-term model to points ``(nu, mean)``.

    ``weights`` (optional) multiply each squared residual, e.g.
    ``1 / stderr**2``. The reported ``rmse`` is always the unweighted
    root-mean-square residual.
    """
    nu = np.asarray(nu, dtype=float)
    y = np.asarray(mean, dtype=float)
    if nu.shape != y.shape or nu.ndim != 1:
        raise FitError("nu and mean must be 1-D arrays of equal length")
    if np.unique(nu).size < 3:
        raise FitError("need at least 3 distinct fiducial positions")
    if np.any(nu < 1) or np.any(nu > machines):
        raise FitError(f"nu values must lie in 1..{machines}")
    if not np.all(np.isfinite(y)):
        raise FitError("mean values must be finite")
    weighted = weights is not None
    w = np.ones_like(y) if weights is None else np.asarray(weights, dtype=float)
    if w.shape != y.shape or np.any(~np.isfinite(w)) or np.any(w <= 0):
        raise FitError("weights must be positive and finite, one per point")
    lo, hi = map(float, alpha_range)
    if not 0 < lo < hi:
        raise FitError(f"bad alpha range {alpha_range}")

    def unweighted_rmse(A, B, alpha):
        r = y - curve(nu, machines, A, B, alpha)
        return float(np.sqrt(np.mean(r * r)))

    scale = max(float(np.ptp(y)), float(np.max(np.abs(y))), 1.0)
    if float(np.ptp(y)) <= 1e-12 * scale:
        B = float(np.average(y, weights=w))
        return FitResult(0.0, B, 0.5 * (lo + hi), unweighted_rmse(0.0, B, 0.5 * (lo + hi)),
                         machines, lo, hi, converged=True, identifiable=False, weighted=weighted)

    def sse(alpha):
        return _profile(nu, y, w, machines, alpha)[2]

    alphas = np.linspace(lo, hi, grid)
    values = np.array([sse(a) for a in alphas])
    k = int(np.argmin(values))
    a, b = alphas[max(k - 1, 0)], alphas[min(k + 1, grid - 1)]

    # golden-section on [a, b]
    c, d = b - GOLDEN * (b - a), a + GOLDEN * (b - a)
    fc, fd = sse(c), sse(d)
    converged = False
    for _ in range(max_iter):
        if b - a <= xtol * max(1.0, abs(c)):
            converged = True
            break
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = sse(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = sse(d)
    candidates = [(values[k], alphas[k]), (fc, c), (fd, d)]
    best_sse, alpha = min(candidates)
    A, B, _ = _profile(nu, y, w, machines, alpha)
    # a flat profile (A ~ 0) leaves alpha undetermined
    identifiable = abs(A) * float(np.ptp(_basis(nu, machines, alpha))) > 1e-9 * scale
    return FitResult(A, B, float(alpha), unweighted_rmse(A, B, alpha), machines, lo, hi,
                     converged=converged, identifiable=identifiable, weighted=weighted)


def fit_makespan_curve(sweep, weighted: bool = False, **kwargs) -> FitResult:
    """Fit the per-fiducial means of a :class:`~flowshoplab.experiments.SweepResult`.

    With ``weighted=True`` points are weighted by ``1 / stderr**2``.
    """
    weights = None
    if weighted:
        se = np.asarray(sweep.stderr, dtype=float)
        if np.any(se <= 0):
            raise FitError("inverse-variance weighting needs positive standard errors (trials >= 2)")
        weights = 1.0 / se**2
    return fit_curve(np.arange(1, sweep.machines + 1), sweep.mean, sweep.machines, weights=weights, **kwargs)


def eval_fit(fit: FitResult, nu, machines: int | None = None) -> float:
    """Fitted mean makespan at fiducial machine ``nu`` (1-based)."""
    machines = fit.machines if machines is None else machines
    arr = np.asarray(nu, dtype=float)
    if np.any(arr < 1) or np.any(arr > machines):
        raise ValueError(f"nu must lie in 1..{machines}")
    return curve(arr, machines, fit.A, fit.B, fit.alpha)
