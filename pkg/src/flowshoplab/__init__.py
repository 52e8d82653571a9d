"""Flowshop makespan as a function of the fiducial machine.

Exact scheduling, Monte Carlo sweeps, two-term curve fits and the
last-passage percolation identities behind them.
"""

__version__ = "0.1.0"

from .core import (
    TABLE2,
    ProcessingTimeTable,
    Schedule,
    Violation,
    bottleneck,
    fiducial_makespans,
    makespan,
    normalize,
    reverse_table,
    row_totals,
    schedule_fiducial,
    sweep_fiducial,
    validate,
)
from .distributions import DistributionSpec, moments, sample_table, substream
from .experiments import SweepResult, compare_rules, monte_carlo_sweep, reorder_jobs
from .fitting import FitError, FitResult, eval_fit, fit_curve, fit_makespan_curve
from .gantt import GanttDocument, render_gantt
from .percolation import (
    ShapeParams,
    asymptotic_makespan,
    decompose_makespan,
    empirical_shape,
    h_kappa,
    lpp,
    lpp_bruteforce,
    shape_closed_form,
    shape_function,
    shape_tilde,
)
from .tables import format_table, parse_table

__all__ = [
    "TABLE2",
    "ProcessingTimeTable",
    "Schedule",
    "Violation",
    "bottleneck",
    "fiducial_makespans",
    "makespan",
    "normalize",
    "reverse_table",
    "row_totals",
    "schedule_fiducial",
    "sweep_fiducial",
    "validate",
    "DistributionSpec",
    "moments",
    "sample_table",
    "substream",
    "SweepResult",
    "compare_rules",
    "monte_carlo_sweep",
    "reorder_jobs",
    "FitError",
    "FitResult",
    "eval_fit",
    "fit_curve",
    "fit_makespan_curve",
    "GanttDocument",
    "render_gantt",
    "ShapeParams",
    "asymptotic_makespan",
    "decompose_makespan",
    "empirical_shape",
    "h_kappa",
    "lpp",
    "lpp_bruteforce",
    "shape_closed_form",
    "shape_function",
    "shape_tilde",
    "format_table",
    "parse_table",
]
