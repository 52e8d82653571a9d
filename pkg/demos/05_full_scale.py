"""Full-size runs (M = 1000, N = 200..800, 100 tables) for all four distributions.

This takes a while; use --workers to spread trials over processes.
Run:  python demos/05_full_scale.py --workers 8 [--jobs 800] [--dist exponential]
"""
import argparse

from flowshoplab import DistributionSpec, fit_makespan_curve, monte_carlo_sweep
from flowshoplab.distributions import STANDARD_CHI_SQUARED, STANDARD_CONTINUOUS_UNIFORM, STANDARD_DISCRETE_UNIFORM

DISTS = {
    "exponential": DistributionSpec.exponential(2.0),
    "discrete-uniform": STANDARD_DISCRETE_UNIFORM,
    "continuous-uniform": STANDARD_CONTINUOUS_UNIFORM,
    "chi-squared": STANDARD_CHI_SQUARED,
}

ap = argparse.ArgumentParser()
ap.add_argument("--jobs", type=int, nargs="+", default=[200, 400, 600, 800])
ap.add_argument("--dist", choices=sorted(DISTS), nargs="+", default=sorted(DISTS))
ap.add_argument("--trials", type=int, default=100)
ap.add_argument("--seed", type=int, default=1000)
ap.add_argument("--workers", type=int, default=1)
args = ap.parse_args()

print("dist                 M     N        A           B       alpha")
for name in args.dist:
    for n in args.jobs:
        sweep = monte_carlo_sweep(DISTS[name], 1000, n, args.trials, args.seed, workers=args.workers)
        fit = fit_makespan_curve(sweep)
        print(f"{name:18s} 1000 {n:5d} {fit.A:10.4f} {fit.B:11.4f} {fit.alpha:9.5f}", flush=True)
