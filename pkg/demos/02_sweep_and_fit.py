"""Mean makespan against the fiducial machine for exponential processing times,
with the two-term fit and the large-system limit.

Run:  python demos/02_sweep_and_fit.py [--machines 400 --jobs 200 --trials 50 --workers 4]
"""
import argparse

import numpy as np

from flowshoplab import DistributionSpec, ShapeParams, asymptotic_makespan, eval_fit, fit_makespan_curve, monte_carlo_sweep

ap = argparse.ArgumentParser()
ap.add_argument("--machines", type=int, default=400)
ap.add_argument("--jobs", type=int, default=200)
ap.add_argument("--trials", type=int, default=50)
ap.add_argument("--seed", type=int, default=1)
ap.add_argument("--workers", type=int, default=1)
ap.add_argument("--plot", help="write a PNG here (needs matplotlib)")
args = ap.parse_args()

spec = DistributionSpec.exponential(2.0)
sweep = monte_carlo_sweep(spec, args.machines, args.jobs, args.trials, args.seed, workers=args.workers)
fit = fit_makespan_curve(sweep)
print(f"fit: A={fit.A:.4f}  B={fit.B:.4f}  alpha={fit.alpha:.5f}  rmse={fit.rmse:.3f}")

M, N = args.machines, args.jobs
kappa = M / N
params = ShapeParams.exponential(2.0)
print(" nu    mean     stderr   fit      limit*N")
for nu in np.unique(np.linspace(1, M, 9).round().astype(int)):
    limit = asymptotic_makespan(kappa, (nu - 0.5) / M, params) * N
    print(f"{nu:4d} {sweep.mean[nu - 1]:8.1f} {sweep.stderr[nu - 1]:8.2f} {eval_fit(fit, nu):8.1f} {limit:8.1f}")

if args.plot:
    import matplotlib.pyplot as plt

    nu = sweep.nu
    plt.errorbar(nu, sweep.mean, yerr=sweep.stderr, fmt=".", ms=2, label="Monte Carlo")
    plt.plot(nu, eval_fit(fit, nu), label=f"fit, alpha={fit.alpha:.3f}")
    plt.xlabel("fiducial machine")
    plt.ylabel("mean makespan")
    plt.legend()
    plt.savefig(args.plot, dpi=120)
    print("wrote", args.plot)
