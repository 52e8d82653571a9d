"""SPT and LPT job orders (keyed on machine 1) against the unsorted order.

Run:  python demos/03_dispatching_rules.py
"""
from flowshoplab import DistributionSpec, compare_rules, monte_carlo_sweep

spec = DistributionSpec.exponential(2.0)
M, N, trials, seed = 200, 160, 100, 3
base = monte_carlo_sweep(spec, M, N, trials, seed)
for rule in ("spt", "lpt"):
    c = compare_rules(base, monte_carlo_sweep(spec, M, N, trials, seed, rule=rule))
    print(f"{rule.upper()}: relative change in mean makespan from {c.min_rel:+.2%} to {c.max_rel:+.2%}")
