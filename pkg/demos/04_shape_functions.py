"""Closed-form shape functions next to Monte Carlo last-passage estimates.

Run:  python demos/04_shape_functions.py
"""
from flowshoplab import ShapeParams, empirical_shape, h_kappa, shape_closed_form

for params in (ShapeParams.exponential(1.0), ShapeParams.geometric(0.5)):
    print(f"{params.kind}: mean {params.mean:g}, stddev {params.stddev:.4f}")
    for xi in (0.25, 1.0, 2.0):
        est, se = empirical_shape(params, xi, 1.0, 200, 20, seed=11)
        print(f"  g({xi}, 1): closed form {shape_closed_form(params, xi):.4f}   n=200 estimate {est:.4f} +- {se:.4f}")
    print("  h_kappa(tau), kappa=1:", " ".join(f"{h_kappa(t, 1.0, params):.3f}" for t in (0, 0.25, 0.5, 0.75, 1)))
