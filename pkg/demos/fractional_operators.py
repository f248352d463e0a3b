"""Fractional integrals and derivatives on simple functions.

Applies the Riemann-Liouville integral, the Caputo derivative and the
branch-cut formula to monomials, where exact answers are known, then shows
how the product-integration error falls as the mesh is refined.

    python3 demos/fractional_operators.py
"""

import math

import numpy as np

from fracfield import FracSpec, caputo_derivative, cauchy_like_fracderiv, frac_monomial_rule, rl_integral
from fracfield.fracops import branchcut_series_limit, branchcut_series_partial, caputo_monomial_rule


def power(p):
    return lambda t: np.asarray(t, dtype=float) ** p


print("Half-integral of 1 is 2 sqrt(t / pi):")
print(f"  numeric {rl_integral(power(0), FracSpec(0.5), 1.0):.16f}")
print(f"  exact   {2 / math.sqrt(math.pi):.16f}")

print()
print("Error of the half-integral of t^2 at t = 1 as the mesh doubles:")
exact = frac_monomial_rule(2, 0.5, 1.0)
prev = None
for n in (64, 128, 256, 512, 1024, 2048):
    err = abs(rl_integral(power(2), FracSpec(0.5, n_nodes=n), 1.0) - exact)
    ratio = "" if prev is None else f"  ratio {prev / err:.2f}"
    print(f"  n = {n:5d}: {err:.3e}{ratio}")
    prev = err

print()
print("Caputo derivatives of t^p (the derivative of a constant is zero):")
for alpha, p in [(0.5, 0), (0.5, 1), (0.5, 2), (1.5, 3)]:
    got = caputo_derivative(power(p), FracSpec(alpha), 1.0)
    print(f"  D^{alpha} t^{p} at 1: {got: .12f}   exact {caputo_monomial_rule(p, alpha, 1.0): .12f}")

print()
print("The branch-cut formula at alpha = -1/2 reproduces the half-integral with a sign:")
one = power(0)
print(f"  cauchy-like {cauchy_like_fracderiv(one, -0.5, 0.0, 1.0): .16f}")
print(f"  rl_integral {rl_integral(one, FracSpec(0.5), 1.0): .16f}")

print()
print("Its kernel expands as a geometric-type series in z0 / z; at ratio 1/2")
print("successive partial sums close in at least as fast as 0.5^n:")
sums = branchcut_series_partial(-0.5, 0.5, 1.0, 12)
limit = branchcut_series_limit(-0.5, 0.5, 1.0)
for n in (0, 2, 5, 11):
    print(f"  S_{n + 1:<2d} = {sums[n]:.12f}   gap {abs(sums[n] - limit):.2e}   0.5^n bound {0.5 ** n:.2e}")
