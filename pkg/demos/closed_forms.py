"""The two angular integrals behind the loop field.

I1 and I2 are integrals of (1 - xi cos psi)^(-3/2) over [0, pi].  They have
closed forms in terms of the Gauss hypergeometric function.  Here both are
evaluated by adaptive quadrature and by the closed form, from xi = 0 to a
hair's breadth from the conductor.

    python3 demos/closed_forms.py
"""

import time

from fracfield import gauss_2f1, i1_closed, i1_quad, i2_closed, i2_quad

print(f"{'xi':>12} {'I1':>22} {'rel diff':>9} {'I2':>22} {'rel diff':>9}")
for xi in (0.05, 0.25, 0.5, 0.75, 0.9, 0.99, 0.999, 0.999999):
    c1, q1 = i1_closed(xi), i1_quad(xi)
    c2, q2 = i2_closed(xi), i2_quad(xi)
    d2 = abs(c2 - q2) / max(abs(q2), 1e-12)
    print(f"{xi:12.6f} {c1:22.16g} {abs(c1 - q1) / q1:9.1e} {c2:22.16g} {d2:9.1e}")

# The hypergeometric argument w = 2 xi / (1 + xi) runs into z = 1, where
# the raw series stalls; past z = 0.9 the evaluator switches strategy.
print()
for z in (0.5, 0.9, 0.99, 1 - 1e-6):
    t0 = time.perf_counter()
    v = gauss_2f1(0.5, 1.5, 1.0, z)
    print(f"2F1(1/2, 3/2; 1; {z:.6f}) = {v:.16g}   ({1e6 * (time.perf_counter() - t0):.0f} us)")
