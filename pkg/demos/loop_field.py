"""Field of a single current loop.

Walks from the centre of a 1 m loop carrying 1 A out along the axis, then
across the midplane, and compares the hypergeometric closed form with the
classical elliptic-integral expressions at each stop.

    python3 demos/loop_field.py
"""

from fracfield import FieldPoint, LoopGeometry, field_at_point, field_elliptic_oracle, xi_of_point
from fracfield.loopfield import on_axis_bz

loop = LoopGeometry(radius_m=1.0, current_a=1.0)

print("On the axis the field is purely axial and follows mu0 I R^2 / (2 (R^2 + z^2)^1.5).")
print(f"{'z [m]':>6} {'B_z [T]':>24} {'textbook':>24}")
for z in (0.0, 0.5, 1.0, 2.0, 10.0):
    b = field_at_point(loop, FieldPoint(0.0, z))
    print(f"{z:6.1f} {b.b_z:24.17g} {on_axis_bz(loop, z):24.17g}")

print()
print("Off the axis both components appear.  xi -> 1 as the point nears the wire.")
print(f"{'r':>5} {'z':>5} {'xi':>8} {'B_r':>13} {'B_z':>13} {'rel. diff vs K/E':>17}")
for r, z in [(0.5, 0.5), (0.9, 0.1), (0.99, 0.01), (1.5, -0.3), (2.0, 1.0)]:
    pt = FieldPoint(r, z)
    a = field_at_point(loop, pt)
    b = field_elliptic_oracle(loop, pt)
    diff = max(abs(a.b_r - b.b_r) / abs(b.b_r), abs(a.b_z - b.b_z) / abs(b.b_z))
    print(f"{r:5.2f} {z:5.2f} {xi_of_point(loop, pt).xi:8.5f} {a.b_r:13.6e} {a.b_z:13.6e} {diff:17.2e}")

print()
print("In the midplane B_r vanishes identically, and B_z flips sign outside the loop.")
for r in (0.5, 0.95, 1.05, 2.0):
    b = field_at_point(loop, FieldPoint(r, 0.0))
    print(f"  r = {r:4.2f}:  B_r = {b.b_r:g},  B_z = {b.b_z: .6e}")
