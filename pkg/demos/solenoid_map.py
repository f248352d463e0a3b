"""Field map of a short solenoid.

Builds a ten-turn coil, checks its centre against the ideal long-solenoid
value, and writes an r-z field map to CSV (default solenoid_map.csv in the
current directory, or the path given as the first argument).

    python3 demos/solenoid_map.py [out.csv]
"""

import sys
import time

import numpy as np

from fracfield import MU0, FieldPoint, SolenoidGeometry, field_map, solenoid_field
from fracfield.cli import write_map

coil = SolenoidGeometry(radius_m=0.05, current_a=2.0, n_turns=10, length_m=0.2)
centre = solenoid_field(coil, FieldPoint(0.0, 0.0))
ideal = MU0 * coil.n_turns / coil.length_m * coil.current_a
print(f"centre B_z = {centre.b_z:.6e} T, ideal infinite solenoid {ideal:.6e} T "
      f"({centre.b_z / ideal:.1%} of it for this stubby coil)")

# A long coil gets much closer.
long_coil = SolenoidGeometry(1.0, 1.0, 1000, 100.0)
b = solenoid_field(long_coil, FieldPoint(0.0, 0.0)).b_z
print(f"1000 turns over 100 radii: {b / (MU0 * 10.0):.4f} of the ideal value")

t0 = time.perf_counter()
fmap = field_map(coil, (0.0, 0.1), (-0.15, 0.15), 21, 31, workers=4)
dt = time.perf_counter() - t0
print(f"21 x 31 map in {dt:.2f} s; {int(np.isnan(fmap.b_z).sum())} cells on a conductor")
print(f"midplane max |B_r| = {np.nanmax(np.abs(fmap.b_r[15])):.1e} T")

path = sys.argv[1] if len(sys.argv) > 1 else "solenoid_map.csv"
with open(path, "w", newline="\n", encoding="ascii") as fh:
    write_map(fmap, fh)
print(f"wrote {path}")
