"""Cross-checks of every evaluation path against its independent oracle.

``run_checks`` returns one :class:`Check` per row of the report printed by
``fracfield verify``.  Each check's ``error`` is compared with its
``tolerance`` using ``error <= tolerance`` unless ``kind`` is ``"min"``, in
which case the measured value must reach the threshold instead.
"""

import math
import time
from dataclasses import dataclass, field

import numpy as np

from fracfield import fracops, loopfield
from fracfield.loopfield import FieldPoint, LoopGeometry

XI_GRID = tuple(round(0.05 * k, 2) for k in range(1, 19))
FIELD_FLOOR_T = 1e-15
FIELD_REL_TOL = 1e-9


@dataclass
class Check:
    name: str
    error: float
    tolerance: float
    kind: str = "max"  # "max": error <= tol; "min": error >= tol
    note: str = ""
    seconds: float = 0.0

    @property
    def passed(self):
        if math.isnan(self.error):
            return False
        if self.kind == "min":
            return self.error >= self.tolerance
        return self.error <= self.tolerance


@dataclass
class Report:
    checks: list = field(default_factory=list)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def format(self):
        lines = [f"{'check':<44} {'measured':>11} {'tolerance':>11}  status"]
        for c in self.checks:
            cmp = ">=" if c.kind == "min" else "<="
            status = "PASS" if c.passed else "FAIL"
            line = f"{c.name:<44} {c.error:11.3e} {cmp}{c.tolerance:9.1e}  {status}"
            if c.note:
                line += f"  ({c.note})"
            lines.append(line)
        return "\n".join(lines)


def _rel(a, b, floor=0.0):
    return abs(a - b) / max(abs(b), floor)


# -- individual checks ------------------------------------------------------


def closed_form_errors(xis=XI_GRID):
    """Max relative deviation of closed-form I1, I2 from quadrature."""
    e1 = max(_rel(loopfield.i1_closed(x), loopfield.i1_quad(x)) for x in xis)
    e2 = max(_rel(loopfield.i2_closed(x), loopfield.i2_quad(x), 1e-12) for x in xis)
    return e1, e2


def anchor_errors():
    """(relative error of both I1 paths vs pi, absolute |I2| of both paths) at xi=0."""
    e1 = max(_rel(f(0.0), math.pi) for f in (loopfield.i1_closed, loopfield.i1_quad))
    e2 = max(abs(f(0.0)) for f in (loopfield.i2_closed, loopfield.i2_quad))
    return e1, e2


def field_grid_points(radius=1.0, n=20, exclusion=0.05):
    """20 x 20 grid over r in [0, 3R], z in [-3R, 3R] minus the wire
    neighbourhood."""
    pts = []
    for r in np.linspace(0.0, 3.0 * radius, n):
        for z in np.linspace(-3.0 * radius, 3.0 * radius, n):
            if math.hypot(r - radius, z) >= exclusion * radius:
                pts.append(FieldPoint(float(r), float(z)))
    return pts


def field_oracle_error(geom=None, floor_ratio=FIELD_FLOOR_T / FIELD_REL_TOL):
    """Max componentwise |closed - oracle| / max(|oracle|, floor_ratio).

    With the default floor this is <= 1e-9 exactly when every component
    meets 1e-9 relative or 1e-15 T absolute.
    """
    geom = geom or LoopGeometry(1.0, 1.0)
    worst = 0.0
    for pt in field_grid_points(geom.radius_m):
        a = loopfield.field_at_point(geom, pt)
        b = loopfield.field_elliptic_oracle(geom, pt)
        worst = max(worst, _rel(a.b_r, b.b_r, floor_ratio), _rel(a.b_z, b.b_z, floor_ratio))
    return worst


def on_axis_error(z_over_r=(0.0, 0.5, 1.0, 2.0, 10.0), geom=None):
    """Max relative B_z error on the axis; inf if any B_r is non-zero."""
    geom = geom or LoopGeometry(1.0, 1.0)
    worst = 0.0
    for m in z_over_r:
        z = m * geom.radius_m
        b = loopfield.field_at_point(geom, FieldPoint(0.0, z))
        if b.b_r != 0.0:
            return math.inf
        worst = max(worst, _rel(b.b_z, loopfield.on_axis_bz(geom, z)))
    return worst


def rl_convergence(powers=(0, 1, 2), alphas=(0.25, 0.5, 0.75), nodes=(512, 1024, 2048), noise=1e-13):
    """Errors of rl_integral on t**p at z = 1.

    Returns (max error at the finest mesh, min ratio between successive
    doublings).  Ratios are only taken while the coarser error is above
    ``noise``; below it the rule is exact up to rounding (p = 0, 1).
    """
    worst = 0.0
    min_ratio = math.inf
    for a in alphas:
        for p in powers:
            exact = fracops.frac_monomial_rule(p, a, 1.0)
            errs = [
                abs(fracops.rl_integral(_monomial(p), fracops.FracSpec(a, n_nodes=n), 1.0) - exact)
                for n in nodes
            ]
            worst = max(worst, errs[-1])
            for coarse, fine in zip(errs[:-1], errs[1:]):
                if coarse > noise:
                    min_ratio = min(min_ratio, coarse / fine if fine else math.inf)
    return worst, min_ratio


def semigroup_error(pairs=((0.5, 0.5), (0.3, 0.7)), powers=(0, 1, 2), n_nodes=2048):
    """Max relative error of I^beta[I^alpha[t^p]](1) vs the exact I^(alpha+beta)[t^p](1)."""
    worst = 0.0
    for a, b in pairs:
        for p in powers:
            inner_spec = fracops.FracSpec(a, n_nodes=n_nodes)

            def inner(t, p=p, spec=inner_spec):
                t = np.atleast_1d(t)
                return np.array(
                    [fracops.rl_integral(_monomial(p), spec, x) if x > 0 else 0.0 for x in t]
                )

            got = fracops.rl_integral(inner, fracops.FracSpec(b, n_nodes=n_nodes), 1.0)
            worst = max(worst, _rel(got, fracops.frac_monomial_rule(p, a + b, 1.0)))
    return worst


def cauchy_like_errors():
    """(rel error vs -2/sqrt(pi), rel mismatch of |value| vs rl_integral(alpha=1/2))."""
    one = _monomial(0)
    got = fracops.cauchy_like_fracderiv(one, -0.5, 0.0, 1.0)
    rl = fracops.rl_integral(one, fracops.FracSpec(0.5), 1.0)
    return _rel(got, -2.0 / math.sqrt(math.pi)), _rel(abs(got), rl)


def mtest_excess(ratio=0.5, alpha=-0.5, n_max=40):
    """max_n |S_{n+1} - S_n| / (M ratio^n) - 1 for n <= n_max, with M measured
    once as |S_1 - S_0|; <= 0 means the M-test bound holds throughout."""
    z = 1.0
    sums = fracops.branchcut_series_partial(alpha, ratio * z, z, n_max + 2)
    diffs = np.abs(np.diff(sums))
    M = diffs[0]
    bounds = M * ratio ** np.arange(diffs.size)
    return float(np.max(diffs / bounds) - 1.0), M


def _monomial(p):
    if p == 0:
        return lambda t: np.ones_like(np.asarray(t, dtype=float))
    return lambda t: np.asarray(t, dtype=float) ** p


# -- full report -------------------------------------------------------------


def run_checks(tolerance=None, xi_max=0.99):
    """Run every cross-check.  ``tolerance`` overrides all error tolerances
    (not the convergence-ratio threshold)."""

    def tol(default):
        return default if tolerance is None else tolerance

    report = Report()

    def timed(fn, *args):
        t0 = time.perf_counter()
        out = fn(*args)
        return out, time.perf_counter() - t0

    (e1, e2), dt = timed(closed_form_errors)
    report.checks.append(Check("I1 closed vs quad, xi=0.05..0.90", e1, tol(1e-10), seconds=dt))
    report.checks.append(Check("I2 closed vs quad, xi=0.05..0.90", e2, tol(1e-10), seconds=dt))
    (n1, n2), dt = timed(closed_form_errors, (xi_max,))
    report.checks.append(
        Check(f"I1 closed vs quad, near wire xi={xi_max:g}", n1, tol(1e-6), note="near-wire", seconds=dt)
    )
    report.checks.append(
        Check(f"I2 closed vs quad, near wire xi={xi_max:g}", n2, tol(1e-6), note="near-wire", seconds=dt)
    )

    (a1, a2), dt = timed(anchor_errors)
    report.checks.append(Check("I1 = pi at xi=0 (rel)", a1, tol(1e-14), seconds=dt))
    report.checks.append(Check("I2 = 0 at xi=0 (abs)", a2, tol(1e-14), seconds=dt))

    ef, dt = timed(field_oracle_error)
    report.checks.append(
        Check("field vs elliptic oracle, 20x20 grid", ef, tol(FIELD_REL_TOL), note="1e-15 T floor", seconds=dt)
    )
    ea, dt = timed(on_axis_error)
    report.checks.append(Check("on-axis B_z law, B_r = 0", ea, tol(1e-12), seconds=dt))

    (worst, ratio), dt = timed(rl_convergence)
    report.checks.append(Check("rl_integral vs monomial rule, n=2048", worst, tol(1e-6), seconds=dt))
    report.checks.append(Check("rl_integral error ratio per doubling", ratio, 3.0, kind="min", seconds=dt))

    sg, dt = timed(semigroup_error)
    report.checks.append(Check("semigroup I^b I^a t^p = I^(a+b) t^p", sg, tol(1e-6), seconds=dt))

    (c1, c2), dt = timed(cauchy_like_errors)
    report.checks.append(Check("cauchy-like, f=1, alpha=-1/2 vs -2/sqrt(pi)", c1, tol(1e-8), seconds=dt))
    report.checks.append(Check("cauchy-like |value| vs rl_integral(1/2)", c2, tol(1e-8), seconds=dt))

    (excess, M), dt = timed(mtest_excess)
    report.checks.append(
        Check("M-test |S_n+1 - S_n| <= M 0.5^n, n<=40", max(excess, 0.0), 0.0, note=f"M={M:.6g}", seconds=dt)
    )
    return report
