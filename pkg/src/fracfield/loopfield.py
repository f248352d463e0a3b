"""Magnetic field of a thin circular current loop, and of thin solenoids.

The loop of radius R lies in the plane z = 0 centred on the axis.  With
eta = r/R, M_z = z/R and

    xi    = 2 eta / (1 + eta^2 + M_z^2)
    kappa = 2 / (1 + eta^2 + M_z^2)            (= xi / eta)

the Biot-Savart field is

    B_r = mu0 I M_z / (4 sqrt(2) pi R) * kappa^(3/2) * I2(xi)
    B_z = mu0 I     / (4 sqrt(2) pi R) * kappa^(3/2) * (I1(xi) - eta I2(xi))

with the angular integrals

    I1(xi) = int_0^pi (1 - xi cos psi)^(-3/2) dpsi
           = pi (1+xi)^(-3/2) 2F1(1/2, 3/2; 1; 2xi/(1+xi))
    I2(xi) = int_0^pi cos psi (1 - xi cos psi)^(-3/2) dpsi
           = pi (1+xi)^(-3/2) [2F1(3/2, 3/2; 2; w) - 2F1(1/2, 3/2; 1; w)],
             w = 2xi/(1+xi).

Carrying kappa instead of the quotient xi/eta makes the axis (eta = 0)
regular.  Positive current circulates counter-clockwise seen from +z, so
B_z > 0 on the axis.  The classical complete-elliptic-integral form is
provided as an independent oracle.
"""

import math
import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from fracfield.errors import ConvergenceError, DomainError, OnWireError
from fracfield.specfun import ellipke_from_complement, gauss_2f1

__all__ = [
    "MU0",
    "WIRE_XI",
    "LoopGeometry",
    "SolenoidGeometry",
    "FieldPoint",
    "XiParams",
    "FieldVector",
    "FieldMap",
    "xi_of_point",
    "i1_closed",
    "i2_closed",
    "i1_quad",
    "i2_quad",
    "field_at_point",
    "field_elliptic_oracle",
    "on_axis_bz",
    "solenoid_field",
    "field_map",
]

MU0 = 4e-7 * math.pi
# xi above this is treated as lying on the conductor
WIRE_XI = 1.0 - 1e-12


@dataclass(frozen=True)
class LoopGeometry:
    radius_m: float
    current_a: float = 1.0

    def __post_init__(self):
        if not self.radius_m > 0:
            raise DomainError(f"radius must be positive, got {self.radius_m}")
        if not math.isfinite(self.current_a):
            raise DomainError(f"current must be finite, got {self.current_a}")


@dataclass(frozen=True)
class SolenoidGeometry:
    """Thin solenoid: ``n_turns`` loops spread uniformly over
    [-length_m/2, +length_m/2]; a single turn sits at z = 0."""

    radius_m: float
    current_a: float
    n_turns: int
    length_m: float

    def __post_init__(self):
        LoopGeometry(self.radius_m, self.current_a)
        if self.n_turns < 1:
            raise DomainError(f"n_turns must be >= 1, got {self.n_turns}")
        if not self.length_m > 0:
            raise DomainError(f"length must be positive, got {self.length_m}")

    def turn_offsets(self):
        n = self.n_turns
        if n == 1:
            return np.zeros(1)
        # half-integer multiples of one pitch: offsets are exact negatives
        pitch = self.length_m / (n - 1)
        return (np.arange(n) - 0.5 * (n - 1)) * pitch

    def loop(self):
        return LoopGeometry(self.radius_m, self.current_a)


@dataclass(frozen=True)
class FieldPoint:
    r_m: float
    z_m: float

    def __post_init__(self):
        if not self.r_m >= 0:
            raise DomainError(f"radial coordinate must be >= 0, got {self.r_m}")
        if not math.isfinite(self.z_m):
            raise DomainError(f"axial coordinate must be finite, got {self.z_m}")


@dataclass(frozen=True)
class XiParams:
    eta: float
    m_z: float
    xi: float
    kappa: float


@dataclass(frozen=True)
class FieldVector:
    b_r: float
    b_z: float

    def __add__(self, other):
        return FieldVector(self.b_r + other.b_r, self.b_z + other.b_z)


def xi_of_point(geom, pt):
    """Dimensionless coordinates of ``pt`` relative to the loop."""
    eta = pt.r_m / geom.radius_m
    m_z = pt.z_m / geom.radius_m
    denom = 1.0 + eta * eta + m_z * m_z
    xi = 2.0 * eta / denom
    if xi > WIRE_XI:
        raise OnWireError(f"point (r={pt.r_m}, z={pt.z_m}) lies on the loop conductor")
    return XiParams(eta=eta, m_z=m_z, xi=xi, kappa=2.0 / denom)


def _check_xi(xi):
    if not 0.0 <= xi < 1.0:
        raise DomainError(f"xi must lie in [0, 1), got {xi}")


def _closed_form_argument(xi):
    """w = 2 xi / (1 + xi) and 1 - w = (1 - xi) / (1 + xi), the latter
    without cancellation."""
    return 2.0 * xi / (1.0 + xi), (1.0 - xi) / (1.0 + xi)


def i1_closed(xi):
    """I1(xi) from its 2F1 closed form."""
    _check_xi(xi)
    w, wc = _closed_form_argument(xi)
    return math.pi / (1.0 + xi) ** 1.5 * gauss_2f1(0.5, 1.5, 1.0, w, complement=wc)


def i2_closed(xi):
    """I2(xi) from its 2F1 closed form (difference of two 2F1 values)."""
    _check_xi(xi)
    w, wc = _closed_form_argument(xi)
    diff = gauss_2f1(1.5, 1.5, 2.0, w, complement=wc) - gauss_2f1(
        0.5, 1.5, 1.0, w, complement=wc
    )
    return math.pi / (1.0 + xi) ** 1.5 * diff


def _angular_quad(xi, numerator):
    _check_xi(xi)
    # the integrand peaks at psi = 0 with width ~ sqrt(1 - xi)
    width = min(math.sqrt(2.0 * (1.0 - xi)), 1.0)
    cuts = [0.0]
    while cuts[-1] + width < math.pi and width < 1.0:
        cuts.append(cuts[-1] + width)
        width *= 3.0
    cuts.append(math.pi)
    # 1 - xi cos(psi) without cancellation near psi = 0
    gap = 1.0 - xi

    def integrand(p):
        s = math.sin(0.5 * p)
        return numerator(p) * (gap + 2.0 * xi * s * s) ** -1.5

    total, err = 0.0, 0.0
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        # the error estimate is checked below; QUADPACK's roundoff warning is noise
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", integrate.IntegrationWarning)
            v, e = integrate.quad(
                integrand,
                lo,
                hi,
                epsabs=1e-15,
                epsrel=1e-13,
                limit=200,
            )
        total += v
        err += e
    if not err <= 1e-12 * abs(total) + 1e-13:
        raise ConvergenceError(f"angular quadrature failed at xi={xi} (err={err:.3g})")
    return total


def i1_quad(xi):
    """I1(xi) by adaptive Gauss-Kronrod quadrature of its defining integral."""
    return _angular_quad(xi, lambda p: 1.0)


def i2_quad(xi):
    """I2(xi) by adaptive Gauss-Kronrod quadrature of its defining integral."""
    return _angular_quad(xi, math.cos)


def field_at_point(geom, pt):
    """(B_r, B_z) in tesla from the closed-form I1, I2."""
    p = xi_of_point(geom, pt)
    i1 = i1_closed(p.xi)
    i2 = i2_closed(p.xi)
    scale = MU0 * geom.current_a / (4.0 * math.sqrt(2.0) * math.pi * geom.radius_m)
    k32 = p.kappa**1.5
    return FieldVector(
        b_r=scale * p.m_z * k32 * i2,
        b_z=scale * k32 * (i1 - p.eta * i2),
    )


def field_elliptic_oracle(geom, pt):
    """(B_r, B_z) from the standard complete-elliptic-integral expressions.

    With m = 4 R r / ((R + r)^2 + z^2)::

        B_z = mu0 I / (2 pi sqrt((R+r)^2 + z^2))
              * [K(m) + (R^2 - r^2 - z^2) / ((R-r)^2 + z^2) * E(m)]
        B_r = mu0 I z / (2 pi r sqrt((R+r)^2 + z^2))
              * [-K(m) + (R^2 + r^2 + z^2) / ((R-r)^2 + z^2) * E(m)]
    """
    xi_of_point(geom, pt)  # on-wire guard
    R, r, z, current = geom.radius_m, pt.r_m, pt.z_m, geom.current_a
    plus = (R + r) ** 2 + z * z
    minus = (R - r) ** 2 + z * z
    k, e = ellipke_from_complement(minus / plus)
    c = MU0 * current / (2.0 * math.pi * math.sqrt(plus))
    b_z = c * (k + (R * R - r * r - z * z) / minus * e)
    if r == 0.0:
        return FieldVector(0.0, b_z)
    b_r = c * z / r * (-k + (R * R + r * r + z * z) / minus * e)
    return FieldVector(b_r, b_z)


def on_axis_bz(geom, z_m):
    """Classical on-axis field mu0 I R^2 / (2 (R^2 + z^2)^(3/2))."""
    R = geom.radius_m
    return MU0 * geom.current_a * R * R / (2.0 * (R * R + z_m * z_m) ** 1.5)


def solenoid_field(sol, pt, evaluator=field_at_point):
    """Superposed field of every turn of ``sol`` at ``pt``."""
    loop = sol.loop()
    b_r = b_z = 0.0
    for idx, dz in enumerate(sol.turn_offsets()):
        try:
            b = evaluator(loop, FieldPoint(pt.r_m, pt.z_m - dz))
        except OnWireError as exc:
            raise OnWireError(
                f"point (r={pt.r_m}, z={pt.z_m}) lies on turn {idx} at z={dz}", turn=idx
            ) from exc
        b_r += b.b_r
        b_z += b.b_z
    return FieldVector(b_r, b_z)


@dataclass(frozen=True)
class FieldMap:
    """Field on a tensor grid; ``b_r[i, j]`` is at (r[j], z[i])."""

    r: np.ndarray
    z: np.ndarray
    b_r: np.ndarray
    b_z: np.ndarray

    def rows(self):
        """Yield (r, z, B_r, B_z) with z outer and r inner."""
        for i, zv in enumerate(self.z):
            for j, rv in enumerate(self.r):
                yield float(rv), float(zv), float(self.b_r[i, j]), float(self.b_z[i, j])


def default_workers():
    """Worker count from LOOPFIELD_THREADS, else 1."""
    raw = os.environ.get("LOOPFIELD_THREADS")
    if not raw:
        return 1
    try:
        return max(1, int(raw))
    except ValueError:
        raise DomainError(f"LOOPFIELD_THREADS must be an integer, got {raw!r}") from None


def field_map(geom, r_range, z_range, n_r, n_z, workers=None):
    """Field on an n_z x n_r grid of evenly spaced points.

    ``geom`` is a LoopGeometry or SolenoidGeometry.  Points on a conductor
    get NaN in both components.  Each cell is computed independently, so the
    result is identical for any ``workers`` count.
    """
    if n_r < 1 or n_z < 1:
        raise DomainError(f"grid must be non-empty, got n_r={n_r}, n_z={n_z}")
    if isinstance(geom, SolenoidGeometry):
        def point_field(pt):
            return solenoid_field(geom, pt)
    else:
        def point_field(pt):
            return field_at_point(geom, pt)

    r = np.linspace(r_range[0], r_range[1], n_r)
    z = np.linspace(z_range[0], z_range[1], n_z)
    if r[0] < 0:
        raise DomainError(f"radial range must be >= 0, got {r_range}")

    def row(i):
        out = np.empty((2, n_r))
        for j in range(n_r):
            try:
                b = point_field(FieldPoint(float(r[j]), float(z[i])))
                out[:, j] = b.b_r, b.b_z
            except OnWireError:
                out[:, j] = np.nan
        return out

    workers = default_workers() if workers is None else max(1, int(workers))
    if workers == 1:
        rows = [row(i) for i in range(n_z)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(row, range(n_z)))
    data = np.stack(rows)  # (n_z, 2, n_r)
    return FieldMap(r=r, z=z, b_r=data[:, 0, :].copy(), b_z=data[:, 1, :].copy())
