"""Scalar special functions: Gamma, Gauss 2F1 on [0, 1), complete elliptic K and E.

Elliptic integrals use the parameter convention ``m = k**2`` throughout::

    K(m) = int_0^{pi/2} (1 - m sin^2 t)^{-1/2} dt
    E(m) = int_0^{pi/2} (1 - m sin^2 t)^{1/2} dt

Every function here is pure and thread-safe.
"""

import math
from dataclasses import dataclass

from scipy import integrate

from fracfield.errors import ConvergenceError, DomainError, PoleError

__all__ = [
    "HypParams",
    "SeriesControl",
    "DEFAULT_CONTROL",
    "gamma",
    "gauss_2f1",
    "gauss_2f1_partial_sums",
    "ellip_k",
    "ellip_e",
    "ellipke_from_complement",
]

# Lanczos approximation, g = 7, n = 9.
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_SQRT_2PI = math.sqrt(2.0 * math.pi)

# Above this argument the raw series is abandoned for a transformed or
# integral representation.
EULER_SWITCH = 0.9
# Past this many terms, forward-recurrence rounding in the series exceeds the
# error of the quadrature path.
SERIES_CAP = 5000


def _is_nonpositive_integer(x):
    return x <= 0 and float(x).is_integer()


def gamma(x):
    """Euler Gamma function for real ``x``.

    Lanczos approximation on ``x >= 0.5``, reflection formula below that.
    Relative error is below 1e-13 on [0.5, 20].
    """
    x = float(x)
    if _is_nonpositive_integer(x):
        raise PoleError(f"gamma has a pole at x={x}")
    if x < 0.5:
        return math.pi / (math.sin(math.pi * x) * gamma(1.0 - x))
    if x.is_integer() and x <= 23:
        return float(math.factorial(int(x) - 1))
    x -= 1.0
    acc = _LANCZOS_COEF[0]
    for i in range(1, len(_LANCZOS_COEF)):
        acc += _LANCZOS_COEF[i] / (x + i)
    t = x + _LANCZOS_G + 0.5
    # split the power to delay overflow for large x
    half = t ** ((x + 0.5) / 2.0)
    return _SQRT_2PI * half * (half * math.exp(-t)) * acc


@dataclass(frozen=True)
class SeriesControl:
    """Stopping rule for series summation."""

    rel_tol: float = 1e-14
    max_terms: int = 10**6

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise DomainError(f"rel_tol must be positive, got {self.rel_tol}")
        if self.max_terms < 1:
            raise DomainError(f"max_terms must be >= 1, got {self.max_terms}")


DEFAULT_CONTROL = SeriesControl()


@dataclass(frozen=True)
class HypParams:
    """Parameters ``a, b, c`` and argument ``z`` of 2F1(a, b; c; z)."""

    a: float
    b: float
    c: float
    z: float

    def __post_init__(self):
        if _is_nonpositive_integer(self.c):
            raise DomainError(f"c must not be a non-positive integer, got {self.c}")
        if not 0.0 <= self.z < 1.0:
            raise DomainError(f"z must lie in [0, 1), got {self.z}")


def _sum_series(a, b, c, z, ctl):
    """Sum the hypergeometric series, stopping on a rigorous-ish tail bound.

    The tail after term t_n is bounded by |t_n| rho / (1 - rho), where rho
    bounds all later term ratios. Term ratios tend to z monotonically for
    large n, so rho = max(|next ratio|, z) is used.
    """
    term = 1.0
    total = 1.0
    for n in range(ctl.max_terms):
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z
        total += term
        if term == 0.0:
            return total
        k = n + 1.0
        rho = max(abs((a + k) * (b + k) / ((c + k) * (k + 1.0)) * z), z)
        if rho < 1.0 and abs(term) * rho / (1.0 - rho) <= ctl.rel_tol * abs(total):
            return total
    raise ConvergenceError(
        f"2F1({a}, {b}; {c}; {z}) series not converged after {ctl.max_terms} terms"
    )


def _terms_needed(z, rel_tol):
    if z == 0.0:
        return 1
    return math.log(rel_tol * (1.0 - z)) / math.log(z)


def _euler_integral(a, b, c, z, ctl, delta):
    """2F1 from Euler's integral; needs c > b > 0 for one ordering of a, b.

    The integrand t^(b-1) (1-t)^(c-b-1) (1-zt)^(-a) has endpoint
    singularities, handled by algebraic weights, and a peak of width ~(1-z)
    at t = 1, resolved by splitting [1/2, 1] geometrically in 1 - t.
    """
    for aa, bb in ((a, b), (b, a)):
        if c > bb > 0:
            break
    else:
        raise ConvergenceError(
            f"2F1({a}, {b}; {c}; {z}): series too slow and Euler's integral "
            "requires c > b > 0"
        )
    eps = max(ctl.rel_tol, 1e-13)
    pieces = []

    def run(func, lo, hi, **kw):
        val, err = integrate.quad(func, lo, hi, epsabs=0.0, epsrel=eps, limit=200, **kw)
        pieces.append((val, err))

    # t in [0, 1/2]
    run(
        lambda t: (1.0 - t) ** (c - bb - 1.0) * (1.0 - z * t) ** (-aa),
        0.0,
        0.5,
        weight="alg",
        wvar=(bb - 1.0, 0.0),
    )
    # u = 1 - t in [0, 1/2]; 1 - z t = delta + z u
    def tail(u):
        return (1.0 - u) ** (bb - 1.0) * (delta + z * u) ** (-aa)

    edge = min(delta, 0.5)
    run(tail, 0.0, edge, weight="alg", wvar=(c - bb - 1.0, 0.0))
    lo = edge
    while lo < 0.5:
        hi = min(4.0 * lo, 0.5)
        run(lambda u: u ** (c - bb - 1.0) * tail(u), lo, hi)
        lo = hi

    value = math.fsum(v for v, _ in pieces)
    err = sum(e for _, e in pieces)
    if not err <= max(ctl.rel_tol, 1e-10) * abs(value):
        raise ConvergenceError(f"Euler integral for 2F1 did not converge (err={err})")
    return gamma(c) / (gamma(bb) * gamma(c - bb)) * value


def gauss_2f1(a, b, c, z, ctl=DEFAULT_CONTROL, complement=None):
    """Gauss hypergeometric function 2F1(a, b; c; z) for real z in [0, 1).

    For ``z <= 0.9`` the defining power series is summed directly. Above
    that, Euler's transformation

        2F1(a, b; c; z) = (1 - z)^(c-a-b) 2F1(c-a, c-b; c; z)

    is applied whenever c - a - b < 0 (faster-decaying terms), and if the
    series would still need more than ``min(ctl.max_terms, SERIES_CAP)``
    terms the value is obtained from Euler's integral representation by
    quadrature.
    """
    p = HypParams(float(a), float(b), float(c), float(z))
    # canonical order makes the result exactly symmetric in a, b
    a, b = min(p.a, p.b), max(p.a, p.b)
    c, z = p.c, p.z
    if z <= EULER_SWITCH:
        return _sum_series(a, b, c, z, ctl)

    delta = 1.0 - z if complement is None else float(complement)
    if not 0.0 < delta <= 1.0:
        raise DomainError(f"complement 1 - z must lie in (0, 1], got {delta}")
    s = c - a - b
    if s < 0:
        ea, eb = min(c - a, c - b), max(c - a, c - b)
        prefactor = delta**s
    else:
        ea, eb = a, b
        prefactor = 1.0
    terminating = _is_nonpositive_integer(ea) or _is_nonpositive_integer(eb)
    if terminating or _terms_needed(z, ctl.rel_tol) <= min(ctl.max_terms, SERIES_CAP):
        try:
            return prefactor * _sum_series(ea, eb, c, z, ctl)
        except ConvergenceError:
            pass
    return prefactor * _euler_integral(ea, eb, c, z, ctl, delta)


def gauss_2f1_partial_sums(a, b, c, z, n_terms):
    """First ``n_terms`` partial sums of the raw 2F1 power series."""
    HypParams(float(a), float(b), float(c), float(z))
    if n_terms < 1:
        raise DomainError("n_terms must be >= 1")
    sums = [1.0]
    term = total = 1.0
    for n in range(n_terms - 1):
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z
        total += term
        sums.append(total)
    return sums


def _agm_ke(mc):
    """K and E from the complementary parameter ``mc = 1 - m`` by AGM."""
    m = 1.0 - mc
    a, g = 1.0, math.sqrt(mc)
    # sum of 2^(n-1) c_n^2 with c_0^2 = m
    acc = 0.5 * m
    weight = 0.5
    for _ in range(64):
        if abs(a - g) <= 4e-16 * a:
            break
        cn = 0.5 * (a - g)
        a, g = 0.5 * (a + g), math.sqrt(a * g)
        weight *= 2.0
        acc += weight * cn * cn
    else:
        raise ConvergenceError(f"AGM did not converge for mc={mc}")
    k = math.pi / (2.0 * a)
    return k, k * (1.0 - acc)


def ellipke_from_complement(mc):
    """Return (K(m), E(m)) given ``mc = 1 - m`` in (0, 1].

    Passing the complement avoids the cancellation in ``1 - m`` when m is
    close to 1, which matters near a current filament.
    """
    if not 0.0 < mc <= 1.0:
        raise DomainError(f"complementary parameter must lie in (0, 1], got {mc}")
    return _agm_ke(mc)


def ellip_k(m):
    """Complete elliptic integral of the first kind, parameter m in [0, 1)."""
    if not 0.0 <= m < 1.0:
        raise DomainError(f"ellip_k requires m in [0, 1), got {m}")
    return _agm_ke(1.0 - m)[0]


def ellip_e(m):
    """Complete elliptic integral of the second kind, parameter m in [0, 1]."""
    if not 0.0 <= m <= 1.0:
        raise DomainError(f"ellip_e requires m in [0, 1], got {m}")
    if m == 1.0:
        return 1.0
    return _agm_ke(1.0 - m)[1]
