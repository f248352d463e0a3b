"""Fractional integrals and derivatives of real functions on an interval.

Operators
---------
``rl_integral``
    Riemann-Liouville integral of order alpha > 0 from base point z0::

        (1 / Gamma(alpha)) int_{z0}^{z} f(t) (z - t)^(alpha - 1) dt

``caputo_derivative``
    Caputo derivative, n - 1 < alpha < n: the Riemann-Liouville integral of
    order n - alpha applied to f^(n).

``cauchy_like_fracderiv``
    Branch-cut (Cauchy-like) fractional formula::

        (sin(pi alpha) Gamma(alpha + 1) / pi) int_{z0}^{z} f(t) / (t - z0)^(alpha + 1) dt

    The derivation collapses a keyhole contour around the cut [z0, z]; its
    intermediate prefactor is sometimes written with a cosine combination
    (e^{i pi alpha} + e^{-i pi alpha}) / (2 pi i) instead.  The sine form is
    the one implemented, which vanishes at integer alpha, so integer orders
    are rejected.

All weakly singular integrals use product integration: f is replaced by its
piecewise-linear interpolant on a graded mesh and integrated exactly against
the power-law kernel.  Caller-supplied evaluators must be safe to call
concurrently if the operators are used from several threads.
"""

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import special

from fracfield.errors import DomainError, NonIntegrableError, SmoothnessError
from fracfield.specfun import gamma

__all__ = [
    "Scheme",
    "FracSpec",
    "SampledFunction",
    "BranchCutSeriesTerm",
    "rl_integral",
    "caputo_derivative",
    "cauchy_like_fracderiv",
    "frac_monomial_rule",
    "caputo_monomial_rule",
    "cauchy_like_monomial_rule",
    "branchcut_series_terms",
    "branchcut_series_partial",
    "branchcut_series_limit",
    "fd_weights",
]

_MAX_GRADING = 10.0
_GL_X, _GL_W = np.polynomial.legendre.leggauss(10)


class Scheme(enum.Enum):
    PRODUCT_TRAPEZOID = "product_trapezoid"
    GAUSS_JACOBI = "gauss_jacobi"


@dataclass(frozen=True)
class FracSpec:
    """Order, base point and discretisation of a fractional operator.

    ``grading`` is the mesh exponent toward ``z0``; None picks 2/alpha
    (clipped to [1, 10]).
    """

    alpha: float
    z0: float = 0.0
    scheme: Scheme = Scheme.PRODUCT_TRAPEZOID
    n_nodes: int = 2048
    grading: float = None

    def __post_init__(self):
        if self.n_nodes < 2:
            raise DomainError(f"n_nodes must be >= 2, got {self.n_nodes}")
        object.__setattr__(self, "scheme", Scheme(self.scheme))


@dataclass(frozen=True)
class SampledFunction:
    """A scalar function together with its declared number of continuous
    derivatives.

    The evaluator may accept numpy arrays; if it does not, it is called
    pointwise.
    """

    evaluator: object
    smoothness_hint: int = 0

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        try:
            out = np.asarray(self.evaluator(t), dtype=float)
            if out.shape == t.shape:
                return out
        except (TypeError, ValueError):
            pass
        flat = [float(self.evaluator(float(x))) for x in t.ravel()]
        return np.array(flat, dtype=float).reshape(t.shape)


def _as_sampled(f):
    # plain callables are taken to be smooth
    if isinstance(f, SampledFunction):
        return f
    return SampledFunction(f, smoothness_hint=2**31)


@dataclass(frozen=True)
class BranchCutSeriesTerm:
    """One term ``coefficient / z**power_of_denominator`` of the expansion
    of (z - z0)^-(alpha+1) in powers of z0 / z."""

    index: int
    coefficient: float
    power_of_denominator: float


# --------------------------------------------------------------------------
# product integration


@dataclass(frozen=True)
class _Mesh:
    t: np.ndarray  # nodes
    left: np.ndarray  # t - z0, accurate near z0
    right: np.ndarray  # z - t, accurate near z
    h: np.ndarray  # cell widths


def _graded_mesh(z0, z, n_nodes, q):
    """Nodes graded as s**q toward z0 and quadratically toward z.

    Distances to each end are built directly rather than by subtraction so
    the tiny cells keep full relative accuracy.
    """
    L = z - z0
    s = np.linspace(0.0, 1.0, n_nodes)
    first = s <= 0.5
    left = np.empty(n_nodes)
    right = np.empty(n_nodes)
    left[first] = 0.5 * L * (2.0 * s[first]) ** q
    right[first] = L - left[first]
    right[~first] = 0.5 * L * (2.0 * (1.0 - s[~first])) ** 2
    left[~first] = L - right[~first]
    h = np.empty(n_nodes - 1)
    nf = int(first.sum())
    h[: nf - 1] = np.diff(left[:nf])
    h[nf - 1 :] = -np.diff(right[nf - 1 :])
    t = np.where(first, z0 + left, z - right)
    t[0], t[-1] = z0, z
    return _Mesh(t, left, right, h)


def _cell_moments(lo, h, beta):
    """Moments m0 = int u^(beta-1), m1 = int (u - lo) u^(beta-1) over
    [lo, lo + h] for each cell.

    Closed forms are used where they are well conditioned (cells touching or
    close to the singularity); elsewhere the smooth weight is integrated by
    10-point Gauss-Legendre to avoid cancellation.
    """
    m0 = np.empty_like(h)
    m1 = np.empty_like(h)
    hi = lo + h
    near = (lo == 0.0) | (h > 0.25 * lo)
    b = beta
    m0[near] = (hi[near] ** b - lo[near] ** b) / b
    m1[near] = (hi[near] ** (b + 1) - lo[near] ** (b + 1)) / (b + 1) - lo[near] * m0[near]
    far = ~near
    if far.any():
        x = 0.5 * (_GL_X[None, :] + 1.0) * h[far][:, None]
        w = 0.5 * h[far][:, None] * _GL_W[None, :] * (lo[far][:, None] + x) ** (b - 1)
        m0[far] = w.sum(axis=1)
        m1[far] = (w * x).sum(axis=1)
    return m0, m1


def _product_weights(mesh, beta, singular_end):
    """Node weights w with sum_j w_j g(t_j) = int g_lin(t) |t - s|^(beta-1) dt,
    g_lin the piecewise-linear interpolant and s the singular endpoint."""
    h = mesh.h
    keep = h > 0.0
    w = np.zeros(mesh.t.size)
    if singular_end == "right":
        lo = mesh.right[1:]
        near_idx, far_idx = np.arange(1, w.size), np.arange(w.size - 1)
    else:
        lo = mesh.left[:-1]
        near_idx, far_idx = np.arange(w.size - 1), np.arange(1, w.size)
    m0, m1 = _cell_moments(lo[keep], h[keep], beta)
    frac = m1 / h[keep]
    np.add.at(w, near_idx[keep], m0 - frac)
    np.add.at(w, far_idx[keep], frac)
    return w


def _grading(spec_grading, order):
    if spec_grading is not None:
        return float(spec_grading)
    return min(max(2.0 / order, 1.0), _MAX_GRADING)


def _rl_raw(f, alpha, z0, z, scheme, n_nodes, grading):
    """int_{z0}^{z} f(t) (z - t)^(alpha - 1) dt, without the 1/Gamma."""
    L = z - z0
    if scheme is Scheme.GAUSS_JACOBI:
        x, w = special.roots_jacobi(n_nodes, alpha - 1.0, 0.0)
        t = z0 + 0.5 * L * (1.0 + x)
        return (0.5 * L) ** alpha * float(np.dot(w, f(t)))
    mesh = _graded_mesh(z0, z, n_nodes, _grading(grading, alpha))
    w = _product_weights(mesh, alpha, "right")
    return float(np.dot(w, f(mesh.t)))


def rl_integral(f, spec, z):
    """Riemann-Liouville fractional integral of order ``spec.alpha`` at ``z``.

    ``f`` is a SampledFunction or a plain callable.  With the default
    product-trapezoid scheme the error for smooth f is O(n_nodes^-2); the
    Gauss-Jacobi scheme is exact for polynomials of degree < 2 n_nodes.
    """
    if not spec.alpha > 0:
        raise DomainError(f"Riemann-Liouville order must be > 0, got alpha={spec.alpha}")
    if not z > spec.z0:
        raise DomainError(f"need z > z0, got z={z}, z0={spec.z0}")
    f = _as_sampled(f)
    raw = _rl_raw(f, spec.alpha, spec.z0, z, spec.scheme, spec.n_nodes, spec.grading)
    return raw / gamma(spec.alpha)


def fd_weights(offsets, order):
    """Exact finite-difference weights (Fornberg) for the ``order``-th
    derivative at 0 from integer stencil ``offsets``, as Fractions."""
    xs = [Fraction(o) for o in offsets]
    n = len(xs)
    c = [[Fraction(0)] * (order + 1) for _ in range(n)]
    c[0][0] = Fraction(1)
    c1 = Fraction(1)
    for i in range(1, n):
        c2 = Fraction(1)
        for j in range(i):
            c3 = xs[i] - xs[j]
            c2 *= c3
            for k in range(min(i, order), -1, -1):
                prev_i = c[i - 1][k - 1] if k else Fraction(0)
                c[i][k] = c1 * (k * prev_i - xs[i - 1] * c[i - 1][k]) / c2
            for k in range(min(i, order), -1, -1):
                prev_j = c[j][k - 1] if k else Fraction(0)
                c[j][k] = (xs[i] * c[j][k] - k * prev_j) / c3
        c1 = c2
    return [row[order] for row in c]


def _nth_derivative(f, t, n, step, z0, z):
    """Second-order finite differences for f^(n) at nodes ``t``: central
    stencils in the interior, one-sided within reach of either end."""
    p = (n + 1) // 2
    central = list(range(-p, p + 1))
    forward = list(range(0, n + 2))
    backward = [-o for o in forward]
    out = np.empty_like(t)
    reach = p * step
    kinds = (
        (t - reach < z0, forward),
        (t + reach > z, backward),
    )
    used = np.zeros(t.size, dtype=bool)
    for mask, offs in kinds:
        mask = mask & ~used
        used |= mask
        if mask.any():
            out[mask] = _apply_stencil(f, t[mask], offs, n, step)
    rest = ~used
    if rest.any():
        out[rest] = _apply_stencil(f, t[rest], central, n, step)
    return out


def _apply_stencil(f, t, offsets, n, step):
    w = np.array([float(x) for x in fd_weights(offsets, n)])
    pts = t[:, None] + np.asarray(offsets, dtype=float)[None, :] * step
    return f(pts) @ w / step**n


def caputo_derivative(f, spec, z):
    """Caputo fractional derivative of order ``spec.alpha`` at ``z``.

    The n-th derivative (n = ceil(alpha)) is taken by second-order finite
    differences with step (z - z0) * 1e-4 and then fractionally integrated
    with order n - alpha using ``spec``'s scheme.
    """
    alpha = spec.alpha
    n = math.ceil(alpha)
    if not (alpha > 0 and n - 1 < alpha < n):
        raise DomainError(f"Caputo order must be positive and non-integer, got {alpha}")
    if not z > spec.z0:
        raise DomainError(f"need z > z0, got z={z}, z0={spec.z0}")
    f = _as_sampled(f)
    if f.smoothness_hint < n:
        raise SmoothnessError(
            f"Caputo order {alpha} needs {n} derivatives, function declares "
            f"{f.smoothness_hint}"
        )
    step = (z - spec.z0) * 1e-4

    def deriv(t):
        t = np.asarray(t, dtype=float)
        return _nth_derivative(f, t.ravel(), n, step, spec.z0, z).reshape(t.shape)

    order = n - alpha
    raw = _rl_raw(deriv, order, spec.z0, z, spec.scheme, spec.n_nodes, spec.grading)
    return raw / gamma(order)


def _check_integrable(f, alpha, z0, z):
    L = z - z0
    probes = []
    for scale in (1e-4, 1e-6):
        eps = scale * L
        probes.append(abs(float(f(np.array([z0 + eps]))[0])) * eps ** (-alpha))
    v4, v6 = probes
    if not (math.isfinite(v4) and math.isfinite(v6)) or (v6 > 0.0 and v6 >= v4):
        raise NonIntegrableError(
            f"f(t)/(t-z0)^{alpha + 1} does not look integrable at z0={z0}: "
            f"|f(z0+e)| e^-alpha = {v4:.3g} (e=1e-4 L), {v6:.3g} (e=1e-6 L)"
        )


def cauchy_like_fracderiv(f, alpha, z0, z, n_nodes=2048):
    """Branch-cut fractional formula of order ``alpha`` at ``z``.

    For alpha >= 0 the integrand is only integrable if f vanishes fast
    enough at z0; this is probed numerically and NonIntegrableError raised
    otherwise.  The factor (t - z0)^k, k = floor(alpha) + 1, is then moved
    into the kernel so product integration sees an integrable weight.  Full
    accuracy needs f / (t - z0)^k to stay bounded; when it does not (say
    f = t**0.75 at alpha = 0.25) the first cell limits the result to a few
    parts in 1e6.
    """
    alpha = float(alpha)
    if alpha.is_integer():
        raise DomainError(f"cauchy-like formula is degenerate at integer alpha={alpha}")
    if not z > z0:
        raise DomainError(f"need z > z0, got z={z}, z0={z0}")
    if n_nodes < 3:
        raise DomainError(f"n_nodes must be >= 3, got {n_nodes}")
    f = _as_sampled(f)
    _check_integrable(f, alpha, z0, z)

    k = max(0, math.floor(alpha) + 1)
    beta = k - alpha  # kernel (t - z0)^(beta - 1), beta in (0, 1] for alpha >= 0
    mesh = _graded_mesh(z0, z, n_nodes, _grading(None, beta))
    values = f(mesh.t)
    if k:
        g = np.empty_like(values)
        g[1:] = values[1:] / mesh.left[1:] ** k
        # g(z0) is a 0/0 limit; extrapolate linearly
        g[0] = g[1] - (g[2] - g[1]) * mesh.left[1] / (mesh.left[2] - mesh.left[1])
        values = g
    w = _product_weights(mesh, beta, "left")
    integral = float(np.dot(w, values))
    return math.sin(math.pi * alpha) * gamma(alpha + 1.0) / math.pi * integral


# --------------------------------------------------------------------------
# exact rules for monomials, used as oracles


def frac_monomial_rule(p, alpha, z):
    """Exact Riemann-Liouville integral of t**p from 0:
    Gamma(p+1) / Gamma(p+alpha+1) * z**(p+alpha)."""
    if not p > -1:
        raise DomainError(f"monomial power must exceed -1, got p={p}")
    if not z > 0:
        raise DomainError(f"need z > 0, got {z}")
    if not alpha > 0:
        raise DomainError(f"integration order must be > 0, got {alpha}")
    return gamma(p + 1.0) / gamma(p + alpha + 1.0) * z ** (p + alpha)


def caputo_monomial_rule(p, alpha, z):
    """Exact Caputo derivative of t**p from 0 (p >= 0)."""
    n = math.ceil(alpha)
    if float(p).is_integer() and p < n:
        return 0.0
    if not p > n - 1:
        raise DomainError(f"t**{p} lacks {n} integrable derivatives at 0")
    return gamma(p + 1.0) / gamma(p + 1.0 - alpha) * z ** (p - alpha)


def cauchy_like_monomial_rule(p, alpha, z):
    """Exact branch-cut formula for t**p with base point 0 (needs p > alpha)."""
    if not p > alpha:
        raise DomainError(f"t**{p} / t**({alpha}+1) is not integrable at 0")
    prefactor = math.sin(math.pi * alpha) * gamma(alpha + 1.0) / math.pi
    return prefactor * z ** (p - alpha) / (p - alpha)


# --------------------------------------------------------------------------
# series expansion behind the convergence argument


def branchcut_series_terms(alpha, z0, n_terms):
    """Terms of (z - z0)^-(alpha+1) = sum_n c_n / z^(alpha+1+n),
    c_n = (alpha+1)_n / n! * z0^n."""
    if n_terms < 1:
        raise DomainError(f"n_terms must be >= 1, got {n_terms}")
    terms = []
    coef = 1.0
    for n in range(n_terms):
        terms.append(BranchCutSeriesTerm(n, coef, alpha + 1.0 + n))
        coef *= (alpha + 1.0 + n) / (n + 1.0) * z0
    return terms


def branchcut_series_partial(alpha, z0, z, n_terms):
    """Partial sums S_1..S_{n_terms} of the expansion of (z - z0)^-(alpha+1)
    in powers of the ratio z0 / z, which must satisfy |z0 / z| < 1."""
    if not z > 0:
        raise DomainError(f"expansion point z must be positive, got {z}")
    ratio = z0 / z
    if not abs(ratio) < 1.0:
        raise DomainError(f"series needs |z0/z| < 1, got {ratio}")
    if n_terms < 1:
        raise DomainError(f"n_terms must be >= 1, got {n_terms}")
    term = z ** (-(alpha + 1.0))
    total = 0.0
    sums = []
    for n in range(n_terms):
        total += term
        sums.append(total)
        term *= (alpha + 1.0 + n) / (n + 1.0) * ratio
    return sums


def branchcut_series_limit(alpha, z0, z):
    """The value the series converges to, (z - z0)^-(alpha+1)."""
    return (z - z0) ** (-(alpha + 1.0))
