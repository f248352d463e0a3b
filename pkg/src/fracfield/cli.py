"""Command-line front end.

Subcommands::

    fracfield point  --radius R --current I --r r --z z
    fracfield map    --r-max 3 --z-min -3 --z-max 3 --nr 50 --nz 50 -o field.csv
    fracfield verify [--tolerance T] [--xi-max X]
    fracfield frac   --op rl|caputo|cauchy-like --alpha A --fn power:1 --z 1

Exit codes: 0 success, 2 validation error, 3 point on a conductor,
4 output not writable, 5 verification failure.  Lengths are metres, currents
amperes, fields tesla.  Elliptic integrals use the parameter m = k^2.
"""

import argparse
import math
import sys

import numpy as np

from fracfield import fracops, loopfield, verify
from fracfield.errors import DomainError, OnWireError

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_ON_WIRE = 3
EXIT_IO = 4
EXIT_VERIFY = 5

_SEPARATORS = {"text": " ", "csv": ",", "tsv": "\t"}


class CliError(Exception):
    def __init__(self, message, code=EXIT_VALIDATION):
        super().__init__(message)
        self.code = code


def fmt(x):
    """17 significant digits; NaN prints as ``nan``, -0.0 as ``0``."""
    return format(float(x) + 0.0, ".17g")


def _require(ok, flag, message):
    if not ok:
        raise CliError(f"invalid {flag}: {message}")


def _finite(args, *flags):
    for flag in flags:
        value = getattr(args, flag.lstrip("-").replace("-", "_"))
        _require(value is not None and math.isfinite(value), flag, f"must be finite, got {value}")


def _geometry(args):
    _finite(args, "--radius", "--current")
    _require(args.radius > 0, "--radius", f"must be > 0, got {args.radius}")
    _require(args.turns >= 1, "--turns", f"must be >= 1, got {args.turns}")
    if args.turns == 1:
        return loopfield.LoopGeometry(args.radius, args.current)
    _require(args.length is not None, "--length", "required when --turns > 1")
    _finite(args, "--length")
    _require(args.length > 0, "--length", f"must be > 0, got {args.length}")
    return loopfield.SolenoidGeometry(args.radius, args.current, args.turns, args.length)


def run_point(args, out=sys.stdout):
    geom = _geometry(args)
    _finite(args, "--r", "--z")
    _require(args.r >= 0, "--r", f"must be >= 0, got {args.r}")
    pt = loopfield.FieldPoint(args.r, args.z)
    try:
        if isinstance(geom, loopfield.SolenoidGeometry):
            b = loopfield.solenoid_field(geom, pt)
        else:
            b = loopfield.field_at_point(geom, pt)
    except OnWireError as exc:
        raise CliError(str(exc), EXIT_ON_WIRE) from exc
    sep = _SEPARATORS[args.format]
    out.write(sep.join(fmt(v) for v in (args.r, args.z, b.b_r, b.b_z)) + "\n")
    return EXIT_OK


def write_map(fmap, stream, sep=","):
    """Write a FieldMap as delimited text: header ``r,z,Br,Bz``, z outer,
    r inner, LF line endings."""
    stream.write(sep.join(("r", "z", "Br", "Bz")) + "\n")
    for row in fmap.rows():
        stream.write(sep.join(fmt(v) for v in row) + "\n")


def run_map(args, out=sys.stdout):
    geom = _geometry(args)
    _finite(args, "--r-min", "--r-max", "--z-min", "--z-max")
    _require(args.nr >= 1, "--nr", f"must be >= 1, got {args.nr}")
    _require(args.nz >= 1, "--nz", f"must be >= 1, got {args.nz}")
    _require(args.r_min >= 0, "--r-min", f"must be >= 0, got {args.r_min}")
    _require(args.r_max >= args.r_min, "--r-max", "must be >= --r-min")
    _require(args.z_max >= args.z_min, "--z-max", "must be >= --z-min")
    if args.threads is not None:
        _require(args.threads >= 1, "--threads", f"must be >= 1, got {args.threads}")
    try:
        fmap = loopfield.field_map(
            geom, (args.r_min, args.r_max), (args.z_min, args.z_max), args.nr, args.nz,
            workers=args.threads,
        )
    except DomainError as exc:
        raise CliError(str(exc)) from exc
    sep = _SEPARATORS["tsv" if args.format == "tsv" else "csv"]
    if args.output in (None, "-"):
        write_map(fmap, out, sep)
        return EXIT_OK
    try:
        with open(args.output, "w", newline="\n", encoding="ascii") as fh:
            write_map(fmap, fh, sep)
    except OSError as exc:
        raise CliError(f"cannot write {args.output}: {exc.strerror}", EXIT_IO) from exc
    return EXIT_OK


def run_verify(args, out=sys.stdout):
    if args.tolerance is not None:
        _require(args.tolerance > 0, "--tolerance", f"must be > 0, got {args.tolerance}")
    _require(0.0 < args.xi_max < 1.0, "--xi-max", f"must lie in (0, 1), got {args.xi_max}")
    report = verify.run_checks(tolerance=args.tolerance, xi_max=args.xi_max)
    out.write(report.format() + "\n")
    if report.passed:
        out.write("all checks passed\n")
        return EXIT_OK
    out.write("FAILED: " + "; ".join(c.name for c in report.failures()) + "\n")
    return EXIT_VERIFY


# -- frac ------------------------------------------------------------------

_CATALOG = {"const": 0.0, "linear": 1.0, "quadratic": 2.0, "sqrt": 0.5}


def parse_function(spec):
    """Map a catalog name to (callable, power).  ``power:p`` means t**p."""
    if spec in _CATALOG:
        p = _CATALOG[spec]
    elif spec.startswith("power:"):
        try:
            p = float(spec.split(":", 1)[1])
        except ValueError:
            raise CliError(f"invalid --fn: bad exponent in {spec!r}") from None
        _require(math.isfinite(p) and p >= 0, "--fn", f"exponent must be >= 0, got {p}")
    else:
        raise CliError(f"invalid --fn: unknown function {spec!r} "
                       f"(choose from {', '.join(_CATALOG)}, power:p)")

    def f(t, p=p):
        t = np.asarray(t, dtype=float)
        return np.ones_like(t) if p == 0 else t**p

    return f, p


def _oracle(op, p, alpha, z):
    try:
        if op == "rl":
            return fracops.frac_monomial_rule(p, alpha, z)
        if op == "caputo":
            return fracops.caputo_monomial_rule(p, alpha, z)
        return fracops.cauchy_like_monomial_rule(p, alpha, z)
    except DomainError:
        return None


def run_frac(args, out=sys.stdout):
    _finite(args, "--alpha", "--z", "--z0")
    f, p = parse_function(args.fn)
    _require(args.z > args.z0, "--z", f"must exceed --z0={args.z0}")
    _require(args.n_nodes >= 3, "--n-nodes", f"must be >= 3, got {args.n_nodes}")
    a = args.alpha
    if args.op == "rl":
        _require(a > 0, "--alpha", f"Riemann-Liouville order must be > 0, got {a}")
    elif args.op == "caputo":
        _require(a > 0 and not float(a).is_integer(), "--alpha",
                 f"Caputo order must be positive and non-integer, got {a}")
    else:
        _require(not float(a).is_integer(), "--alpha", f"must be non-integer, got {a}")

    spec = fracops.FracSpec(a, z0=args.z0, scheme=args.scheme, n_nodes=args.n_nodes)
    try:
        if args.op == "rl":
            value = fracops.rl_integral(f, spec, args.z)
        elif args.op == "caputo":
            value = fracops.caputo_derivative(f, spec, args.z)
        else:
            value = fracops.cauchy_like_fracderiv(f, a, args.z0, args.z, n_nodes=args.n_nodes)
    except DomainError as exc:
        raise CliError(f"invalid --alpha/--fn: {exc}") from exc

    parts = [f"value={fmt(value)}"]
    exact = _oracle(args.op, p, a, args.z) if args.z0 == 0 else None
    if exact is not None:
        err = abs(value - exact) / abs(exact) if exact else abs(value)
        parts += [f"oracle={fmt(exact)}", f"rel_error={err:.3e}"]
    out.write(" ".join(parts) + "\n")
    return EXIT_OK


# -- parser ----------------------------------------------------------------


def _add_geometry(p):
    p.add_argument("--radius", type=float, default=1.0, help="loop radius R [m]")
    p.add_argument("--current", type=float, default=1.0, help="current I [A]; I > 0 gives B_z > 0 on axis")
    p.add_argument("--turns", type=int, default=1, help="number of turns (> 1 makes a thin solenoid)")
    p.add_argument("--length", type=float, default=None, help="solenoid length [m], required with --turns > 1")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="fracfield",
        description="Off-axis field of a thin current loop from hypergeometric closed "
        "forms, with fractional-calculus operators and cross-checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("point", help="field at one point, prints 'r z Br Bz'")
    _add_geometry(p)
    p.add_argument("--r", type=float, required=True, help="radial distance [m]")
    p.add_argument("--z", type=float, required=True, help="axial distance from loop centre [m]")
    p.add_argument("--format", choices=sorted(_SEPARATORS), default="text")
    p.set_defaults(handler=run_point)

    p = sub.add_parser("map", help="field on an r-z grid as CSV 'r,z,Br,Bz'")
    _add_geometry(p)
    p.add_argument("--r-min", type=float, default=0.0)
    p.add_argument("--r-max", type=float, default=3.0)
    p.add_argument("--z-min", type=float, default=-3.0)
    p.add_argument("--z-max", type=float, default=3.0)
    p.add_argument("--nr", type=int, default=50)
    p.add_argument("--nz", type=int, default=50)
    p.add_argument("-o", "--output", default="-", help="output file, '-' for stdout")
    p.add_argument("--format", choices=("csv", "tsv"), default="csv")
    p.add_argument("--threads", type=int, default=None,
                   help="worker threads (default: $LOOPFIELD_THREADS or 1)")
    p.set_defaults(handler=run_map)

    p = sub.add_parser("verify", help="cross-check all evaluation paths")
    p.add_argument("--tolerance", type=float, default=None, help="override every error tolerance")
    p.add_argument("--xi-max", type=float, default=0.99, help="xi of the near-wire closed-form row")
    p.set_defaults(handler=run_verify)

    p = sub.add_parser("frac", help="apply a fractional operator to a catalog function")
    p.add_argument("--op", choices=("rl", "caputo", "cauchy-like"), required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--fn", required=True, help="const, linear, quadratic, sqrt or power:p")
    p.add_argument("--z", type=float, default=1.0)
    p.add_argument("--z0", type=float, default=0.0)
    p.add_argument("--n-nodes", type=int, default=2048)
    p.add_argument("--scheme", choices=[s.value for s in fracops.Scheme],
                   default=fracops.Scheme.PRODUCT_TRAPEZOID.value)
    p.set_defaults(handler=run_frac)
    return parser


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse: 0 for --help, 2 for usage errors
        return exc.code
    try:
        return args.handler(args, out=out)
    except CliError as exc:
        err.write(f"fracfield {args.command}: {exc}\n")
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
