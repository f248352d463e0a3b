"""Off-axis field of a thin circular current loop from hypergeometric closed
forms, fractional-calculus operators, and the special functions behind them."""

from fracfield.errors import (
    ConvergenceError,
    DomainError,
    NonIntegrableError,
    OnWireError,
    PoleError,
    SmoothnessError,
)
from fracfield.fracops import (
    FracSpec,
    SampledFunction,
    Scheme,
    caputo_derivative,
    cauchy_like_fracderiv,
    frac_monomial_rule,
    rl_integral,
)
from fracfield.loopfield import (
    MU0,
    FieldPoint,
    FieldVector,
    LoopGeometry,
    SolenoidGeometry,
    field_at_point,
    field_elliptic_oracle,
    field_map,
    i1_closed,
    i1_quad,
    i2_closed,
    i2_quad,
    solenoid_field,
    xi_of_point,
)
from fracfield.specfun import ellip_e, ellip_k, gamma, gauss_2f1

__version__ = "0.1.0"
