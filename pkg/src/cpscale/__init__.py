"""Scale functions of spectrally negative compound Poisson processes.

The model is ``L_t = c t - sum_{i <= N_t} xi_i`` with drift c > 0, Poisson
jump intensity lam > 0 and positive i.i.d. jump sizes.  The package
evaluates the q-scale function W, its one-sided and higher derivatives, and
its primitive through a convolution-power series, with closed-form fast
paths for Dirac, geometric, zero-truncated Poisson and Gamma jumps, plus
independent oracles (Laplace-transform identity, event-driven Monte Carlo,
integrated-tail series) to verify every quantity.
"""

from ._kernels import BACKEND as kernel_backend
from .errors import (
    ConditioningWarning,
    ConfigError,
    CPScaleError,
    DomainError,
    NumericRangeError,
    ResourceError,
    TruncationError,
    UnsupportedSmoothnessError,
)
from .jumps import (
    ConvolutionTable,
    Dirac,
    Gamma,
    Geometric,
    GridDensity,
    JumpDistribution,
    Lattice,
    ZeroTruncatedPoisson,
    conv_cdf,
    convolve_up_to,
    discretize_to_lattice,
    jumps_from_descriptor,
    jumps_to_descriptor,
    ztp_z,
    ztp_z_table,
)
from .oracles import (
    MCEstimate,
    PathConfig,
    laplace_check,
    mc_expectation_derivatives_and_primitive,
    mc_expectation_w,
    mc_two_sided_exit,
    pk_zero_scale,
    recursion_identity_residual,
)
from .processes import ProcessParams, laplace_exponent, phi
from .scale import (
    ScaleEvaluator,
    SmoothnessReport,
    TruncationPolicy,
    derivative_minus,
    derivative_plus,
    g_kernel,
    higher_derivative,
    primitive,
    recursion_eval,
    rescale_drift,
    rescale_space,
    scale_w,
    scale_w_lattice,
    smoothness_order,
)

__version__ = "0.1.0"

__all__ = [
    "kernel_backend",
    "CPScaleError",
    "ConditioningWarning",
    "ConfigError",
    "DomainError",
    "NumericRangeError",
    "ResourceError",
    "TruncationError",
    "UnsupportedSmoothnessError",
    "JumpDistribution",
    "Dirac",
    "Geometric",
    "ZeroTruncatedPoisson",
    "Gamma",
    "Lattice",
    "GridDensity",
    "ConvolutionTable",
    "convolve_up_to",
    "conv_cdf",
    "ztp_z",
    "ztp_z_table",
    "jumps_from_descriptor",
    "jumps_to_descriptor",
    "discretize_to_lattice",
    "ProcessParams",
    "laplace_exponent",
    "phi",
    "ScaleEvaluator",
    "TruncationPolicy",
    "SmoothnessReport",
    "g_kernel",
    "scale_w",
    "scale_w_lattice",
    "recursion_eval",
    "derivative_plus",
    "derivative_minus",
    "higher_derivative",
    "primitive",
    "rescale_space",
    "rescale_drift",
    "smoothness_order",
    "MCEstimate",
    "PathConfig",
    "mc_two_sided_exit",
    "mc_expectation_w",
    "mc_expectation_derivatives_and_primitive",
    "laplace_check",
    "pk_zero_scale",
    "recursion_identity_residual",
]
