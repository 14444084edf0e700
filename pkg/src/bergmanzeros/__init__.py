"""Reproducing kernels of radially weighted analytic function spaces.

Moments and star transforms of radial weights on the disk and the plane,
their kernels in one-variable form, exact numerator polynomials of
iterated star kernels, and zero location by simultaneous root iteration
and the argument principle.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .checks import CheckOutcome, PolynomialFunction, run_suite
from .kernels import (
    EvalResult,
    KernelSeries,
    closed_form,
    evaluate,
    evaluate_adaptive,
    kernel_series,
    point_evaluation_norm,
    two_variable_value,
)
from .plane import ExpKernelClosedForm, sb_kernel, sb_star_iterate, sb_zeros
from .starcalc import (
    AlphaPolynomial,
    RationalPoly,
    StarKernelClosedForm,
    rouche_margin,
    rouche_threshold,
    star_numerator,
)
from .weights import (
    MomentSequence,
    QuadratureConfig,
    RadialWeight,
    moment,
    moment_exact,
    star,
    star_moments,
)
from .wexpr import parse_weight
from .zeros import (
    ContourSpec,
    ZeroReport,
    count_zeros,
    largest_zero_modulus,
    point_kernel_zeros,
    poly_roots,
    zero_free_radius,
    zero_map,
)

__all__ = [
    "__version__",
    "CheckOutcome",
    "PolynomialFunction",
    "run_suite",
    "EvalResult",
    "KernelSeries",
    "closed_form",
    "evaluate",
    "evaluate_adaptive",
    "kernel_series",
    "point_evaluation_norm",
    "two_variable_value",
    "ExpKernelClosedForm",
    "sb_kernel",
    "sb_star_iterate",
    "sb_zeros",
    "AlphaPolynomial",
    "RationalPoly",
    "StarKernelClosedForm",
    "rouche_margin",
    "rouche_threshold",
    "star_numerator",
    "MomentSequence",
    "QuadratureConfig",
    "RadialWeight",
    "moment",
    "moment_exact",
    "star",
    "star_moments",
    "parse_weight",
    "ContourSpec",
    "ZeroReport",
    "count_zeros",
    "largest_zero_modulus",
    "point_kernel_zeros",
    "poly_roots",
    "zero_free_radius",
    "zero_map",
]
