"""One-variable reproducing kernels of radial weights.

For a radial weight the two-variable kernel collapses to a power series
in the single variable ``zeta = conj(z) * xi``:

    B(zeta) = sum_n  zeta^n / w_n ,

so every kernel here is stored and evaluated as a function of zeta, and
two-variable queries are thin wrappers.  Closed forms:

    standard(alpha):            (1 - zeta)^-(2+alpha)
    gaussian(gamma):            exp(gamma zeta)
    star^n(standard(alpha)):    q_n(zeta) / (1 - zeta)^(2+alpha+2n)
    star^n(gaussian(gamma)):    (4 gamma)^n-style prefactor * poly * exp

Series evaluation reports a certified truncation tail (geometric bound
from the trailing coefficient ratio, which is monotone decreasing for
every built-in family) and escalates to multiprecision summation when
floating-point cancellation would eat the requested tolerance.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from . import starcalc
from . import weights as _weights
from .errors import (
    BranchPointError,
    DiagonalDivergenceError,
    KernelHasZeroError,
    NoClosedFormError,
    OutsideDomainError,
    TruncationInsufficientError,
)
from .weights import DEFAULT_QUADRATURE, QuadratureConfig, RadialWeight

__all__ = [
    "KernelSeries",
    "EvalResult",
    "kernel_series",
    "evaluate",
    "evaluate_adaptive",
    "closed_form",
    "has_closed_form",
    "point_evaluation_norm",
    "two_variable_value",
    "extremal_values",
    "DEFAULT_TRUNCATION",
    "TRUNCATION_CAP",
    "DISK_EVAL_GUARD",
]

DEFAULT_TRUNCATION = 256
TRUNCATION_CAP = 16384
DISK_EVAL_GUARD = 0.999

_EPS = float(np.finfo(float).eps)


@dataclass(frozen=True)
class EvalResult:
    """A kernel value with a rigorous truncation-error bound."""

    value: complex
    tail_bound: float
    terms_used: int


@dataclass(frozen=True)
class KernelSeries:
    """Truncated kernel series with coefficients a_n = 1 / w_n."""

    coefficients: tuple[float, ...]
    truncation: int
    domain_radius: float
    source: RadialWeight

    def __post_init__(self):
        if len(self.coefficients) != self.truncation + 1:
            raise ValueError("coefficient count must be truncation + 1")
        for i, a in enumerate(self.coefficients):
            if not (math.isfinite(a) and a > 0):
                raise ValueError(f"kernel coefficient {i} must be positive and finite")

    def value(self, zeta):
        return np.polynomial.polynomial.polyval(
            np.asarray(zeta, dtype=complex), np.array(self.coefficients)
        )

    def derivative(self, zeta):
        c = np.array(self.coefficients)
        dc = c[1:] * np.arange(1, len(c))
        return np.polynomial.polynomial.polyval(np.asarray(zeta, dtype=complex), dc)

    def trailing_ratio(self, window: int = 8) -> float:
        """Upper bound for coefficient ratios beyond the truncation.

        Ratios a_(n+1)/a_n are monotone decreasing for standard weights,
        their star iterates and gaussian-type weights, so the maximum over
        the last ``window`` observed ratios bounds everything further out.
        For custom weights this is the same trailing-ratio heuristic,
        reported as-is.
        """
        n = len(self.coefficients)
        lo = max(1, n - window)
        return max(
            self.coefficients[i] / self.coefficients[i - 1] for i in range(lo, n)
        )

    def tail_bound(self, radius: float) -> float:
        """Geometric bound on |sum_(n>N) a_n zeta^n| for |zeta| = radius."""
        if radius == 0:
            return 0.0
        rho = self.trailing_ratio()
        q = rho * radius
        if q >= 1.0:
            return math.inf
        n = self.truncation
        return self.coefficients[n] * radius**n * q / (1.0 - q)

    def analyticity_surrogate(self, window: int = 16) -> float:
        """max a_n^(1/n) over the last coefficients; <= 1 + o(1) on the disk."""
        n = len(self.coefficients)
        lo = max(1, n - window)
        return max(self.coefficients[i] ** (1.0 / i) for i in range(lo, n))


def kernel_series(
    w: RadialWeight,
    truncation: int = DEFAULT_TRUNCATION,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
) -> KernelSeries:
    """Kernel coefficients a_n = 1/w_n up to the given truncation.

    Star iterates go through the exact star relation on the base moments
    (inside :func:`bergmanzeros.weights.moment`), never through nested
    quadrature.
    """
    if truncation < 1:
        raise ValueError("truncation must be >= 1")
    moments = _weights.MomentSequence.compute(w, truncation, cfg)
    coeffs = tuple(1.0 / m for m in moments.values)
    for i, a in enumerate(coeffs):
        if not math.isfinite(a) or a == 0.0:
            raise TruncationInsufficientError(
                f"kernel coefficient overflow/underflow at index {i}"
            )
    return KernelSeries(
        coefficients=coeffs,
        truncation=truncation,
        domain_radius=1.0 if w.is_disk else math.inf,
        source=w,
    )


def _check_domain(k: KernelSeries, zeta: complex, guard: float) -> None:
    r = abs(zeta)
    if r >= k.domain_radius:
        raise OutsideDomainError(
            f"|zeta| = {r:.6g} is outside the domain radius {k.domain_radius}"
        )
    if k.domain_radius == 1.0 and r > guard:
        raise OutsideDomainError(
            f"|zeta| = {r:.6g} exceeds the disk evaluation guard {guard}"
        )


def evaluate(
    k: KernelSeries,
    zeta: complex,
    tol: float = 1e-10,
    guard: float = DISK_EVAL_GUARD,
) -> EvalResult:
    """Horner evaluation of the truncated series, certified within ``tol``.

    The truncation tail is bounded by the trailing-ratio geometric bound;
    if floating-point cancellation (large positive coefficients against a
    rotating argument) threatens the remaining error budget, the sum is
    redone in multiprecision.
    """
    zeta = complex(zeta)
    _check_domain(k, zeta, guard)
    tail = k.tail_bound(abs(zeta))
    if not tail <= tol:
        raise TruncationInsufficientError(
            f"truncation insufficient: tail bound {tail:.3g} exceeds tol {tol:.3g} "
            f"at |zeta| = {abs(zeta):.6g}"
        )
    acc = 0.0 + 0.0j
    mag = 0.0
    r = abs(zeta)
    for a in reversed(k.coefficients):
        acc = acc * zeta + a
        mag = mag * r + a
    budget = max(tol - tail, 0.5 * tol)
    roundoff = 4.0 * _EPS * mag * (k.truncation + 1) ** 0.5
    if roundoff > 0.5 * budget:
        # cancellation eats the budget; double-precision coefficients cannot
        # help, so rebuild them from the closed-form moment products at
        # working precision and re-sum
        try:
            acc = _evaluate_mp(k.source, k.truncation, zeta, mag, budget)
        except NoClosedFormError:
            if roundoff > budget:
                raise TruncationInsufficientError(
                    f"cancellation of magnitude {mag:.3g} exceeds coefficient "
                    f"precision; result not certifiable within tol {tol:.3g}"
                ) from None
    return EvalResult(value=complex(acc), tail_bound=tail, terms_used=k.truncation + 1)


def _evaluate_mp(
    w: RadialWeight, n_max: int, zeta: complex, mag: float, budget: float
) -> complex:
    """Multiprecision Horner pass for cancellation-dominated sums."""
    extra = max(0.0, math.log10(mag / max(budget, 1e-300)))
    dps = min(200, 30 + int(extra))
    with mpmath.workdps(dps):
        coeffs = _mp_coefficients(w, n_max)
        z = mpmath.mpc(zeta.real, zeta.imag)
        acc = mpmath.mpc(0)
        for a in reversed(coeffs):
            acc = acc * z + a
        return complex(acc)


def _to_mpf(x):
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / mpmath.mpf(x.denominator)
    return mpmath.mpf(float(x))


def _mp_coefficients(w: RadialWeight, n_max: int) -> list:
    """Kernel coefficients a_n = 1/w_n at the current mpmath precision.

    Built incrementally from the closed-form term ratios; only the
    families with closed-form moments qualify.
    """
    root = w.root_weight()
    depth = w.depth if w.kind == "star_iterate" else 0
    if root.kind == "standard":
        alpha = _to_mpf(root.alpha)
        base = [mpmath.mpf(1)]
        for n in range(1, n_max + depth + 1):
            base.append(base[-1] * (alpha + n + 1) / n)
    elif root.kind == "gaussian":
        g = _to_mpf(root.gamma)
        base = [mpmath.mpf(1)]
        for n in range(1, n_max + depth + 1):
            base.append(base[-1] * g / n)
    else:
        raise NoClosedFormError(
            "multiprecision coefficients need closed-form moments"
        )
    if depth == 0:
        return base[: n_max + 1]
    out = []
    four = mpmath.mpf(4) ** depth
    for n in range(n_max + 1):
        v = base[n + depth] * four
        for j in range(1, depth + 1):
            v *= (n + j) ** 2
        out.append(v)
    return out


def evaluate_adaptive(
    w: RadialWeight,
    zeta: complex,
    tol: float = 1e-10,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
    start_truncation: int = DEFAULT_TRUNCATION,
    truncation_cap: int = TRUNCATION_CAP,
    guard: float = DISK_EVAL_GUARD,
) -> EvalResult:
    """Series evaluation with the truncation raised geometrically.

    Starts at ``start_truncation`` and doubles until the certified tail
    passes ``tol``; exceeding ``truncation_cap`` is a deterministic error.
    """
    n = start_truncation
    while True:
        series = kernel_series(w, n, cfg)
        try:
            return evaluate(series, zeta, tol, guard)
        except TruncationInsufficientError:
            if n >= truncation_cap:
                raise
            n = min(2 * n, truncation_cap)


def has_closed_form(w: RadialWeight) -> bool:
    root = w.root_weight()
    return root.kind in ("standard", "gaussian")


def closed_form(w: RadialWeight, zeta: complex) -> complex:
    """Exact closed-form kernel value at zeta (principal branches).

    Available for standard and gaussian weights and their star iterates.
    """
    zeta = complex(zeta)
    root = w.root_weight()
    depth = w.depth if w.kind == "star_iterate" else 0
    if root.kind == "standard":
        if abs(zeta) >= 1.0:
            raise OutsideDomainError(f"|zeta| = {abs(zeta):.6g} is outside the unit disk")
        if zeta == 1.0 or abs(1.0 - zeta) < 1e-15:
            raise BranchPointError("closed form has a branch point at zeta = 1")
        alpha = float(root.alpha)
        if depth == 0:
            return cmath.exp(-(2.0 + alpha) * cmath.log(1.0 - zeta))
        fixed = starcalc.StarKernelClosedForm.for_depth(depth).at(alpha)
        return complex(fixed.value(zeta))
    if root.kind == "gaussian":
        from . import plane  # lazy: plane depends on zeros which depends on us

        if depth == 0:
            return plane.sb_kernel(float(root.gamma), zeta)
        return complex(plane.sb_star_iterate(root.gamma, depth).value(zeta))
    raise NoClosedFormError(f"no closed form for {w.label()}")


def _diagonal(w: RadialWeight, z: complex, cfg: QuadratureConfig) -> float:
    """B(|z|^2): positive since the coefficients are positive."""
    zeta = abs(z) ** 2
    if has_closed_form(w):
        value = closed_form(w, zeta).real
    else:
        value = evaluate_adaptive(w, zeta, tol=1e-12, cfg=cfg).value.real
    if not (math.isfinite(value) and value > 0):
        raise DiagonalDivergenceError(f"diagonal divergence at |z|^2 = {zeta:.6g}")
    return value


def point_evaluation_norm(
    w: RadialWeight,
    z: complex,
    p: float,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
) -> float:
    """Operator norm of f -> f(z) on the p-norm space of ``w``.

    Equals B(|z|^2)^(1/p) through the one-variable reduction.  For the
    gaussian family the p-norm carries the rate in the weight (the p-norm
    of rate gamma comes from the Hilbert space of rate gamma*p/2), which
    collapses the bound to exp((gamma/2)|z|^2) for every p.  The upper
    bound is unknown below p = 1, so such p are rejected.
    """
    if not p >= 1:
        raise ValueError("p must satisfy 1 <= p < inf; below 1 only the lower bound is known")
    if not math.isfinite(p):
        raise ValueError("p must be finite")
    if w.is_disk and abs(z) >= 1:
        raise OutsideDomainError("z must lie in the open unit disk")
    if w.kind == "gaussian":
        return math.exp(0.5 * float(w.gamma) * abs(z) ** 2)
    return _diagonal(w, z, cfg) ** (1.0 / p)


def two_variable_value(
    w: RadialWeight,
    z: complex,
    xi: complex,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
    tol: float = 1e-10,
) -> complex:
    """Two-variable kernel B_z(xi) = B(conj(z) xi)."""
    zeta = complex(z).conjugate() * complex(xi)
    if has_closed_form(w):
        return closed_form(w, zeta)
    return evaluate_adaptive(w, zeta, tol=tol, cfg=cfg).value


def extremal_values(
    w: RadialWeight,
    z: complex,
    p: float,
    xi: complex,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
    check_zero_free: bool = False,
) -> tuple[complex, complex]:
    """The dual extremal pair (F, G) for point evaluation at z.

    With B = B_z and q the conjugate exponent of p:

        F(xi) = B(xi) conj(B(xi))^(2/q - 1) B(z)^(1 - 2/q)
        G(xi) = B(xi)^(2/p)                      (principal branch)

    G is analytic only when B_z is zero-free; pass ``check_zero_free`` to
    verify that hypothesis first (it can genuinely fail for star-iterate
    weights).
    """
    if not p >= 1:
        raise ValueError("p must satisfy 1 <= p < inf")
    if check_zero_free:
        from . import zeros  # lazy import to avoid a module cycle

        report = zeros.point_kernel_zeros(w, z, cfg)
        if report.total_count() > 0:
            raise KernelHasZeroError(
                f"kernel has zero: B_z for {w.label()} at |z| = {abs(z):.6g} "
                f"vanishes inside the disk"
            )
    b_xi = two_variable_value(w, z, xi, cfg)
    b_zz = _diagonal(w, z, cfg)
    two_over_q = 2.0 * (1.0 - 1.0 / p)  # 2/q, with q = p/(p-1); p=1 -> 0
    f_val = b_xi * _cpow(b_xi.conjugate(), two_over_q - 1.0) * b_zz ** (1.0 - two_over_q)
    g_val = _cpow(b_xi, 2.0 / p)
    return f_val, g_val


def _cpow(value: complex, exponent: float) -> complex:
    if value == 0:
        return 0.0 + 0.0j
    return cmath.exp(exponent * cmath.log(value))
