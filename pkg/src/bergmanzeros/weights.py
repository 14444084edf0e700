"""Radial weights on the unit disk and the complex plane.

A radial weight is an integrable density depending only on ``|z|``.
Everything downstream is driven by its moment sequence

    w_n = 2 * int_0^R  r^(2n+1) w(r) dr,      R = 1 (disk) or inf (plane),

whose reciprocals are the Taylor coefficients of the reproducing kernel.

Built-in families (both normalized to total mass 1):

* ``standard(alpha)``: ``(alpha+1) (1 - r^2)^alpha`` on the disk,
  ``alpha > -1``, with the exact rational moments

      w_n = n! / ((alpha+2)(alpha+3)...(alpha+n+1)).

* ``gaussian(gamma)``: ``gamma exp(-gamma r^2)`` on the plane,
  ``gamma > 0``, with ``w_n = n! / gamma^n``.

* ``star(w)``: the associated weight

      w*(r) = int_r^R  w(s) log(s/r) s ds,

  defined away from the origin (it picks up a logarithmic singularity
  there).  Its moments obey the exact relation

      (w*)_n = w_(n+1) / (4 (n+1)^2),

  which is how iterated stars are always computed; pointwise density
  queries fall back to adaptive quadrature of the defining integral.

* ``custom(density)``: any radius -> density function; moments by
  adaptive quadrature.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable

from scipy import integrate

from .errors import (
    InsufficientMomentsError,
    MomentUnderflowError,
    NoClosedFormError,
    NonIntegrableWeightError,
    SingularAtOriginError,
)

__all__ = [
    "QuadratureConfig",
    "RadialWeight",
    "MomentSequence",
    "standard",
    "gaussian",
    "custom",
    "star",
    "moment",
    "moment_exact",
    "moment_quadrature",
    "star_moments",
    "moment_ratio_bounds",
    "DEFAULT_QUADRATURE",
]


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and budgets for every numerical integration.

    ``upper_cutoff`` overrides the automatic truncation radius used for
    plane-domain integrals; leave ``None`` to let the Gaussian tail bound
    pick it (see :func:`plane_cutoff`).
    """

    abs_tol: float = 1e-13
    rel_tol: float = 1e-11
    max_subdivisions: int = 200
    upper_cutoff: float | None = None

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise ValueError("tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")
        if self.upper_cutoff is not None and self.upper_cutoff <= 0:
            raise ValueError("upper_cutoff must be positive")


DEFAULT_QUADRATURE = QuadratureConfig()

_TINY = 5e-324  # smallest subnormal double; used for underflow detection


@dataclass(frozen=True)
class RadialWeight:
    """A radial weight described structurally.

    Exactly one parameter set is populated, according to ``kind``:
    ``alpha`` for ``standard``, ``gamma`` for ``gaussian``, ``base``/
    ``depth`` for ``star_iterate`` and ``density_fn`` for ``custom``.
    Instances are immutable; all operations on them are pure functions.
    """

    domain: str  # "disk" | "plane"
    kind: str  # "standard" | "gaussian" | "star_iterate" | "custom"
    alpha: Fraction | float | None = None
    gamma: Fraction | float | None = None
    base: "RadialWeight | None" = None
    depth: int = 0
    density_fn: Callable[[float], float] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.domain not in ("disk", "plane"):
            raise ValueError(f"unknown domain {self.domain!r}")
        if self.kind == "standard":
            if self.domain != "disk":
                raise ValueError("standard weights live on the disk")
            if self.alpha is None or not self.alpha > -1:
                raise ValueError("standard weight requires alpha > -1")
        elif self.kind == "gaussian":
            if self.domain != "plane":
                raise ValueError("gaussian weights live on the plane")
            if self.gamma is None or not self.gamma > 0:
                raise ValueError("gaussian weight requires gamma > 0")
        elif self.kind == "star_iterate":
            if self.base is None or self.depth < 1:
                raise ValueError("star_iterate requires a base weight and depth >= 1")
            if self.base.kind == "star_iterate":
                raise ValueError("star_iterate base must itself be un-starred")
            if self.base.domain != self.domain:
                raise ValueError("star iterate must share its base's domain")
        elif self.kind == "custom":
            if self.density_fn is None:
                raise ValueError("custom weight requires a density function")
        else:
            raise ValueError(f"unknown weight kind {self.kind!r}")

    # -- constructors -------------------------------------------------

    @staticmethod
    def standard(alpha: Fraction | float) -> "RadialWeight":
        return RadialWeight(domain="disk", kind="standard", alpha=alpha)

    @staticmethod
    def gaussian(gamma: Fraction | float) -> "RadialWeight":
        return RadialWeight(domain="plane", kind="gaussian", gamma=gamma)

    @staticmethod
    def custom(density: Callable[[float], float], domain: str = "disk") -> "RadialWeight":
        return RadialWeight(domain=domain, kind="custom", density_fn=density)

    @staticmethod
    def star_of(w: "RadialWeight", depth: int = 1) -> "RadialWeight":
        """Associated weight, iterated ``depth`` times.

        Nested stars normalize: star(star(w, a), b) == star(w, a + b).
        """
        if depth < 1:
            raise ValueError("star depth must be >= 1")
        if w.kind == "star_iterate":
            return RadialWeight(
                domain=w.domain, kind="star_iterate", base=w.base, depth=w.depth + depth
            )
        return RadialWeight(domain=w.domain, kind="star_iterate", base=w, depth=depth)

    # -- structure ----------------------------------------------------

    @property
    def is_disk(self) -> bool:
        return self.domain == "disk"

    def root_weight(self) -> "RadialWeight":
        """The un-starred weight at the bottom of a star chain."""
        return self.base if self.kind == "star_iterate" else self

    def gaussian_rate(self) -> float | None:
        """Gaussian decay rate of the underlying plane weight, if any."""
        root = self.root_weight()
        return float(root.gamma) if root.kind == "gaussian" else None

    def label(self) -> str:
        """Short human-readable tag used in reports."""
        if self.kind == "standard":
            return f"std:{self.alpha}"
        if self.kind == "gaussian":
            return f"gauss:{self.gamma}"
        if self.kind == "star_iterate":
            inner = self.base.label()
            return f"star({inner})" if self.depth == 1 else f"star^{self.depth}({inner})"
        return f"custom[{self.domain}]"

    # -- pointwise density --------------------------------------------

    def density(self, r: float, cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
        """Density at radius ``r``.

        Closed form for the built-in families; adaptive quadrature of the
        defining integral for star iterates.  Star iterates are singular
        at the origin, so ``r = 0`` is rejected for them.
        """
        if r < 0:
            raise ValueError("radius must be nonnegative")
        if self.kind == "standard":
            if r >= 1:
                if self.alpha < 0 and r == 1:
                    return math.inf
                return 0.0
            a = float(self.alpha)
            return (a + 1) * (1 - r * r) ** a
        if self.kind == "gaussian":
            g = float(self.gamma)
            return g * math.exp(-g * r * r)
        if self.kind == "custom":
            return float(self.density_fn(r))
        # star iterate: peel one star off and integrate
        if r == 0:
            raise SingularAtOriginError(
                "associated weights are singular at the origin; density at r=0 undefined"
            )
        inner = (
            self.base
            if self.depth == 1
            else RadialWeight.star_of(self.base, self.depth - 1)
        )
        upper = 1.0 if self.is_disk else plane_cutoff(self, 0, cfg)
        if r >= upper:
            return 0.0

        def integrand(s: float) -> float:
            return inner.density(s, cfg) * math.log(s / r) * s

        return _adaptive_quad(integrand, r, upper, cfg)


# Module-level aliases matching the family names used in prose.
standard = RadialWeight.standard
gaussian = RadialWeight.gaussian
custom = RadialWeight.custom
star = RadialWeight.star_of


def plane_cutoff(w: RadialWeight, n: int, cfg: QuadratureConfig) -> float:
    """Truncation radius for plane-domain integrals against ``r^(2n+1)``.

    The base choice sqrt(-log(abs_tol)/gamma) + 5 suppresses the Gaussian
    mass tail; for higher moments the integrand peaks near
    sqrt((n+1)/gamma), so the cutoff also scales with ``n`` to keep the
    *relative* truncated tail below tolerance.
    """
    if cfg.upper_cutoff is not None:
        return cfg.upper_cutoff
    rate = w.gaussian_rate()
    if rate is None:
        raise ValueError(
            "custom plane weights need an explicit QuadratureConfig.upper_cutoff"
        )
    base = math.sqrt(-math.log(cfg.abs_tol) / rate) + 5.0
    peak_aware = math.sqrt(((n + 1) + 12.0 * math.sqrt(n + 1) + 40.0) / rate)
    return max(base, peak_aware)


def _adaptive_quad(
    f: Callable[[float], float],
    a: float,
    b: float,
    cfg: QuadratureConfig,
) -> float:
    """Adaptive Gauss-Kronrod integration with divergence detection."""
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        value, err = integrate.quad(
            f, a, b, epsabs=cfg.abs_tol, epsrel=cfg.rel_tol, limit=cfg.max_subdivisions
        )
    if not math.isfinite(value):
        raise NonIntegrableWeightError("non-integrable weight: integral estimate is not finite")
    if caught and err > 1e3 * max(cfg.abs_tol, cfg.rel_tol * abs(value)):
        raise NonIntegrableWeightError(
            f"non-integrable weight: quadrature did not converge within "
            f"{cfg.max_subdivisions} subdivisions (estimate {value:.6g}, error {err:.2g})"
        )
    return value


# ---------------------------------------------------------------------------
# Moments
# ---------------------------------------------------------------------------


def moment(w: RadialWeight, n: int, cfg: QuadratureConfig = DEFAULT_QUADRATURE) -> float:
    """The n-th moment  w_n = 2 int_0^R r^(2n+1) w(r) dr.

    Closed forms are used whenever the weight kind permits; star iterates
    always go through the exact star relation on the base moments, so no
    quadrature error compounds with depth.  Custom weights integrate
    adaptively.
    """
    if n < 0:
        raise ValueError("moment index must be >= 0")
    if w.kind == "standard":
        value = 1.0
        a = float(w.alpha)
        for k in range(1, n + 1):
            value *= k / (a + k + 1)
        return _checked_moment(value, w, n)
    if w.kind == "gaussian":
        g = float(w.gamma)
        value = 1.0
        for k in range(1, n + 1):
            value *= k / g
        return _checked_moment(value, w, n)
    if w.kind == "star_iterate":
        base_val = moment(w.base, n + w.depth, cfg)
        value = base_val
        for j in range(1, w.depth + 1):
            value /= 4.0 * (n + j) ** 2
        return _checked_moment(value, w, n)
    return _checked_moment(moment_quadrature(w, n, cfg), w, n)


def _checked_moment(value: float, w: RadialWeight, n: int) -> float:
    if value == 0.0 or not math.isfinite(value):
        exponent = _moment_log10(w, n)
        if value == 0.0 or (exponent is not None and exponent < 0):
            raise MomentUnderflowError(
                f"moment underflow at n={n} for {w.label()} "
                f"(base-10 exponent {exponent})",
                exponent10=exponent,
            )
        raise NonIntegrableWeightError(
            f"non-integrable weight: moment n={n} of {w.label()} overflows "
            f"(base-10 exponent {exponent})"
        )
    if value < 0:
        raise NonIntegrableWeightError(
            f"moment n={n} of {w.label()} is negative; density must be nonnegative"
        )
    return value


def _moment_log10(w: RadialWeight, n: int) -> float | None:
    """Base-10 exponent of w_n via log-gamma, for out-of-range reporting."""
    try:
        if w.kind == "standard":
            a = float(w.alpha)
            ln = math.lgamma(n + 1) + math.lgamma(a + 2) - math.lgamma(n + a + 2)
        elif w.kind == "gaussian":
            ln = math.lgamma(n + 1) - n * math.log(float(w.gamma))
        elif w.kind == "star_iterate":
            inner = _moment_log10(w.base, n + w.depth)
            if inner is None:
                return None
            ln = inner * math.log(10)
            for j in range(1, w.depth + 1):
                ln -= math.log(4.0) + 2 * math.log(n + j)
        else:
            return None
        return ln / math.log(10)
    except (ValueError, OverflowError):
        return None


def moment_exact(w: RadialWeight, n: int) -> Fraction:
    """Exact rational moment, available when all parameters are rational.

    standard:  n! / prod_{j=0}^{n-1} (alpha + 2 + j)
    gaussian:  n! / gamma^n
    star iterates divide the base moment by 4 (n+j)^2, j = 1..depth.
    """
    if n < 0:
        raise ValueError("moment index must be >= 0")
    if w.kind == "standard":
        if not isinstance(w.alpha, (int, Fraction)):
            raise NoClosedFormError("exact moments need a rational alpha")
        a = Fraction(w.alpha)
        value = Fraction(math.factorial(n))
        for j in range(n):
            value /= a + 2 + j
        return value
    if w.kind == "gaussian":
        if not isinstance(w.gamma, (int, Fraction)):
            raise NoClosedFormError("exact moments need a rational gamma")
        return Fraction(math.factorial(n)) / Fraction(w.gamma) ** n
    if w.kind == "star_iterate":
        value = moment_exact(w.base, n + w.depth)
        for j in range(1, w.depth + 1):
            value /= 4 * (n + j) ** 2
        return value
    raise NoClosedFormError("custom weights have no exact moments")


def moment_quadrature(
    w: RadialWeight, n: int, cfg: QuadratureConfig = DEFAULT_QUADRATURE
) -> float:
    """Moment by adaptive quadrature, regardless of available closed forms.

    This is the independent cross-check route; star-iterate densities are
    evaluated by (nested) quadrature of the defining integral.
    """
    if n < 0:
        raise ValueError("moment index must be >= 0")
    upper = 1.0 if w.is_disk else plane_cutoff(w, n, cfg)

    def integrand(r: float) -> float:
        if r == 0.0:
            return 0.0
        return 2.0 * r ** (2 * n + 1) * w.density(r, cfg)

    value = _adaptive_quad(integrand, 0.0, upper, cfg)
    if value > 0 and cfg.abs_tol > cfg.rel_tol * value:
        # high moments are tiny; drop the absolute floor so the requested
        # relative accuracy governs
        refined = replace(cfg, abs_tol=max(cfg.rel_tol * value * 0.1, 1e-300))
        value = _adaptive_quad(integrand, 0.0, upper, refined)
    return value


# ---------------------------------------------------------------------------
# Moment sequences and the star relation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MomentSequence:
    """Moments w_0 .. w_N of a weight, with per-entry provenance.

    Entries are strictly positive and finite; for disk weights they are
    non-increasing in n (r^(2n+1) <= r^(2m+1) on [0,1] for n >= m).
    """

    weight: RadialWeight
    values: tuple[float, ...]
    provenance: tuple[str, ...]

    def __post_init__(self):
        if len(self.values) != len(self.provenance):
            raise ValueError("values and provenance lengths differ")
        for i, v in enumerate(self.values):
            if not (math.isfinite(v) and v > 0):
                raise ValueError(f"moment {i} is not strictly positive and finite: {v}")
        if self.weight.is_disk:
            for i in range(1, len(self.values)):
                if self.values[i] > self.values[i - 1] * (1 + 1e-9):
                    raise ValueError(
                        f"disk moments must be non-increasing; violated at n={i}"
                    )

    @property
    def max_index(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, n: int) -> float:
        return self.values[n]

    @staticmethod
    def compute(
        w: RadialWeight, max_index: int, cfg: QuadratureConfig = DEFAULT_QUADRATURE
    ) -> "MomentSequence":
        if max_index < 0:
            raise ValueError("max_index must be >= 0")
        tag = {
            "standard": "closed_form",
            "gaussian": "closed_form",
            "star_iterate": "star_relation",
            "custom": "quadrature",
        }[w.kind]
        vals = tuple(moment(w, n, cfg) for n in range(max_index + 1))
        return MomentSequence(weight=w, values=vals, provenance=(tag,) * (max_index + 1))


def star_moments(base: MomentSequence) -> MomentSequence:
    """Moments of the associated weight, one entry shorter.

    (w*)_n = w_(n+1) / (4 (n+1)^2); this is the relation read off the
    kernel identity  B for w* = 4 sum_{n>=1} n^2/w_n zeta^(n-1).
    """
    if base.max_index < 1:
        raise InsufficientMomentsError(
            "insufficient moments: the star relation needs max_index >= 1"
        )
    vals = tuple(
        base.values[n + 1] / (4.0 * (n + 1) ** 2) for n in range(base.max_index)
    )
    return MomentSequence(
        weight=RadialWeight.star_of(base.weight),
        values=vals,
        provenance=("star_relation",) * len(vals),
    )


def moment_ratio_bounds(
    w1: RadialWeight,
    w2: RadialWeight,
    max_index: int,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
) -> tuple[float, float]:
    """Extremes of the moment ratio (w1)_k / (w2)_k over k <= max_index.

    A finite positive spread is the computable surrogate for the
    equal-space equivalence of two weights: equivalence itself has no
    finite certificate, so callers should treat this as a proxy, not a
    proof.
    """
    ratios = [moment(w1, k, cfg) / moment(w2, k, cfg) for k in range(max_index + 1)]
    return min(ratios), max(ratios)
