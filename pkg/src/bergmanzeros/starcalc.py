"""Exact polynomial calculus for iterated star kernels on the disk.

The kernel of the n-th star iterate of a standard weight has the closed
form

    B_n(zeta) = q_n(zeta) / (1 - zeta)^(2 + alpha + 2n),

where q_n is a degree-n polynomial in zeta whose coefficients are
polynomials in alpha with integer coefficients.  Starting from

    q_1(zeta) = 4(2 + alpha) + 4(2 + alpha)^2 zeta,

each further star transform acts on the numerator as the five-term map

    q_(m+1) = 4 q'(1-z)^2 + 4(2+a+2m) q (1-z) + 4 z q''(1-z)^2
              + 8(2+a+2m) z q'(1-z) + 4(2+a+2m)(3+a+2m) z q .

Everything here is carried out over arbitrary-precision rationals, so the
coefficient degree facts (leading zeta-coefficient of alpha-degree exactly
2n, all others at most 2n-1) are decidable statements, and the resulting
dominance margin

    |c_(n,n)| - sum_(k<n) |c_(n,k)|

certifies, when positive, that all n numerator roots lie in the open unit
disk.
"""

from __future__ import annotations

import functools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import weights as _weights
from .errors import DepthCapError, ThresholdSearchExhaustedError

__all__ = [
    "RationalPoly",
    "AlphaPolynomial",
    "StarKernelClosedForm",
    "FixedStarKernel",
    "first_numerator",
    "star_step",
    "star_numerator",
    "star_coefficient_map",
    "series_from_closed_form",
    "exact_taylor_coefficients",
    "rouche_margin",
    "rouche_threshold",
    "DEFAULT_DEPTH_CAP",
]

DEFAULT_DEPTH_CAP = 12


class RationalPoly:
    """Polynomial in alpha with exact Fraction coefficients.

    Coefficients are stored ascending with no trailing zeros, so
    ``degree`` is canonical (-1 for the zero polynomial).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Fraction | int]):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @staticmethod
    def const(c: Fraction | int) -> "RationalPoly":
        return RationalPoly([Fraction(c)])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "RationalPoly") -> "RationalPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return RationalPoly(
            [
                (self.coeffs[i] if i < len(self.coeffs) else 0)
                + (other.coeffs[i] if i < len(other.coeffs) else 0)
                for i in range(n)
            ]
        )

    def __mul__(self, other: "RationalPoly | Fraction | int") -> "RationalPoly":
        if isinstance(other, (int, Fraction)):
            return RationalPoly([c * other for c in self.coeffs])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1 or 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RationalPoly(out)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"RationalPoly({list(self.coeffs)!r})"

    def evaluate(self, alpha):
        """Horner evaluation; exact for Fraction input, float otherwise."""
        acc = Fraction(0) if isinstance(alpha, (int, Fraction)) else 0.0
        for c in reversed(self.coeffs):
            acc = acc * alpha + (c if isinstance(alpha, (int, Fraction)) else float(c))
        return acc

    def to_strings(self) -> list[str]:
        return [str(c) for c in self.coeffs]


@dataclass(frozen=True)
class AlphaPolynomial:
    """Polynomial in zeta whose coefficients are :class:`RationalPoly` in alpha.

    ``level`` is the star-iterate depth; the zeta-degree equals the level
    and the leading zeta-coefficient never vanishes identically.
    """

    zeta_coefficients: tuple[RationalPoly, ...]
    level: int

    def __post_init__(self):
        if len(self.zeta_coefficients) != self.level + 1:
            raise ValueError("zeta-degree must equal the level")
        if self.zeta_coefficients and self.zeta_coefficients[-1].is_zero:
            raise ValueError("leading zeta-coefficient vanishes identically")

    def coefficient(self, k: int) -> RationalPoly:
        return self.zeta_coefficients[k]

    def coefficients_at(self, alpha) -> list:
        return [c.evaluate(alpha) for c in self.zeta_coefficients]

    def evaluate(self, alpha, zeta):
        acc = 0.0 * zeta if not isinstance(zeta, (int, Fraction)) else Fraction(0)
        for c in reversed(self.coefficients_at(alpha)):
            acc = acc * zeta + c
        return acc

    def to_json(self) -> list[list[str]]:
        """Lossless form: per zeta-power, the alpha-coefficients as "p/q"."""
        return [c.to_strings() for c in self.zeta_coefficients]

    @staticmethod
    def from_json(data: Sequence[Sequence[str]]) -> "AlphaPolynomial":
        coeffs = tuple(RationalPoly([Fraction(s) for s in row]) for row in data)
        return AlphaPolynomial(coeffs, level=len(coeffs) - 1)

    def dumps(self) -> str:
        return json.dumps(self.to_json())


# -- numerator recurrence ---------------------------------------------------


def _zeta_derivative(p: list[RationalPoly]) -> list[RationalPoly]:
    return [p[k] * k for k in range(1, len(p))] or [RationalPoly([])]


def _mul_one_minus_zeta(p: list[RationalPoly]) -> list[RationalPoly]:
    out = p + [RationalPoly([])]
    for k in range(len(out) - 1, 0, -1):
        out[k] = out[k] + (p[k - 1] * Fraction(-1))
    return out


def _shift_zeta(p: list[RationalPoly]) -> list[RationalPoly]:
    return [RationalPoly([])] + p


def _scale(p: list[RationalPoly], s: RationalPoly | Fraction | int) -> list[RationalPoly]:
    return [c * s for c in p]


def _add(*ps: list[RationalPoly]) -> list[RationalPoly]:
    n = max(len(p) for p in ps)
    out = []
    for k in range(n):
        acc = RationalPoly([])
        for p in ps:
            if k < len(p):
                acc = acc + p[k]
        out.append(acc)
    return out


def first_numerator() -> AlphaPolynomial:
    """Level-1 numerator: 4(2+alpha) + 4(2+alpha)^2 zeta."""
    return AlphaPolynomial(
        (RationalPoly([8, 4]), RationalPoly([16, 16, 4])),
        level=1,
    )


def star_step(p: AlphaPolynomial) -> AlphaPolynomial:
    """One star transform applied to a closed-form numerator.

    Exact in rationals; the level (= zeta-degree) increases by one.
    """
    m = p.level
    if m < 1:
        raise ValueError("star_step needs level >= 1")
    coeffs = list(p.zeta_coefficients)
    dp = _zeta_derivative(coeffs)
    ddp = _zeta_derivative(dp)
    s1 = RationalPoly([2 + 2 * m, 1])  # 2 + alpha + 2m
    s2 = RationalPoly([3 + 2 * m, 1])  # 3 + alpha + 2m

    t1 = _scale(_mul_one_minus_zeta(_mul_one_minus_zeta(dp)), 4)
    t2 = _scale(_mul_one_minus_zeta(_scale(coeffs, s1)), 4)
    t3 = _scale(_shift_zeta(_mul_one_minus_zeta(_mul_one_minus_zeta(ddp))), 4)
    t4 = _scale(_shift_zeta(_mul_one_minus_zeta(_scale(dp, s1))), 8)
    t5 = _scale(_shift_zeta(_scale(coeffs, s1 * s2)), 4)

    total = _add(t1, t2, t3, t4, t5)
    while len(total) > m + 2 and total[-1].is_zero:
        total.pop()
    return AlphaPolynomial(tuple(total), level=m + 1)


@functools.lru_cache(maxsize=None)
def _star_numerator_cached(n: int) -> AlphaPolynomial:
    if n == 1:
        return first_numerator()
    return star_step(_star_numerator_cached(n - 1))


def star_numerator(n: int, depth_cap: int = DEFAULT_DEPTH_CAP) -> AlphaPolynomial:
    """Numerator polynomial of the n-th star iterate kernel, cached.

    Coefficient bit-sizes grow with n, so a configurable cap keeps the
    computation at desk scale.
    """
    if n < 1:
        raise ValueError("level must be >= 1")
    if n > depth_cap:
        raise DepthCapError(f"depth cap: level {n} exceeds cap {depth_cap}")
    return _star_numerator_cached(n)


# -- closed forms and their Taylor expansions -------------------------------


@dataclass(frozen=True)
class StarKernelClosedForm:
    """B(zeta) = numerator(alpha, zeta) / (1 - zeta)^(2 + alpha + 2 level)."""

    numerator: AlphaPolynomial

    @property
    def level(self) -> int:
        return self.numerator.level

    def pole_exponent(self, alpha):
        return 2 + alpha + 2 * self.level

    @staticmethod
    def for_depth(n: int, depth_cap: int = DEFAULT_DEPTH_CAP) -> "StarKernelClosedForm":
        if n == 0:
            return StarKernelClosedForm(AlphaPolynomial((RationalPoly([1]),), level=0))
        return StarKernelClosedForm(star_numerator(n, depth_cap))

    def at(self, alpha: float) -> "FixedStarKernel":
        return FixedStarKernel(
            numerator_coefficients=tuple(
                complex(c) for c in self.numerator.coefficients_at(float(alpha))
            ),
            exponent=float(self.pole_exponent(float(alpha))),
            alpha=float(alpha),
            level=self.level,
        )


@dataclass(frozen=True)
class FixedStarKernel:
    """Closed-form star kernel at a fixed alpha, evaluable on the disk."""

    numerator_coefficients: tuple[complex, ...]
    exponent: float
    alpha: float
    level: int

    domain_radius: float = 1.0

    def value(self, zeta):
        num = np.polynomial.polynomial.polyval(zeta, np.array(self.numerator_coefficients))
        return num * np.exp(-self.exponent * np.log(1.0 - np.asarray(zeta, dtype=complex)))

    def derivative(self, zeta):
        z = np.asarray(zeta, dtype=complex)
        c = np.array(self.numerator_coefficients)
        dc = c[1:] * np.arange(1, len(c))
        num = np.polynomial.polynomial.polyval(z, c)
        dnum = np.polynomial.polynomial.polyval(z, dc) if len(dc) else 0.0 * z
        pole = np.exp(-self.exponent * np.log(1.0 - z))
        return (dnum + self.exponent * num / (1.0 - z)) * pole

    def log_derivative(self, zeta):
        """f'/f, free of branch issues since the pole factor cancels."""
        z = np.asarray(zeta, dtype=complex)
        c = np.array(self.numerator_coefficients)
        dc = c[1:] * np.arange(1, len(c))
        num = np.polynomial.polynomial.polyval(z, c)
        dnum = np.polynomial.polynomial.polyval(z, dc) if len(dc) else 0.0 * z
        return dnum / num + self.exponent / (1.0 - z)


def star_coefficient_map(coefficients: Sequence, times: int = 1) -> list:
    """Kernel-coefficient action of the star transform, iterated.

    One application sends a_k -> 4 (k+1)^2 a_(k+1); works over floats,
    Fractions or complex entries alike.  The output is ``times`` entries
    shorter than the input.
    """
    out = list(coefficients)
    for _ in range(times):
        if len(out) < 2:
            raise ValueError("coefficient list too short for another star step")
        out = [4 * (k + 1) ** 2 * out[k + 1] for k in range(len(out) - 1)]
    return out


def _binomial_series(exponent, n_terms: int, exact: bool) -> list:
    """Taylor coefficients of (1 - zeta)^(-exponent)."""
    if exact:
        out = [Fraction(1)]
        for k in range(1, n_terms):
            out.append(out[-1] * (exponent + k - 1) / k)
    else:
        out = [1.0]
        for k in range(1, n_terms):
            out.append(out[-1] * (float(exponent) + k - 1) / k)
    return out


def exact_taylor_coefficients(
    form: StarKernelClosedForm, alpha: Fraction | int, max_index: int
) -> list[Fraction]:
    """Exact Taylor coefficients of the closed form, for rational alpha."""
    a = Fraction(alpha)
    num = form.numerator.coefficients_at(a)
    binom = _binomial_series(form.pole_exponent(a), max_index + 1, exact=True)
    return [
        sum(
            (num[j] * binom[k - j] for j in range(min(len(num) - 1, k) + 1)),
            Fraction(0),
        )
        for k in range(max_index + 1)
    ]


def series_from_closed_form(form: StarKernelClosedForm, alpha: float, max_index: int):
    """Expand the closed form into a truncated kernel series.

    Binomial-series convolution of the numerator against the pole factor;
    the constant term equals the numerator at zeta = 0.
    """
    from . import kernels  # local import; kernels depends on this module

    if not float(alpha) > -1:
        raise ValueError("alpha must exceed -1")
    if isinstance(alpha, (int, Fraction)):
        coeffs = [float(c) for c in exact_taylor_coefficients(form, alpha, max_index)]
    else:
        num = [float(c) for c in form.numerator.coefficients_at(float(alpha))]
        binom = _binomial_series(form.pole_exponent(float(alpha)), max_index + 1, exact=False)
        coeffs = [
            math.fsum(num[j] * binom[k - j] for j in range(min(len(num) - 1, k) + 1))
            for k in range(max_index + 1)
        ]
    base = _weights.standard(alpha)
    source = base if form.level == 0 else _weights.star(base, form.level)
    return kernels.KernelSeries(
        coefficients=tuple(coeffs),
        truncation=max_index,
        domain_radius=1.0,
        source=source,
    )


# -- dominance margins ------------------------------------------------------


def rouche_margin(n: int, alpha, depth_cap: int = DEFAULT_DEPTH_CAP) -> float:
    """|c_(n,n)| - sum_(k<n) |c_(n,k)| at the given alpha.

    Coefficients are evaluated exactly (alpha is lifted to a Fraction)
    and the margin rounded to float only at the end.  A positive value
    certifies exactly n numerator roots in the open unit zeta-disk.
    """
    if n < 1:
        raise ValueError("level must be >= 1")
    if not float(alpha) > -1:
        raise ValueError("alpha must exceed -1")
    a = Fraction(alpha)
    vals = star_numerator(n, depth_cap).coefficients_at(a)
    return float(abs(vals[-1]) - sum(abs(v) for v in vals[:-1]))


def _margin_float(n: int, alpha: float, depth_cap: int) -> float:
    vals = star_numerator(n, depth_cap).coefficients_at(float(alpha))
    return abs(vals[-1]) - sum(abs(v) for v in vals[:-1])


def rouche_threshold(
    n: int,
    grid: float = 1e-6,
    alpha_limit: float = 1e6,
    depth_cap: int = DEFAULT_DEPTH_CAP,
) -> float:
    """Smallest alpha (on a ``grid``-resolution bisection) with positive margin.

    The margin must stay positive for the next 10 grid points as well;
    ties break toward the smaller alpha.  The leading coefficient has
    alpha-degree 2n against at most 2n-1 for the rest, so a finite
    threshold always exists; failing to find one below ``alpha_limit``
    raises.
    """
    if not 1 <= n <= depth_cap:
        raise ValueError(f"level must be in 1..{depth_cap}")

    def ok(a: float) -> bool:
        return _margin_float(n, a, depth_cap) > 0

    def stable(a: float) -> bool:
        return ok(a) and all(ok(a + k * grid) for k in range(1, 11))

    lo = -1.0 + grid
    if stable(lo):
        return lo
    # coarse doubling to bracket the sign change
    hi = 1.0
    while not ok(hi):
        lo = hi
        hi *= 2.0
        if hi > alpha_limit:
            raise ThresholdSearchExhaustedError(
                f"threshold search exhausted below alpha={alpha_limit:g} for level {n}"
            )
    while hi - lo > grid:
        mid = 0.5 * (lo + hi)
        if ok(mid):
            hi = mid
        else:
            lo = mid
    candidate = hi
    while not stable(candidate):
        candidate += grid
        if candidate > alpha_limit:
            raise ThresholdSearchExhaustedError(
                f"threshold search exhausted below alpha={alpha_limit:g} for level {n}"
            )
    return candidate
