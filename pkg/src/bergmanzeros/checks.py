"""Numerical verification harness for the kernel identities.

Every identity is checked along two independent routes:

* the orthogonality reduction - monomials are orthogonal for radial
  weights, so  <f, g> = sum_k f_k conj(g_k) w_k  - exact in rationals
  whenever the data is rational, and
* direct two-dimensional quadrature (uniform angular grid, which is
  exact for trigonometric polynomials, times adaptive radial
  integration against the density).

The identities covered: the reproducing property  f(z) = <f | B_z>, the
Littlewood-Paley / Green identity

    <f, g>_w = 4 <f', g'>_(w*) + w(D) f(0) conj(g(0)),

sharpness of the point-evaluation norm (the squared-kernel integral
returns the diagonal value), and the locally-integrable-weight ratio

    n(f, R) = int_(|z|<R) |f|^p eta dA / int_(|z|<R) eta dA,

which tends to the boundary mean of |f|^p when eta is not integrable.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import integrate

from . import kernels
from . import weights as _weights
from .errors import KernelHasZeroError, QuadratureMismatchError
from .weights import DEFAULT_QUADRATURE, MomentSequence, QuadratureConfig, RadialWeight

__all__ = [
    "PolynomialFunction",
    "CheckOutcome",
    "QComplex",
    "inner_product",
    "inner_product_quadrature",
    "reproducing_check",
    "littlewood_paley_check",
    "littlewood_paley_exact",
    "sharpness_check",
    "hardy_ratio",
    "random_polynomial",
    "random_rational_coefficients",
    "run_suite",
    "DEGREE_CAP",
]

DEGREE_CAP = 10


@dataclass(frozen=True)
class PolynomialFunction:
    """Analytic polynomial test vector f(z) = sum f_k z^k."""

    coefficients: tuple[complex, ...]

    @staticmethod
    def of(coefficients, degree_cap: int | None = DEGREE_CAP) -> "PolynomialFunction":
        coeffs = tuple(complex(c) for c in coefficients)
        if not coeffs:
            raise ValueError("at least one coefficient required")
        if degree_cap is not None and len(coeffs) - 1 > degree_cap:
            raise ValueError(f"degree {len(coeffs) - 1} exceeds cap {degree_cap}")
        return PolynomialFunction(coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def value(self, z):
        return np.polynomial.polynomial.polyval(
            np.asarray(z, dtype=complex), np.array(self.coefficients)
        )

    def derivative(self) -> "PolynomialFunction":
        c = self.coefficients
        if len(c) == 1:
            return PolynomialFunction((0.0 + 0.0j,))
        return PolynomialFunction(tuple(c[k] * k for k in range(1, len(c))))


@dataclass(frozen=True)
class QComplex:
    """Exact complex number over Fractions, for rational-arithmetic checks."""

    re: Fraction
    im: Fraction

    def __add__(self, other: "QComplex") -> "QComplex":
        return QComplex(self.re + other.re, self.im + other.im)

    def __mul__(self, other: "QComplex") -> "QComplex":
        return QComplex(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def scale(self, s: Fraction) -> "QComplex":
        return QComplex(self.re * s, self.im * s)

    def conjugate(self) -> "QComplex":
        return QComplex(self.re, -self.im)

    def to_complex(self) -> complex:
        return complex(self.re, self.im)

    @staticmethod
    def zero() -> "QComplex":
        return QComplex(Fraction(0), Fraction(0))


@dataclass(frozen=True)
class CheckOutcome:
    """One verified identity: both sides, errors, verdict.

    ``passed`` follows the rule: relative error within tolerance, except
    against a (near-)zero right-hand side, where the absolute error is
    used instead.  ``informational`` outcomes never fail a suite; they
    record quantities with no pass/fail semantics.
    """

    name: str
    lhs: complex
    rhs: complex
    abs_err: float
    rel_err: float
    passed: bool
    tolerance: float
    informational: bool = False

    @staticmethod
    def compare(
        name: str,
        lhs: complex,
        rhs: complex,
        tolerance: float,
        near_zero: float = 1e-12,
        informational: bool = False,
    ) -> "CheckOutcome":
        abs_err = abs(complex(lhs) - complex(rhs))
        scale = abs(complex(rhs))
        rel_err = abs_err / scale if scale > near_zero else abs_err
        passed = (abs_err <= tolerance) if scale <= near_zero else (rel_err <= tolerance)
        return CheckOutcome(
            name=name,
            lhs=complex(lhs),
            rhs=complex(rhs),
            abs_err=abs_err,
            rel_err=rel_err,
            passed=passed or informational,
            tolerance=tolerance,
            informational=informational,
        )

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "lhs": {"re": complex(self.lhs).real, "im": complex(self.lhs).imag},
            "rhs": {"re": complex(self.rhs).real, "im": complex(self.rhs).imag},
            "abs_err": self.abs_err,
            "rel_err": self.rel_err,
            "pass": self.passed,
            "tolerance": self.tolerance,
            "informational": self.informational,
        }


# ---------------------------------------------------------------------------
# Inner products: reduction and quadrature
# ---------------------------------------------------------------------------


def inner_product(
    f: PolynomialFunction,
    g: PolynomialFunction,
    w: RadialWeight,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
    cross_check: bool = True,
    tolerance: float = 1e-8,
) -> complex:
    """<f, g>_w by orthogonality reduction, cross-checked by quadrature.

    The reduction  sum_k f_k conj(g_k) w_k  is returned; when
    ``cross_check`` is set the direct 2-D quadrature must agree within
    ``tolerance`` or the mismatch is raised.
    """
    moments = MomentSequence.compute(w, max(f.degree, g.degree), cfg)
    reduced = sum(
        f.coefficients[k] * g.coefficients[k].conjugate() * moments[k]
        for k in range(min(f.degree, g.degree) + 1)
    )
    reduced = complex(reduced)
    if cross_check:
        quad = inner_product_quadrature(f, g, w, cfg)
        # scale by the Cauchy-Schwarz bound so orthogonal pairs (reduced = 0)
        # are judged on the right footing
        norm_f = math.sqrt(sum(abs(c) ** 2 * moments[k] for k, c in enumerate(f.coefficients)))
        norm_g = math.sqrt(sum(abs(c) ** 2 * moments[k] for k, c in enumerate(g.coefficients)))
        err = abs(quad - reduced) / max(norm_f * norm_g, 1e-300)
        if err > tolerance:
            raise QuadratureMismatchError(
                f"inner product routes disagree by {err:.2e} (> {tolerance:.1e}) "
                f"for {w.label()}"
            )
    return reduced


def _angular_samples(degree_sum: int) -> int:
    m = 64
    while m <= degree_sum + 1:
        m *= 2
    return m


def inner_product_quadrature(
    f: PolynomialFunction,
    g: PolynomialFunction,
    w: RadialWeight,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
) -> complex:
    """Direct <f, g>_w: uniform angular grid times adaptive radial quad.

    The uniform angular mean is exact for the trigonometric polynomial
    f conj(g) on each circle, so all genuine quadrature error lives in
    the radial direction.
    """
    m = _angular_samples(f.degree + g.degree)
    theta = 2.0 * np.pi * np.arange(m) / m
    unit = np.exp(1j * theta)
    upper = 1.0 if w.is_disk else _weights.plane_cutoff(w, (f.degree + g.degree) // 2, cfg)

    def mean_at(r: float) -> complex:
        pts = r * unit
        return complex(np.mean(f.value(pts) * np.conj(g.value(pts))))

    def radial_re(r: float) -> float:
        if r == 0.0:
            return 0.0
        return 2.0 * r * w.density(r, cfg) * mean_at(r).real

    def radial_im(r: float) -> float:
        if r == 0.0:
            return 0.0
        return 2.0 * r * w.density(r, cfg) * mean_at(r).imag

    re, _ = integrate.quad(
        radial_re, 0.0, upper, epsabs=cfg.abs_tol, epsrel=cfg.rel_tol, limit=cfg.max_subdivisions
    )
    im, _ = integrate.quad(
        radial_im, 0.0, upper, epsabs=cfg.abs_tol, epsrel=cfg.rel_tol, limit=cfg.max_subdivisions
    )
    return complex(re, im)


# ---------------------------------------------------------------------------
# Identity checks
# ---------------------------------------------------------------------------


def _truncated_point_kernel(
    w: RadialWeight, z: complex, cfg: QuadratureConfig, tail_target: float
) -> PolynomialFunction:
    """B_z as a polynomial in xi, truncated so the tail is below target."""
    n = kernels.DEFAULT_TRUNCATION
    while True:
        series = kernels.kernel_series(w, n, cfg)
        tail = series.tail_bound(abs(z))
        if tail <= tail_target or n >= kernels.TRUNCATION_CAP:
            break
        n = min(2 * n, kernels.TRUNCATION_CAP)
    zbar = complex(z).conjugate()
    coeffs = [a * zbar**k for k, a in enumerate(series.coefficients)]
    return PolynomialFunction.of(coeffs, degree_cap=None)


def reproducing_check(
    w: RadialWeight,
    f: PolynomialFunction,
    z: complex,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
    tolerance: float = 1e-8,
) -> CheckOutcome:
    """f(z) = <f | B_z>: quadrature against the truncated kernel vs f(z).

    The moment reduction of the right-hand side collapses analytically
    (w_k * (1/w_k) = 1 term by term), so the content of the check is the
    quadrature route; its outcome is reported.
    """
    direct = complex(f.value(complex(z)))
    bz = _truncated_point_kernel(w, z, cfg, tail_target=tolerance * 1e-2)
    quad = inner_product_quadrature(f, bz, w, cfg)
    return CheckOutcome.compare(
        name=f"reproducing property ({w.label()}, deg {f.degree}, z={z})",
        lhs=quad,
        rhs=direct,
        tolerance=tolerance,
    )


def littlewood_paley_check(
    w: RadialWeight,
    f: PolynomialFunction,
    g: PolynomialFunction,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
    tolerance: float = 1e-10,
    quadrature_star_moments: bool = False,
) -> CheckOutcome:
    """<f,g>_w = 4 <f',g'>_(w*) + w(D) f(0) conj(g(0)), via reductions.

    With star moments from the exact relation both sides agree to
    rounding; with ``quadrature_star_moments`` the associated weight's
    moments come from independent nested quadrature instead (a genuinely
    different route, tolerance ~1e-8).
    """
    k_max = max(f.degree, g.degree)
    moments = MomentSequence.compute(w, max(k_max, 1), cfg)
    lhs = sum(
        f.coefficients[k] * g.coefficients[k].conjugate() * moments[k]
        for k in range(min(f.degree, g.degree) + 1)
    )
    ws = _weights.star(w)
    if quadrature_star_moments:
        star_vals = [
            _weights.moment_quadrature(ws, k, cfg) for k in range(max(k_max, 1))
        ]
    else:
        star_vals = list(_weights.star_moments(moments).values)
    fd, gd = f.derivative(), g.derivative()
    rhs = 4.0 * sum(
        fd.coefficients[k] * gd.coefficients[k].conjugate() * star_vals[k]
        for k in range(min(fd.degree, gd.degree) + 1)
    )
    rhs += moments[0] * f.coefficients[0] * g.coefficients[0].conjugate()
    return CheckOutcome.compare(
        name=f"Littlewood-Paley ({w.label()}"
        + (", quadrature star moments)" if quadrature_star_moments else ")"),
        lhs=complex(lhs),
        rhs=complex(rhs),
        tolerance=tolerance,
    )


def littlewood_paley_exact(
    w: RadialWeight,
    f_coefficients: list[QComplex],
    g_coefficients: list[QComplex],
) -> tuple[QComplex, QComplex]:
    """Both sides of the identity in exact rational arithmetic.

    Requires a weight with exact rational moments.  Returns (lhs, rhs);
    under the star moment relation they are equal as exact rationals.
    """
    k_max = max(len(f_coefficients), len(g_coefficients)) - 1
    moments = [_weights.moment_exact(w, k) for k in range(k_max + 1)]
    lhs = QComplex.zero()
    for k in range(min(len(f_coefficients), len(g_coefficients))):
        lhs = lhs + (f_coefficients[k] * g_coefficients[k].conjugate()).scale(moments[k])
    rhs = (f_coefficients[0] * g_coefficients[0].conjugate()).scale(moments[0])
    star_w = _weights.star(w)
    for k in range(min(len(f_coefficients), len(g_coefficients)) - 1):
        fk = f_coefficients[k + 1].scale(Fraction(k + 1))
        gk = g_coefficients[k + 1].scale(Fraction(k + 1))
        term = (fk * gk.conjugate()).scale(4 * _weights.moment_exact(star_w, k))
        rhs = rhs + term
    return lhs, rhs


def sharpness_check(
    w: RadialWeight,
    z: complex,
    p: float,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
    tolerance: float = 1e-6,
) -> CheckOutcome:
    """Sharpness of the point-evaluation bound at z.

    The extremal function G = B_z^(2/p) satisfies |G|^p = |B_z|^2, so its
    p-norm to the p-th power is the squared-kernel integral, which the
    reproducing property evaluates to the diagonal B_z(z).  The check
    integrates |B_z|^2 w dA directly and compares with the diagonal;
    it requires B_z zero-free (G analytic), and raises otherwise.
    """
    if not p >= 1:
        raise ValueError("p must satisfy 1 <= p < inf")
    from . import zeros as _zeros  # lazy: zeros imports kernels

    report = _zeros.point_kernel_zeros(w, z, cfg)
    if report.total_count() > 0:
        raise KernelHasZeroError(
            f"kernel has zero: hypothesis of the sharpness statement fails "
            f"for {w.label()} at |z| = {abs(z):.6g}"
        )
    diagonal = kernels.point_evaluation_norm(w, z, 1.0, cfg)  # B_z(z)
    bz = _truncated_point_kernel(w, z, cfg, tail_target=tolerance * 1e-3 * diagonal)
    m = _angular_samples(2 * bz.degree)
    theta = 2.0 * np.pi * np.arange(m) / m
    unit = np.exp(1j * theta)
    upper = 1.0 if w.is_disk else _weights.plane_cutoff(w, bz.degree, cfg)

    def radial(r: float) -> float:
        if r == 0.0:
            return 0.0
        vals = np.abs(bz.value(r * unit)) ** 2
        return 2.0 * r * w.density(r, cfg) * float(np.mean(vals))

    integral, _ = integrate.quad(
        radial, 0.0, upper, epsabs=cfg.abs_tol, epsrel=cfg.rel_tol, limit=cfg.max_subdivisions
    )
    return CheckOutcome.compare(
        name=f"sharpness: ||G||^p integral = diagonal ({w.label()}, z={z}, p={p})",
        lhs=integral,
        rhs=diagonal,
        tolerance=tolerance,
    )


def hardy_ratio(
    f: PolynomialFunction,
    p: float,
    big_r: float,
    eta_exponent: float,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
    samples: int = 512,
) -> float:
    """n(f, R): mass-normalized growth ratio against eta = (1-r^2)^exponent.

    For integrable eta this tends to the normalized p-norm as R -> 1; for
    the borderline exponent -1 it tends to the boundary mean of |f|^p,
    i.e. the Hardy-space norm to the p-th power.
    """
    if not 0 < big_r < 1:
        raise ValueError("R must lie in (0, 1)")
    theta = 2.0 * np.pi * np.arange(samples) / samples
    unit = np.exp(1j * theta)

    def eta(r: float) -> float:
        return (1.0 - r * r) ** eta_exponent

    def numerator(r: float) -> float:
        if r == 0.0:
            return 0.0
        vals = np.abs(f.value(r * unit)) ** p
        return 2.0 * r * eta(r) * float(np.mean(vals))

    def denominator(r: float) -> float:
        return 2.0 * r * eta(r)

    num, _ = integrate.quad(
        numerator, 0.0, big_r, epsabs=cfg.abs_tol, epsrel=cfg.rel_tol, limit=cfg.max_subdivisions
    )
    den, _ = integrate.quad(
        denominator, 0.0, big_r, epsabs=cfg.abs_tol, epsrel=cfg.rel_tol, limit=cfg.max_subdivisions
    )
    return num / den


# ---------------------------------------------------------------------------
# Random test vectors
# ---------------------------------------------------------------------------


def random_polynomial(rng: random.Random, degree: int) -> PolynomialFunction:
    """Coefficients uniform in the complex square [-1,1] x [-1,1]."""
    return PolynomialFunction.of(
        [complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(degree + 1)]
    )


def random_rational_coefficients(
    rng: random.Random, degree: int, denominator: int = 64
) -> list[QComplex]:
    """Dyadic-rational coefficients in the same square, for exact checks."""
    return [
        QComplex(
            Fraction(rng.randint(-denominator, denominator), denominator),
            Fraction(rng.randint(-denominator, denominator), denominator),
        )
        for _ in range(degree + 1)
    ]


# ---------------------------------------------------------------------------
# The curated verification suite
# ---------------------------------------------------------------------------


def run_suite(
    seed: int = 7, cfg: QuadratureConfig = DEFAULT_QUADRATURE
) -> list[CheckOutcome]:
    """Deterministic identity suite; the CLI `verify` subcommand runs this."""
    from . import plane as _plane

    rng = random.Random(seed)
    out: list[CheckOutcome] = []

    # moment closed forms vs quadrature
    for alpha in (0, 1, Fraction(5, 2)):
        w = _weights.standard(alpha)
        for n in (0, 3, 8):
            out.append(
                CheckOutcome.compare(
                    name=f"moment closed form vs quadrature (std:{alpha}, n={n})",
                    lhs=_weights.moment_quadrature(w, n, cfg),
                    rhs=_weights.moment(w, n, cfg),
                    tolerance=1e-10,
                )
            )

    # reproducing property: quadrature route
    std0 = _weights.standard(0)
    std1 = _weights.standard(1)
    star0 = _weights.star(std0)
    star2 = _weights.star(std0, 2)
    for w, z in ((std0, 0.5 + 0.0j), (std1, 0.3 + 0.4j), (star0, -0.35 + 0.2j)):
        for k in (0, 3, 7):
            f = PolynomialFunction.of([0.0] * k + [1.0])
            out.append(reproducing_check(w, f, z, cfg))
    f_rand = random_polynomial(rng, 8)
    out.append(reproducing_check(star2, f_rand, 0.3 + 0.4j, cfg, tolerance=1e-8))

    # Littlewood-Paley: exact star relation and quadrature star moments
    fq = random_rational_coefficients(rng, 8)
    gq = random_rational_coefficients(rng, 8)
    lhs, rhs = littlewood_paley_exact(_weights.star(std1), fq, gq)
    exact_equal = lhs == rhs
    out.append(
        CheckOutcome(
            name="Littlewood-Paley exact rational (star(std:1), deg 8)",
            lhs=lhs.to_complex(),
            rhs=rhs.to_complex(),
            abs_err=0.0 if exact_equal else abs(lhs.to_complex() - rhs.to_complex()),
            rel_err=0.0 if exact_equal else 1.0,
            passed=exact_equal,
            tolerance=0.0,
        )
    )
    out.append(
        littlewood_paley_check(
            std0,
            random_polynomial(rng, 6),
            random_polynomial(rng, 6),
            cfg,
            tolerance=1e-8,
            quadrature_star_moments=True,
        )
    )

    # sharpness and the Vukotic-type exponent
    out.append(sharpness_check(std0, 0.6, 4.0, cfg))
    out.append(sharpness_check(star0, 0.3, 3.0, cfg))
    for alpha, z, p in ((0, 0.6, 4.0), (1, 0.45, 2.0), (Fraction(5, 2), 0.25, 1.5)):
        w = _weights.standard(alpha)
        out.append(
            CheckOutcome.compare(
                name=f"point-evaluation norm exponent (std:{alpha}, z={z}, p={p})",
                lhs=kernels.point_evaluation_norm(w, z, p, cfg),
                rhs=(1.0 - abs(z) ** 2) ** (-(2.0 + float(alpha)) / p),
                tolerance=1e-12,
            )
        )

    # Hoelder bound on random polynomials, norms by quadrature
    for w, z, p in ((std0, 0.55 + 0.1j, 3.0), (std1, -0.4 + 0.25j, 1.5)):
        for _ in range(3):
            f = random_polynomial(rng, 8)
            norm_p = _pnorm_quadrature(f, w, p, cfg)
            bound = kernels.point_evaluation_norm(w, z, p, cfg) * norm_p
            lhs = abs(complex(f.value(complex(z))))
            out.append(
                CheckOutcome(
                    name=f"Hoelder point bound ({w.label()}, p={p})",
                    lhs=lhs,
                    rhs=bound,
                    abs_err=max(0.0, lhs - bound),
                    rel_err=max(0.0, (lhs - bound) / (bound + 1e-300)),
                    passed=lhs <= bound * (1.0 + 1e-8),
                    tolerance=1e-8,
                )
            )

    # small-exponent lower-bound family: recorded without pass/fail semantics
    for p_small in (0.5, 0.75):
        g_norm = _gpnorm_quadrature(std0, 0.5, p_small, cfg)
        diagonal = kernels.point_evaluation_norm(std0, 0.5, 1.0, cfg)
        out.append(
            CheckOutcome.compare(
                name=f"lower-bound family ||G|| vs diagonal^(1/p) (p={p_small}, informational)",
                lhs=g_norm,
                rhs=diagonal ** (1.0 / p_small),
                tolerance=1e-4,
                informational=True,
            )
        )

    # Hardy ratio trend at the borderline exponent
    f_id = PolynomialFunction.of([0.0, 1.0])
    values = [hardy_ratio(f_id, 2.0, r, -1.0, cfg) for r in (0.9, 0.99, 0.999)]
    increasing = values[0] < values[1] < values[2] < 1.0
    closed = 1.0 + 0.999**2 / math.log(1.0 - 0.999**2)
    out.append(
        CheckOutcome(
            name="Hardy ratio trend (eta exponent -1, f=z, p=2)",
            lhs=values[2],
            rhs=closed,
            abs_err=abs(values[2] - closed),
            rel_err=abs(values[2] - closed) / abs(closed),
            passed=increasing and abs(values[2] - closed) <= 1e-3,
            tolerance=1e-3,
        )
    )

    # plane: sharp bound suite and gaussian moment cross-check
    for gamma, z, p in ((1.0, 0.8 + 0.3j, 2.0), (2.0, -0.5 + 0.9j, 4.0), (1.0, 0.6, math.inf)):
        f = random_polynomial(rng, 6)
        out.append(_plane.sb_point_eval_bound(gamma, z, p, f, cfg))
    wg = _weights.gaussian(2)
    for n in (0, 4, 9):
        out.append(
            CheckOutcome.compare(
                name=f"gaussian moment vs quadrature (gamma=2, n={n})",
                lhs=_weights.moment_quadrature(wg, n, cfg),
                rhs=float(_weights.moment_exact(wg, n)),
                tolerance=1e-10,
            )
        )
    return out


def _pnorm_quadrature(
    f: PolynomialFunction, w: RadialWeight, p: float, cfg: QuadratureConfig
) -> float:
    """||f||_p by angular grid + radial quadrature (disk weights)."""
    m = _angular_samples(int(math.ceil(p * f.degree)) + 2)
    theta = 2.0 * np.pi * np.arange(m) / m
    unit = np.exp(1j * theta)

    def radial(r: float) -> float:
        if r == 0.0:
            return 0.0
        vals = np.abs(f.value(r * unit)) ** p
        return 2.0 * r * w.density(r, cfg) * float(np.mean(vals))

    integral, _ = integrate.quad(
        radial, 0.0, 1.0, epsabs=cfg.abs_tol, epsrel=cfg.rel_tol, limit=cfg.max_subdivisions
    )
    return integral ** (1.0 / p)


def _gpnorm_quadrature(
    w: RadialWeight, z: complex, p: float, cfg: QuadratureConfig
) -> float:
    """||G||_p for G = B_z^(2/p); |G|^p = |B_z|^2 regardless of p."""
    diagonal = kernels.point_evaluation_norm(w, z, 1.0, cfg)
    bz = _truncated_point_kernel(w, z, cfg, tail_target=1e-10 * diagonal)
    m = _angular_samples(2 * bz.degree)
    theta = 2.0 * np.pi * np.arange(m) / m
    unit = np.exp(1j * theta)

    def radial(r: float) -> float:
        if r == 0.0:
            return 0.0
        vals = np.abs(bz.value(r * unit)) ** 2
        return 2.0 * r * w.density(r, cfg) * float(np.mean(vals))

    integral, _ = integrate.quad(
        radial, 0.0, 1.0, epsabs=cfg.abs_tol, epsrel=cfg.rel_tol, limit=cfg.max_subdivisions
    )
    return integral ** (1.0 / p)
