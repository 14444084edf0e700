"""Locating and counting kernel zeroes.

Two independent routes are kept side by side throughout:

* root lists from a simultaneous-iteration polynomial solver
  (Aberth-Ehrlich corrections with Newton polishing), and
* integer zero counts from the argument principle, i.e. the winding
  number of the function along a circle, computed by trapezoidal
  discretization of f'/f with dyadic refinement until the integer
  stabilizes twice.

Everything reduces to the one-variable kernel B(zeta): the zeroes of the
point kernel B_z inside the disk correspond to the zeroes of B with
|zeta| < |z| via xi = zeta / conj(z), and a zero found at one point
propagates outward along that scaling, which is what the pair-vanishing
and monotone-count facts assert.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import kernels, starcalc
from .errors import (
    AnalyticityViolatedError,
    OutsideDomainError,
    RootIterationStalledError,
    RootsOutsideDiskError,
    TailNotCertifiableError,
    ZeroNearContourError,
)
from .weights import DEFAULT_QUADRATURE, QuadratureConfig, RadialWeight

__all__ = [
    "ZeroReport",
    "ContourSpec",
    "poly_roots",
    "count_zeros",
    "point_kernel_zeros",
    "largest_zero_modulus",
    "zero_free_radius",
    "zero_map",
    "RESIDUAL_CERTIFICATION",
    "CLUSTER_TOL",
]

RESIDUAL_CERTIFICATION = 1e-9
CLUSTER_TOL = 1e-7


@dataclass(frozen=True)
class ZeroReport:
    """Located roots (with residuals), counts per radius, and provenance.

    Roots are repeated according to multiplicity.  ``count_in_radius``
    maps contour radii to zero counts and is non-decreasing in the
    radius.  ``certified`` means every residual passed the certification
    threshold and - where both routes ran - the argument-principle count
    agreed with the root list.
    """

    roots: tuple[tuple[complex, float], ...]
    count_in_radius: dict[float, int] = field(default_factory=dict)
    method: str = "iterative_simultaneous"
    certified: bool = True

    def __post_init__(self):
        items = sorted(self.count_in_radius.items())
        for (r1, c1), (r2, c2) in zip(items, items[1:]):
            if c2 < c1:
                raise ValueError(
                    f"count_in_radius must be non-decreasing: {c1}@{r1} vs {c2}@{r2}"
                )

    def total_count(self) -> int:
        return len(self.roots)

    def moduli(self) -> list[float]:
        return sorted(abs(r) for r, _ in self.roots)

    def to_json_dict(self) -> dict:
        return {
            "roots": [
                {"re": r.real, "im": r.imag, "residual": res} for r, res in self.roots
            ],
            "counts": {repr(rad): cnt for rad, cnt in sorted(self.count_in_radius.items())},
            "method": self.method,
            "certified": self.certified,
        }


@dataclass(frozen=True)
class ContourSpec:
    """Circle contour and refinement budget for winding-number counts.

    ``min_modulus_guard`` is relative to the median modulus: the count
    aborts when min |f| < guard * median |f| on the contour, signalling a
    zero too close to the circle.  (The median, unlike the max, is not
    distorted by the huge dynamic range a nearby pole induces.)
    """

    radius: float
    samples: int = 256
    refinement_limit: int = 12
    min_modulus_guard: float = 1e-9

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError("contour radius must be positive")
        if self.samples < 64 or self.samples & (self.samples - 1):
            raise ValueError("samples must be a power of two >= 64")
        if self.refinement_limit < 0:
            raise ValueError("refinement_limit must be >= 0")


# ---------------------------------------------------------------------------
# Polynomial roots: Aberth-Ehrlich simultaneous iteration + Newton polish
# ---------------------------------------------------------------------------


def poly_roots(coefficients: Sequence[complex]) -> ZeroReport:
    """All complex roots of a polynomial given by ascending coefficients.

    Exact zero roots are split off first; degree one and two are solved in
    closed form; the rest runs the simultaneous iteration.  Residuals are
    |p(root)| relative to the local coefficient scale sum |c_k| |root|^k,
    and multiplicities come from clustering roots within ``CLUSTER_TOL``.
    """
    c = np.asarray(list(coefficients), dtype=complex)
    if len(c) < 2:
        raise ValueError("degree must be >= 1")
    if c[-1] == 0:
        raise ValueError("leading coefficient must be nonzero")

    zero_mult = 0
    while c[0] == 0:
        zero_mult += 1
        c = c[1:]

    degree = len(c) - 1
    if degree == 0:
        roots = np.array([], dtype=complex)
        converged = True
    elif degree == 1:
        roots = np.array([-c[0] / c[1]])
        converged = True
    elif degree == 2:
        roots = _quadratic_roots(c[0], c[1], c[2])
        converged = True
    else:
        roots, converged = _aberth(c)
        roots = _newton_polish(c, roots)

    roots = _cluster(roots)
    all_roots = [0.0 + 0.0j] * zero_mult + list(roots)
    residuals = [_residual(np.asarray(list(coefficients), dtype=complex), r) for r in all_roots]
    certified = converged and all(res < RESIDUAL_CERTIFICATION for res in residuals)
    inside_unit = sum(1 for r in all_roots if abs(r) < 1.0)
    report = ZeroReport(
        roots=tuple(zip(all_roots, residuals)),
        count_in_radius={1.0: inside_unit},
        method="iterative_simultaneous",
        certified=certified,
    )
    if not converged:
        raise RootIterationStalledError("root iteration stalled", report=report)
    return report


def _quadratic_roots(c0: complex, c1: complex, c2: complex) -> np.ndarray:
    # stable form: avoid cancellation in -b +/- sqrt(disc)
    disc = np.sqrt(c1 * c1 - 4.0 * c2 * c0 + 0.0j)
    if abs(c1 - disc) > abs(c1 + disc):
        q = -0.5 * (c1 - disc)
    else:
        q = -0.5 * (c1 + disc)
    r1 = q / c2
    r2 = c0 / q if q != 0 else 0.0 + 0.0j
    return np.array([r1, r2])


def _aberth(c: np.ndarray, max_iter: int = 200, tol: float = 1e-14):
    """Simultaneous Aberth-Ehrlich iteration; returns (roots, converged)."""
    d = len(c) - 1
    dc = c[1:] * np.arange(1, len(c))
    # initial guesses on a circle between the root-magnitude bounds
    r_hi = 1.0 + max(abs(c[:-1] / c[-1]))
    r_lo = abs(c[0] / c[-1]) ** (1.0 / d)
    radius = min(max(r_lo, 1e-8), r_hi)
    angles = 2.0 * np.pi * (np.arange(d) + 0.25) / d + 0.5
    z = radius * np.exp(1j * angles)

    c_desc = c[::-1]
    dc_desc = dc[::-1]
    converged = False
    for _ in range(max_iter):
        p = np.polyval(c_desc, z)
        dp = np.polyval(dc_desc, z)
        dp = np.where(dp == 0, 1e-30, dp)
        w = p / dp
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        s = np.sum(1.0 / diff, axis=1) - 1.0  # remove the diagonal's 1/1
        denom = 1.0 - w * s
        denom = np.where(np.abs(denom) < 1e-30, 1.0, denom)
        corr = w / denom
        z = z - corr
        if np.max(np.abs(corr)) <= tol * (1.0 + np.max(np.abs(z))):
            converged = True
            break
    return z, converged


def _newton_polish(c: np.ndarray, roots: np.ndarray, steps: int = 4) -> np.ndarray:
    c_desc = c[::-1]
    dc_desc = (c[1:] * np.arange(1, len(c)))[::-1]
    z = roots.copy()
    for _ in range(steps):
        p = np.polyval(c_desc, z)
        dp = np.polyval(dc_desc, z)
        step = np.where(dp != 0, p / np.where(dp == 0, 1.0, dp), 0.0)
        z_new = z - step
        improved = np.abs(np.polyval(c_desc, z_new)) <= np.abs(p)
        z = np.where(improved, z_new, z)
    return z


def _cluster(roots: np.ndarray) -> list[complex]:
    """Greedy clustering within CLUSTER_TOL; centroids repeated per size."""
    remaining = list(roots)
    out: list[complex] = []
    while remaining:
        seed = remaining.pop(0)
        cluster = [seed]
        rest = []
        for r in remaining:
            if abs(r - seed) <= CLUSTER_TOL:
                cluster.append(r)
            else:
                rest.append(r)
        remaining = rest
        centroid = sum(cluster) / len(cluster)
        out.extend([complex(centroid)] * len(cluster))
    return out


def _residual(c: np.ndarray, root: complex) -> float:
    p = np.polyval(c[::-1], root)
    scale = np.polyval(np.abs(c)[::-1], abs(root))
    return float(abs(p) / (scale + 1e-300))


# ---------------------------------------------------------------------------
# Argument-principle counting
# ---------------------------------------------------------------------------


def count_zeros(f, contour: ContourSpec) -> int:
    """Zeroes of ``f`` (with multiplicity) inside |zeta| < contour.radius.

    ``f`` must expose ``value(zeta)`` and either ``log_derivative(zeta)``
    or ``derivative(zeta)``, all accepting numpy arrays.  The winding
    number (1/2 pi) int (f'/f) zeta dtheta is discretized on a uniform
    grid and the grid doubled until the rounded integer repeats twice.
    """
    radius = contour.radius
    domain_radius = getattr(f, "domain_radius", math.inf)
    if radius >= domain_radius:
        raise AnalyticityViolatedError(
            f"analyticity violated: contour radius {radius} reaches the "
            f"domain radius {domain_radius}"
        )
    m = contour.samples
    previous: int | None = None
    stable = 0
    for _ in range(contour.refinement_limit + 1):
        theta = 2.0 * np.pi * np.arange(m) / m
        zeta = radius * np.exp(1j * theta)
        fv = np.asarray(f.value(zeta))
        mags = np.abs(fv)
        scale = float(np.median(mags))
        if np.min(mags) < contour.min_modulus_guard * scale:
            raise ZeroNearContourError(
                f"zero near contour at radius {radius:.6g}: "
                f"min |f| / median |f| = {np.min(mags) / scale:.2e}"
            )
        if hasattr(f, "log_derivative"):
            ld = np.asarray(f.log_derivative(zeta))
        else:
            ld = np.asarray(f.derivative(zeta)) / fv
        winding = np.mean(ld * zeta)
        n = int(round(winding.real))
        resolved = abs(winding - n) < 0.2
        if resolved and previous == n:
            stable += 1
            if stable >= 1:  # stabilized twice: this pass and the previous one
                return n
        else:
            stable = 0
        previous = n if resolved else None
        m *= 2
    raise ZeroNearContourError(
        f"winding number did not stabilize at radius {radius:.6g} within "
        f"{contour.refinement_limit} refinements; a zero is likely near the contour"
    )


def _count_with_perturbation(
    f, radius: float, contour_template: ContourSpec
) -> tuple[int | None, float | None]:
    """count_zeros with the documented +/- k*1e-3 retry ladder.

    Returns (count, used_radius); (None, None) when every retry tripped
    the modulus guard.
    """
    offsets = [0.0]
    for k in range(1, 6):
        offsets.extend([-k * 1e-3, +k * 1e-3])
    domain_radius = getattr(f, "domain_radius", math.inf)
    for off in offsets:
        r = radius + off
        if r <= 0 or r >= domain_radius:
            continue
        spec = ContourSpec(
            radius=r,
            samples=contour_template.samples,
            refinement_limit=contour_template.refinement_limit,
            min_modulus_guard=contour_template.min_modulus_guard,
        )
        try:
            return count_zeros(f, spec), r
        except ZeroNearContourError:
            continue
    return None, None


# ---------------------------------------------------------------------------
# Kernel zero sets
# ---------------------------------------------------------------------------


def _one_variable_function(
    w: RadialWeight,
    zeta_radius: float,
    cfg: QuadratureConfig,
    series_tol: float = 1e-10,
    truncation: int | None = None,
):
    """Evaluable one-variable kernel plus its polynomial root candidates.

    Returns (f, candidate_coefficients) where the candidates are either
    the closed-form numerator (star iterates) or the truncated series.
    """
    root = w.root_weight()
    depth = w.depth if w.kind == "star_iterate" else 0
    if root.kind == "standard":
        if depth == 0:
            fixed = starcalc.StarKernelClosedForm.for_depth(0).at(float(root.alpha))
            return fixed, None  # zero-free closed form
        fixed = starcalc.StarKernelClosedForm.for_depth(depth).at(float(root.alpha))
        return fixed, list(fixed.numerator_coefficients)
    if root.kind == "gaussian":
        from . import plane

        form = plane.sb_star_iterate(root.gamma, depth)
        gamma = float(root.gamma)
        poly_in_zeta = [
            complex(b) * gamma**k for k, b in enumerate(form.polynomial_coefficients)
        ]
        return form, (poly_in_zeta if depth > 0 else None)
    # custom weight: truncated series, raised until the tail is negligible
    n = truncation or kernels.DEFAULT_TRUNCATION
    while True:
        series = kernels.kernel_series(w, n, cfg)
        tail = series.tail_bound(zeta_radius)
        scale = float(np.polyval(np.array(series.coefficients)[::-1], zeta_radius))
        if tail <= series_tol * max(scale, 1.0) or n >= kernels.TRUNCATION_CAP:
            return series, list(series.coefficients)
        n = min(2 * n, kernels.TRUNCATION_CAP)


def point_kernel_zeros(
    w: RadialWeight,
    z: complex,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
    search_radius: float | None = None,
    contour: ContourSpec | None = None,
) -> ZeroReport:
    """Zeroes of the point kernel B_z inside the disk (or search radius).

    Through the one-variable reduction these are the kernel zeroes with
    |zeta| < |z| mapped back by xi = zeta / conj(z).  The count is
    cross-checked by the argument principle at radius |z| (perturbed by
    up to +/- 5e-3 if a zero sits on the contour; if every retry fails
    the root-based count is reported uncertified).
    """
    z = complex(z)
    az = abs(z)
    if az == 0.0:
        # the kernel at the origin is the non-zero constant 1/w_0
        return ZeroReport(roots=(), count_in_radius={0.0: 0}, method="argument_principle")
    if w.is_disk:
        if az >= 1.0:
            raise OutsideDomainError("z must lie in the open unit disk")
        zeta_limit = az
        xi_limit = 1.0
    else:
        if search_radius is None:
            raise ValueError("plane weights need an explicit search_radius for xi")
        zeta_limit = az * search_radius
        xi_limit = search_radius

    f, candidates = _one_variable_function(w, zeta_limit, cfg)

    roots: list[tuple[complex, float]] = []
    if candidates is not None:
        poly_report = poly_roots(candidates)
        for root, _res in poly_report.roots:
            if abs(root) < zeta_limit:
                xi = root / z.conjugate()
                residual = _function_residual(f, root)
                roots.append((xi, residual))
    roots.sort(key=lambda item: (abs(item[0]), item[0].real, item[0].imag))

    template = contour or ContourSpec(radius=zeta_limit)
    count, used_radius = _count_with_perturbation(f, zeta_limit, template)
    if count is None:
        count = len(roots)
        certified = False
    else:
        certified = count == len(roots) and all(
            res < RESIDUAL_CERTIFICATION for _, res in roots
        )
    return ZeroReport(
        roots=tuple(roots),
        count_in_radius={xi_limit: count},
        method="argument_principle",
        certified=certified,
    )


def _function_residual(f, zeta: complex) -> float:
    # positive coefficients make f(|zeta|) the natural local scale
    value = complex(np.asarray(f.value(np.array([zeta])))[0])
    scale = abs(complex(np.asarray(f.value(np.array([abs(zeta) + 0.0j])))[0]))
    return abs(value) / (scale + 1e-300)


def largest_zero_modulus(
    n: int,
    alpha: float,
    depth_cap: int = starcalc.DEFAULT_DEPTH_CAP,
) -> float:
    """|zeta_n|: the largest root modulus of the level-n numerator.

    Requires all n roots strictly inside the unit disk (true when the
    dominance margin is positive); otherwise raises the informative
    out-of-disk error carrying the located roots.  For |z| between the
    returned value and 1 the point kernel has exactly n zeroes.
    """
    numer = starcalc.star_numerator(n, depth_cap)
    coeffs = [complex(c) for c in numer.coefficients_at(float(alpha))]
    report = poly_roots(coeffs)
    moduli = report.moduli()
    if moduli[-1] >= 1.0:
        raise RootsOutsideDiskError(
            f"roots not all inside disk: max modulus {moduli[-1]:.6g} at "
            f"level {n}, alpha {alpha}",
            report=report,
        )
    return moduli[-1]


def zero_free_radius(
    w: RadialWeight,
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
    resolution: float = 1e-4,
    truncation_cap: int = kernels.TRUNCATION_CAP,
) -> float:
    """A certified radius r > 0 with B_z zero-free whenever |z| < r.

    Sufficient criterion: with a_n the kernel coefficients,

        r * T(r) < a_0,   T(r) = sum_(n>=1) a_n r^(n-1),

    evaluated with a certified geometric tail bound.  The bound is sound
    but need not be sharp.
    """
    if not w.is_disk:
        raise ValueError("zero-free radii are a disk-domain notion here")

    state = {"series": kernels.kernel_series(w, kernels.DEFAULT_TRUNCATION, cfg)}

    def certified(r: float) -> bool:
        if r <= 0:
            return True
        series = state["series"]
        while True:
            rho = series.trailing_ratio()
            if rho * r < 1.0:
                break
            if series.truncation >= truncation_cap:
                raise TailNotCertifiableError(
                    f"tail not certifiable at r = {r:.6g} below truncation cap"
                )
            series = kernels.kernel_series(w, min(2 * series.truncation, truncation_cap), cfg)
            state["series"] = series
        a = series.coefficients
        n_max = series.truncation
        t_val = sum(a[n] * r ** (n - 1) for n in range(1, n_max + 1))
        q = series.trailing_ratio() * r
        tail = a[n_max] * r ** (n_max - 1) * q / (1.0 - q)
        return r * (t_val + tail) < a[0]

    lo, hi = 0.0, 1.0
    while hi - lo > resolution:
        mid = 0.5 * (lo + hi)
        if certified(mid):
            lo = mid
        else:
            hi = mid
    if lo > 0:
        return lo
    # coefficients so steep that even the first grid point failed: shrink
    r = resolution
    while not certified(r):
        r *= 0.5
        if r < 1e-300:
            raise TailNotCertifiableError("no certifiable zero-free radius found")
    return r


def zero_map(
    w: RadialWeight,
    radii: Sequence[float],
    cfg: QuadratureConfig = DEFAULT_QUADRATURE,
    width: int | None = None,
) -> dict[float, int]:
    """Zero count of B_z over |z| = each radius (one z per radius suffices
    by radiality).  Counts are non-decreasing in the radius; the table is
    returned in input order.
    """
    rad = list(radii)
    if any(not (0 < r < 1) for r in rad):
        raise ValueError("radii must lie strictly between 0 and 1")
    if any(r2 <= r1 for r1, r2 in zip(rad, rad[1:])):
        raise ValueError("radii must be strictly increasing")

    def one(r: float) -> int:
        report = point_kernel_zeros(w, r, cfg)
        return next(iter(report.count_in_radius.values()))

    if width is not None and width > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=width) as pool:
            counts = list(pool.map(one, rad))
    else:
        counts = [one(r) for r in rad]
    return dict(zip(rad, counts))


def is_monotone(table: dict[float, int]) -> bool:
    items = sorted(table.items())
    return all(c2 >= c1 for (_, c1), (_, c2) in zip(items, items[1:]))
