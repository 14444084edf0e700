from __future__ import annotations

import cmath
import math
from fractions import Fraction

import pytest

from bergmanzeros import kernels as K
from bergmanzeros import weights as W
from bergmanzeros.errors import (
    BranchPointError,
    KernelHasZeroError,
    NoClosedFormError,
    OutsideDomainError,
    TruncationInsufficientError,
)


def std_closed(alpha: float, zeta: complex) -> complex:
    return (1 - zeta) ** -(2 + alpha)


DISK_GRID = [
    0.0,
    0.5,
    -0.9,
    0.9,
    0.6 + 0.6j,
    -0.5 + 0.7j,
    0.9j,
    0.63 - 0.64j,
]


class TestSeriesConstruction:
    def test_standard_coefficients(self, cfg):
        ks = K.kernel_series(W.standard(0), 32, cfg)
        for n in range(33):
            assert ks.coefficients[n] == pytest.approx(n + 1, rel=1e-14)

    def test_star_coefficients(self, cfg):
        ks = K.kernel_series(W.star(W.standard(0)), 32, cfg)
        for n in range(33):
            assert ks.coefficients[n] == pytest.approx(
                4 * (n + 1) ** 2 * (n + 2), rel=1e-13
            )

    def test_gaussian_coefficients(self, cfg):
        gamma = 1.5
        ks = K.kernel_series(W.gaussian(gamma), 24, cfg)
        for n in range(25):
            assert ks.coefficients[n] == pytest.approx(
                gamma**n / math.factorial(n), rel=1e-13
            )

    def test_analyticity_surrogate(self, cfg):
        ks = K.kernel_series(W.standard(0), 256, cfg)
        assert ks.analyticity_surrogate() <= 1.05


class TestEvaluate:
    def test_frozen_values(self, cfg):
        ks = K.kernel_series(W.standard(0), 128, cfg)
        assert K.evaluate(ks, 0.5, 1e-10).value == pytest.approx(4.0, rel=1e-12)
        assert K.evaluate(ks, 0.0, 1e-10).value == ks.coefficients[0]
        gs = K.kernel_series(W.gaussian(1), 64, cfg)
        assert K.evaluate(gs, 1.0, 1e-12).value == pytest.approx(math.e, rel=1e-13)

    def test_value_within_tail_bound(self, cfg):
        ks = K.kernel_series(W.standard(1), 96, cfg)
        for zeta in (0.4, -0.55 + 0.3j):
            res = K.evaluate(ks, zeta, 1e-8)
            assert abs(res.value - std_closed(1, zeta)) <= res.tail_bound + 1e-12

    def test_truncation_insufficient(self, cfg):
        ks = K.kernel_series(W.standard(0), 8, cfg)
        with pytest.raises(TruncationInsufficientError):
            K.evaluate(ks, 0.9, 1e-10)

    def test_outside_domain_and_guard(self, cfg):
        ks = K.kernel_series(W.standard(0), 64, cfg)
        with pytest.raises(OutsideDomainError):
            K.evaluate(ks, 1.2, 1e-8)
        with pytest.raises(OutsideDomainError):
            K.evaluate(ks, 0.9995, 1e-8)

    def test_adaptive_raises_truncation(self, cfg):
        res = K.evaluate_adaptive(W.standard(0), 0.9, 1e-12, cfg, start_truncation=16)
        assert res.value == pytest.approx(std_closed(0, 0.9), rel=1e-12)
        assert res.terms_used > 17

    def test_cancellation_heavy_point(self, cfg):
        # alternating huge terms at negative zeta for a large exponent:
        # plain double Horner loses ~11 digits here, so this exercises the
        # multiprecision escalation
        w = W.standard(7)
        res = K.evaluate_adaptive(w, -0.9, 1e-11, cfg)
        assert res.value == pytest.approx(std_closed(7, -0.9), rel=1e-9)


class TestClosedForm:
    def test_standard_frozen(self):
        assert K.closed_form(W.standard(1), 0.5) == pytest.approx(8.0)

    def test_star_standard_frozen(self):
        val = K.closed_form(W.star(W.standard(0)), 0.25)
        assert val == pytest.approx(12 / 0.31640625, rel=1e-14)

    def test_star_standard_formula(self):
        # 4(2+a) (1 + (2+a) zeta) / (1-zeta)^(4+a)
        for alpha in (0.0, 1.0, 2.5):
            w = W.star(W.standard(alpha))
            for zeta in (0.3, -0.6 + 0.2j):
                expected = (
                    4 * (2 + alpha) * (1 + (2 + alpha) * zeta) / (1 - zeta) ** (4 + alpha)
                )
                assert K.closed_form(w, zeta) == pytest.approx(expected, rel=1e-13)

    def test_star_kernel_zero_location(self):
        # the numerator 1 + (2+a) zeta vanishes at zeta = -1/(2+a)
        for alpha in (0.0, 3.0):
            w = W.star(W.standard(alpha))
            zeta0 = -1.0 / (2 + alpha)
            assert abs(K.closed_form(w, zeta0)) < 1e-12
            assert abs(zeta0) == pytest.approx(1.0 / (2 + alpha))

    def test_series_matches_closed_form_grid(self, cfg):
        for alpha in (0, 1, Fraction(5, 2), 7):
            w = W.standard(alpha)
            a = float(alpha)
            for zeta in DISK_GRID:
                got = K.evaluate_adaptive(w, zeta, 1e-12 * abs(std_closed(a, zeta)), cfg).value
                assert got == pytest.approx(std_closed(a, zeta), rel=1e-10)

    def test_derivative_identity_links_star_kernel(self, cfg):
        # 4 B' + 4 zeta B'' of the base kernel equals the star kernel,
        # checked by central differences on the series evaluation
        h = 1e-5
        for alpha in (0.0, 1.3):
            base = W.standard(alpha)
            starred = W.star(base)
            for zeta in (0.21, -0.33 + 0.12j):
                f = lambda z: K.evaluate_adaptive(base, z, 1e-13, cfg).value
                d1 = (f(zeta + h) - f(zeta - h)) / (2 * h)
                d2 = (f(zeta + h) - 2 * f(zeta) + f(zeta - h)) / h**2
                expected = 4 * d1 + 4 * zeta * d2
                got = K.closed_form(starred, zeta)
                assert got == pytest.approx(expected, rel=1e-5)

    def test_errors(self):
        with pytest.raises(BranchPointError):
            K.closed_form(W.standard(0), 1.0)
        with pytest.raises(NoClosedFormError):
            K.closed_form(W.custom(lambda r: 1.0), 0.3)


class TestTwoVariable:
    def test_scaling_identity(self, cfg):
        # B_z(xi) is invariant under (z, xi) -> (w, conj(z/w) xi)
        w = W.star(W.standard(0))
        z = 0.52 * cmath.exp(0.7j)
        xi = 0.6 * cmath.exp(-1.2j)
        direct = K.two_variable_value(w, z, xi, cfg)
        for w2 in (0.8, 0.65 * cmath.exp(2.1j)):
            moved = K.two_variable_value(w, w2, (z / w2).conjugate() * xi, cfg)
            assert moved == pytest.approx(direct, rel=1e-12)

    def test_diagonal_positive(self, cfg):
        for w in (W.standard(0), W.star(W.standard(1)), W.gaussian(2)):
            for z in (0.0, 0.3 + 0.4j, -0.7j):
                val = K.two_variable_value(w, z, z, cfg)
                assert val.imag == pytest.approx(0.0, abs=1e-10)
                assert val.real > 0


class TestPointEvaluationNorm:
    def test_standard_matches_power_law(self, cfg):
        for alpha in (0, 1, Fraction(5, 2)):
            w = W.standard(alpha)
            for z, p in ((0.5, 1.0), (0.3 + 0.4j, 2.0), (-0.8j, 4.0)):
                expected = (1 - abs(z) ** 2) ** (-(2 + float(alpha)) / p)
                assert K.point_evaluation_norm(w, z, p, cfg) == pytest.approx(
                    expected, rel=1e-12
                )

    def test_norm_at_origin_is_mass_power(self, cfg):
        w = W.custom(lambda r: 2.0 * (1 - r * r))  # mass != 1
        w0 = W.moment_quadrature(w, 0, cfg)
        for p in (1.0, 2.0, 3.0):
            assert K.point_evaluation_norm(w, 0.0, p, cfg) == pytest.approx(
                w0 ** (-1.0 / p), rel=1e-9
            )

    def test_gaussian_norm_is_p_independent(self, cfg):
        w = W.gaussian(2)
        z = 0.7 + 0.2j
        expected = math.exp(0.5 * 2 * abs(z) ** 2)
        for p in (1.0, 2.0, 5.0):
            assert K.point_evaluation_norm(w, z, p, cfg) == pytest.approx(expected)

    def test_small_p_rejected(self):
        with pytest.raises(ValueError):
            K.point_evaluation_norm(W.standard(0), 0.5, 0.5)


class TestExtremalValues:
    def test_p2_collapses_to_kernel(self, cfg):
        w = W.standard(1)
        z, xi = 0.4 + 0.1j, 0.2 - 0.5j
        f_val, g_val = K.extremal_values(w, z, 2.0, xi, cfg)
        b = K.two_variable_value(w, z, xi, cfg)
        assert f_val == pytest.approx(b, rel=1e-12)
        assert g_val == pytest.approx(b, rel=1e-12)

    def test_modulus_identity(self, cfg):
        # |F(xi)|^q = |B_z(xi)|^2 B_z(z)^(q-2)
        w = W.standard(0)
        z, xi = 0.5, 0.3 + 0.3j
        for p in (1.5, 3.0, 7.0):
            q = p / (p - 1)
            f_val, _ = K.extremal_values(w, z, p, xi, cfg)
            b_xi = K.two_variable_value(w, z, xi, cfg)
            b_zz = K.two_variable_value(w, z, z, cfg).real
            assert abs(f_val) ** q == pytest.approx(
                abs(b_xi) ** 2 * b_zz ** (q - 2), rel=1e-10
            )

    def test_g_at_base_point(self, cfg):
        w = W.standard(2)
        z, p = 0.35 - 0.2j, 3.0
        _, g_val = K.extremal_values(w, z, p, z, cfg)
        b_zz = K.two_variable_value(w, z, z, cfg).real
        assert abs(g_val) == pytest.approx(b_zz ** (2.0 / p), rel=1e-12)
        # |G(z)| = (point-evaluation norm) * ||G||, both equal to powers of the diagonal
        assert abs(g_val) == pytest.approx(
            K.point_evaluation_norm(w, z, p, cfg) * b_zz ** (1.0 / p), rel=1e-12
        )

    def test_zero_free_hypothesis_enforced(self, cfg):
        w = W.star(W.standard(0))
        with pytest.raises(KernelHasZeroError):
            K.extremal_values(w, 0.75, 3.0, 0.2, cfg, check_zero_free=True)
        # below the flip the hypothesis holds
        f_val, g_val = K.extremal_values(w, 0.3, 3.0, 0.2, cfg, check_zero_free=True)
        assert cmath.isfinite(f_val) and cmath.isfinite(g_val)
