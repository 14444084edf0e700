from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest

from bergmanzeros import checks as C
from bergmanzeros import kernels as K
from bergmanzeros import weights as W
from bergmanzeros.errors import KernelHasZeroError, QuadratureMismatchError


def hardy_ratio_closed(big_r: float) -> float:
    """Exact value of the ratio for f = z, p = 2, eta = (1-r^2)^(-1):

        n(R) = (-R^2 - log(1-R^2)) / (-log(1-R^2)) = 1 + R^2 / log(1-R^2).
    """
    return 1.0 + big_r**2 / math.log(1.0 - big_r**2)


class TestInnerProduct:
    def test_frozen_values(self, cfg):
        zeta = C.PolynomialFunction.of([0, 1])
        one = C.PolynomialFunction.of([1])
        w = W.standard(0)
        assert C.inner_product(zeta, zeta, w, cfg) == pytest.approx(0.5, rel=1e-10)
        assert abs(C.inner_product(one, zeta, w, cfg)) < 1e-12

    def test_positivity(self, cfg):
        rng = random.Random(5)
        f = C.random_polynomial(rng, 6)
        val = C.inner_product(f, f, W.standard(1), cfg)
        assert val.imag == pytest.approx(0.0, abs=1e-12)
        assert val.real > 0

    def test_reduction_vs_quadrature_random(self, cfg):
        rng = random.Random(11)
        for w in (W.standard(0), W.standard(2), W.gaussian(1)):
            f = C.random_polynomial(rng, 5)
            g = C.random_polynomial(rng, 7)
            reduced = C.inner_product(f, g, w, cfg, cross_check=False)
            quad = C.inner_product_quadrature(f, g, w, cfg)
            assert quad == pytest.approx(reduced, rel=1e-8, abs=1e-10)

    def test_cross_check_raises_on_mismatch(self, cfg, monkeypatch):
        # built-in weights never actually disagree, so fake a broken
        # quadrature route to confirm the guard fires
        monkeypatch.setattr(C, "inner_product_quadrature", lambda *a, **k: 123.0 + 0j)
        f = C.PolynomialFunction.of([0, 1])
        with pytest.raises(QuadratureMismatchError):
            C.inner_product(f, f, W.standard(0), cfg)


class TestReproducing:
    def test_constants_reproduce(self, cfg):
        out = C.reproducing_check(W.standard(0), C.PolynomialFunction.of([1.0]), 0.5, cfg)
        assert out.passed
        assert out.rhs == pytest.approx(1.0)

    def test_monomial_frozen(self, cfg):
        f = C.PolynomialFunction.of([0, 0, 0, 1])  # xi^3
        out = C.reproducing_check(W.standard(1), f, 0.5, cfg)
        assert out.passed
        assert out.rhs == pytest.approx(0.125)
        assert out.abs_err < 1e-8

    def test_monomials_exact_by_moment_reduction(self, cfg):
        # the reduction collapses exactly: w_k * (1/w_k) = 1 in rationals
        for w in (W.standard(0), W.star(W.standard(0), 2), W.gaussian(2)):
            for k in range(11):
                wk = W.moment_exact(w, k)
                assert wk * (1 / wk) == 1

    def test_quadrature_route_across_weights(self, cfg):
        for w, z in (
            (W.standard(0), 0.5),
            (W.standard(1), 0.3 + 0.4j),
            (W.star(W.standard(0)), -0.45),
        ):
            for k in (0, 4, 10):
                f = C.PolynomialFunction.of([0.0] * k + [1.0])
                out = C.reproducing_check(w, f, z, cfg)
                assert out.passed, out.name

    def test_random_polynomial_double_star(self, cfg):
        rng = random.Random(3)
        f = C.random_polynomial(rng, 8)
        out = C.reproducing_check(W.star(W.standard(0), 2), f, 0.3 + 0.4j, cfg)
        assert out.passed
        assert out.rel_err < 1e-8


class TestLittlewoodPaley:
    def test_constants(self, cfg):
        one = C.PolynomialFunction.of([1])
        out = C.littlewood_paley_check(W.standard(0), one, one, cfg)
        assert out.passed
        assert out.lhs == pytest.approx(1.0)  # total mass

    def test_linear_frozen(self, cfg):
        zeta = C.PolynomialFunction.of([0, 1])
        out = C.littlewood_paley_check(W.standard(0), zeta, zeta, cfg)
        assert out.passed
        assert out.lhs == pytest.approx(0.5)
        assert out.rhs == pytest.approx(0.5)

    def test_exact_rational_random(self):
        rng = random.Random(17)
        w = W.star(W.standard(1))
        for _ in range(3):
            f = C.random_rational_coefficients(rng, 8)
            g = C.random_rational_coefficients(rng, 8)
            lhs, rhs = C.littlewood_paley_exact(w, f, g)
            assert lhs == rhs  # exact equality of Fractions

    def test_quadrature_star_moments_route(self, cfg):
        rng = random.Random(29)
        f = C.random_polynomial(rng, 6)
        g = C.random_polynomial(rng, 6)
        out = C.littlewood_paley_check(
            W.standard(0), f, g, cfg, tolerance=1e-8, quadrature_star_moments=True
        )
        assert out.passed

    def test_float_route_tight(self, cfg):
        rng = random.Random(31)
        f = C.random_polynomial(rng, 8)
        g = C.random_polynomial(rng, 8)
        out = C.littlewood_paley_check(W.star(W.standard(1)), f, g, cfg)
        assert out.rel_err <= 1e-10


class TestSharpness:
    def test_squared_norm_is_diagonal_standard(self, cfg):
        out = C.sharpness_check(W.standard(0), 0.6, 4.0, cfg)
        assert out.passed
        # diagonal = (1 - 0.36)^(-2)
        assert out.rhs == pytest.approx(0.64**-2, rel=1e-10)

    def test_point_norm_frozen(self, cfg):
        assert K.point_evaluation_norm(W.standard(0), 0.6, 4.0, cfg) == pytest.approx(
            0.64**-0.5, rel=1e-12
        )

    def test_star_weight_inside_zero_free_region(self, cfg):
        out = C.sharpness_check(W.star(W.standard(0)), 0.3, 3.0, cfg)
        assert out.passed

    def test_star_weight_beyond_flip_raises(self, cfg):
        with pytest.raises(KernelHasZeroError):
            C.sharpness_check(W.star(W.standard(0)), 0.75, 3.0, cfg)

    def test_holder_bound_random_suite(self, cfg):
        rng = random.Random(41)
        for w, z, p in (
            (W.standard(0), 0.55 + 0.1j, 3.0),
            (W.standard(1), -0.4 + 0.25j, 1.5),
        ):
            bound_factor = K.point_evaluation_norm(w, z, p, cfg)
            for _ in range(5):
                f = C.random_polynomial(rng, 8)
                norm = C._pnorm_quadrature(f, w, p, cfg)
                assert abs(complex(f.value(complex(z)))) <= bound_factor * norm * (1 + 1e-8)


class TestHardyRatio:
    def test_constant_function(self, cfg):
        one = C.PolynomialFunction.of([1])
        for big_r in (0.5, 0.9):
            assert C.hardy_ratio(one, 2.0, big_r, -1.0, cfg) == pytest.approx(1.0, rel=1e-10)

    def test_borderline_exponent_frozen_values(self, cfg):
        f = C.PolynomialFunction.of([0, 1])
        for big_r in (0.9, 0.99, 0.999):
            got = C.hardy_ratio(f, 2.0, big_r, -1.0, cfg)
            assert got == pytest.approx(hardy_ratio_closed(big_r), rel=1e-6)

    def test_monotone_toward_boundary_mean(self, cfg):
        f = C.PolynomialFunction.of([0, 1])
        values = [C.hardy_ratio(f, 2.0, r, -1.0, cfg) for r in (0.9, 0.99, 0.999)]
        assert values[0] < values[1] < values[2] < 1.0

    def test_integrable_exponent_recovers_normalized_norm(self, cfg):
        # eta = 1: the ratio tends to the normalized squared norm, 1/2 for f = z
        f = C.PolynomialFunction.of([0, 1])
        got = C.hardy_ratio(f, 2.0, 0.999, 0.0, cfg)
        assert got == pytest.approx(0.5, abs=2e-3)


class TestSuite:
    def test_run_suite_all_pass(self, cfg):
        outcomes = C.run_suite(seed=7, cfg=cfg)
        failures = [o for o in outcomes if not o.passed and not o.informational]
        assert failures == []
        assert any(o.informational for o in outcomes)

    def test_outcome_pass_rule(self):
        near_zero = C.CheckOutcome.compare("x", 1e-14, 0.0, tolerance=1e-12)
        assert near_zero.passed  # absolute rule against a zero target
        relative = C.CheckOutcome.compare("y", 1.0 + 1e-6, 1.0, tolerance=1e-8)
        assert not relative.passed
