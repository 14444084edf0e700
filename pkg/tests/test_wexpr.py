from __future__ import annotations

from fractions import Fraction

import pytest

from bergmanzeros.errors import WeightExprError
from bergmanzeros.wexpr import GaussExpr, StarExpr, StdExpr, parse_weight


class TestGrammar:
    def test_standard(self):
        expr = parse_weight("std:1/2")
        assert expr == StdExpr(Fraction(1, 2))
        assert expr.to_weight().kind == "standard"

    def test_decimal_becomes_exact_rational(self):
        assert parse_weight("std:0.25") == StdExpr(Fraction(1, 4))
        assert parse_weight("gauss:2.0") == GaussExpr(Fraction(2))

    def test_star_depth_syntax(self):
        expr = parse_weight("star^2(std:1/2)")
        assert isinstance(expr, StarExpr)
        assert expr.depth == 2
        assert expr.inner == StdExpr(Fraction(1, 2))
        w = expr.to_weight()
        assert w.kind == "star_iterate" and w.depth == 2

    def test_star_of_gaussian_is_plane_domain(self):
        w = parse_weight("star(gauss:2.0)").to_weight()
        assert w.domain == "plane"
        assert w.depth == 1

    def test_nested_stars_normalize(self):
        expr = parse_weight("star(star(std:0))")
        assert expr == StarExpr(StdExpr(Fraction(0)), 2)
        assert expr.canonical() == "star^2(std:0)"

    def test_negative_alpha_allowed_in_range(self):
        assert parse_weight("std:-1/2") == StdExpr(Fraction(-1, 2))


class TestCanonicalRoundTrip:
    @pytest.mark.parametrize(
        "text",
        [
            "std:0",
            "std:-1/2",
            "std:7/3",
            "gauss:2",
            "gauss:1/3",
            "star(std:0)",
            "star^3(std:1/2)",
            "star^2(gauss:5)",
        ],
    )
    def test_round_trip(self, text):
        expr = parse_weight(text)
        assert parse_weight(expr.canonical()) == expr
        assert parse_weight(expr.canonical()).canonical() == expr.canonical()


class TestErrors:
    def test_alpha_out_of_range(self):
        with pytest.raises(WeightExprError, match="alpha out of range"):
            parse_weight("std:-1")

    def test_gamma_out_of_range(self):
        with pytest.raises(WeightExprError, match="gamma out of range"):
            parse_weight("gauss:0")

    def test_syntax_error_carries_offset(self):
        with pytest.raises(WeightExprError) as exc:
            parse_weight("star(std:0")
        assert exc.value.offset == 10
        assert "')'" in exc.value.expected

    def test_unknown_head(self):
        with pytest.raises(WeightExprError) as exc:
            parse_weight("weird:1")
        assert exc.value.offset == 0

    def test_trailing_garbage(self):
        with pytest.raises(WeightExprError, match="end of input"):
            parse_weight("std:1 extra")

    def test_missing_number(self):
        with pytest.raises(WeightExprError, match="number"):
            parse_weight("std:")

    def test_zero_denominator(self):
        with pytest.raises(WeightExprError, match="denominator"):
            parse_weight("std:1/0")
