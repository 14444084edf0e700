"""Weight-expression mini-grammar.

    expr   :=  'std' ':' number
            |  'gauss' ':' number
            |  'star' ('^' integer)? '(' expr ')'
    number :=  '-'? digits ('.' digits)? | '-'? digits '/' digits

Numbers parse to exact rationals (decimals included), so expression
parameters flow losslessly into the exact-arithmetic paths.  Nested
stars normalize to a single depth-k iterate, and every expression
round-trips through its canonical string form.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import WeightExprError
from .weights import RadialWeight

__all__ = ["WeightExpr", "StdExpr", "GaussExpr", "StarExpr", "parse_weight"]

_NUMBER_RE = re.compile(r"-?\d+(?:\.\d+)?(?:/\d+)?")


class WeightExpr:
    """Base class for parsed weight expressions."""

    def canonical(self) -> str:
        raise NotImplementedError

    def to_weight(self) -> RadialWeight:
        raise NotImplementedError


def _render(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class StdExpr(WeightExpr):
    alpha: Fraction

    def canonical(self) -> str:
        return f"std:{_render(self.alpha)}"

    def to_weight(self) -> RadialWeight:
        return RadialWeight.standard(self.alpha)


@dataclass(frozen=True)
class GaussExpr(WeightExpr):
    gamma: Fraction

    def canonical(self) -> str:
        return f"gauss:{_render(self.gamma)}"

    def to_weight(self) -> RadialWeight:
        return RadialWeight.gaussian(self.gamma)


@dataclass(frozen=True)
class StarExpr(WeightExpr):
    inner: WeightExpr
    depth: int

    def __post_init__(self):
        if self.depth < 1:
            raise ValueError("star depth must be >= 1")
        if isinstance(self.inner, StarExpr):
            # normalize star^a(star^b(e)) -> star^(a+b)(e)
            object.__setattr__(self, "depth", self.depth + self.inner.depth)
            object.__setattr__(self, "inner", self.inner.inner)

    def canonical(self) -> str:
        inner = self.inner.canonical()
        return f"star({inner})" if self.depth == 1 else f"star^{self.depth}({inner})"

    def to_weight(self) -> RadialWeight:
        return RadialWeight.star_of(self.inner.to_weight(), self.depth)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, expected: tuple[str, ...]) -> WeightExprError:
        return WeightExprError(
            f"syntax error at offset {self.pos}: expected {' or '.join(expected)}",
            offset=self.pos,
            expected=expected,
        )

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def literal(self, token: str) -> None:
        self.skip_ws()
        if not self.text.startswith(token, self.pos):
            raise self.error((repr(token),))
        self.pos += len(token)

    def number(self) -> Fraction:
        self.skip_ws()
        m = _NUMBER_RE.match(self.text, self.pos)
        if not m:
            raise self.error(("number",))
        raw = m.group(0)
        self.pos = m.end()
        if "/" in raw:
            num, den = raw.split("/")
            if int(den) == 0:
                raise WeightExprError(
                    f"syntax error at offset {m.start()}: zero denominator",
                    offset=m.start(),
                    expected=("nonzero denominator",),
                )
            return Fraction(int(num), int(den))
        return Fraction(raw)

    def integer(self) -> int:
        self.skip_ws()
        m = re.compile(r"\d+").match(self.text, self.pos)
        if not m:
            raise self.error(("integer",))
        self.pos = m.end()
        return int(m.group(0))

    def expr(self) -> WeightExpr:
        self.skip_ws()
        start = self.pos
        if self.text.startswith("std", self.pos):
            self.pos += 3
            self.literal(":")
            value = self.number()
            if not value > -1:
                raise WeightExprError(
                    f"alpha out of range at offset {start}: need alpha > -1, got {value}",
                    offset=start,
                    expected=("alpha > -1",),
                )
            return StdExpr(value)
        if self.text.startswith("gauss", self.pos):
            self.pos += 5
            self.literal(":")
            value = self.number()
            if not value > 0:
                raise WeightExprError(
                    f"gamma out of range at offset {start}: need gamma > 0, got {value}",
                    offset=start,
                    expected=("gamma > 0",),
                )
            return GaussExpr(value)
        if self.text.startswith("star", self.pos):
            self.pos += 4
            depth = 1
            self.skip_ws()
            if self.pos < len(self.text) and self.text[self.pos] == "^":
                self.pos += 1
                depth = self.integer()
                if depth < 1:
                    raise WeightExprError(
                        f"syntax error at offset {self.pos}: star depth must be >= 1",
                        offset=self.pos,
                        expected=("integer >= 1",),
                    )
            self.literal("(")
            inner = self.expr()
            self.literal(")")
            return StarExpr(inner, depth)
        raise self.error(("'std'", "'gauss'", "'star'"))


def parse_weight(text: str) -> WeightExpr:
    """Parse an expression; errors carry the offset and expected tokens."""
    parser = _Parser(text)
    expr = parser.expr()
    parser.skip_ws()
    if parser.pos != len(text):
        raise parser.error(("end of input",))
    return expr
