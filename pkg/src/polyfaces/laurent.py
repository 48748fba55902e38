"""Laurent polynomials in one small parameter ``e`` with rational coefficients."""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import ParseError, PreconditionError

Number = Union[Fraction, float]
INF = math.inf


@dataclass(frozen=True)
class Laurent:
    """Finite sum of c * e^k; ``terms`` holds (k, c) pairs sorted by k, no zero coefficients."""

    terms: tuple[tuple[int, Fraction], ...] = ()

    @classmethod
    def from_dict(cls, d: dict[int, Fraction]) -> Laurent:
        return cls(tuple(sorted((k, Fraction(c)) for k, c in d.items() if c)))

    @classmethod
    def const(cls, c) -> Laurent:
        return cls.from_dict({0: Fraction(c)})

    @classmethod
    def monomial(cls, c, k: int) -> Laurent:
        return cls.from_dict({k: Fraction(c)})

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.terms)

    def __add__(self, other: Laurent) -> Laurent:
        d = self.as_dict()
        for k, c in other.terms:
            d[k] = d.get(k, Fraction(0)) + c
        return Laurent.from_dict(d)

    def __neg__(self) -> Laurent:
        return Laurent(tuple((k, -c) for k, c in self.terms))

    def __sub__(self, other: Laurent) -> Laurent:
        return self + (-other)

    def __mul__(self, other: Laurent) -> Laurent:
        d: dict[int, Fraction] = {}
        for k1, c1 in self.terms:
            for k2, c2 in other.terms:
                d[k1 + k2] = d.get(k1 + k2, Fraction(0)) + c1 * c2
        return Laurent.from_dict(d)

    def scale(self, c) -> Laurent:
        return Laurent.from_dict({k: v * Fraction(c) for k, v in self.terms})

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def valuation(self) -> int:
        if not self.terms:
            raise PreconditionError("the zero polynomial has no lowest term")
        return self.terms[0][0]

    @property
    def leading(self) -> Fraction:
        """Coefficient of the lowest power, which dominates as e -> 0+."""
        if not self.terms:
            raise PreconditionError("the zero polynomial has no lowest term")
        return self.terms[0][1]

    def at_zero(self) -> Fraction:
        """Value at e = 0; requires no negative powers."""
        if self.terms and self.terms[0][0] < 0:
            raise PreconditionError(f"{self} is unbounded as e -> 0")
        return self.as_dict().get(0, Fraction(0))

    def __call__(self, e) -> Number:
        return sum((c * e**k for k, c in self.terms), Fraction(0) if isinstance(e, Fraction) else 0.0)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k, c in self.terms:
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = str(a)
            else:
                mono = "e" if k == 1 else f"e^{k}"
                body = mono if a == 1 else f"{a}*{mono}"
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s


def ratio_limit(num: Laurent, den: Laurent) -> Fraction | float:
    """lim num/den as e -> 0+; math.inf when the ratio blows up to +infinity."""
    if den.is_zero():
        raise PreconditionError("denominator vanishes identically")
    if num.is_zero():
        return Fraction(0)
    vn, vd = num.valuation, den.valuation
    if vn > vd:
        return Fraction(0)
    if vn == vd:
        return num.leading / den.leading
    if num.leading / den.leading < 0:
        raise PreconditionError("ratio tends to -infinity")
    return INF


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:\.\d+)?(?:/\d+)?)|(?P<e>e)|(?P<op>[-+*^,()]))")


class _PathParser:
    def __init__(self, text: str):
        self.text = text
        self.toks: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ParseError("unexpected character", text, pos)
            kind = m.lastgroup or ""
            start = m.start(kind)
            self.toks.append((kind, m.group(kind), start))
            pos = m.end()
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.toks[self.i] if self.i < len(self.toks) else ("end", "", len(self.text))

    def take(self) -> tuple[str, str, int]:
        t = self.peek()
        self.i += 1
        return t

    def polys(self) -> list[Laurent]:
        out = [self.poly()]
        while self.peek()[1] == ",":
            self.take()
            out.append(self.poly())
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {val!r}", self.text, pos)
        return out

    def poly(self) -> Laurent:
        acc = Laurent()
        sign = 1
        kind, val, pos = self.peek()
        if val in "+-" and kind == "op":
            self.take()
            sign = -1 if val == "-" else 1
        acc = acc + self.term().scale(sign)
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            _, val, _ = self.take()
            acc = acc + self.term().scale(-1 if val == "-" else 1)
        return acc

    def term(self) -> Laurent:
        kind, val, pos = self.peek()
        coef = Fraction(1)
        saw = False
        if kind == "num":
            self.take()
            coef = Fraction(val)
            saw = True
            if self.peek()[1] == "*":
                self.take()
                if self.peek()[0] != "e":
                    raise ParseError("expected 'e' after '*'", self.text, self.peek()[2])
        if self.peek()[0] == "e":
            self.take()
            k = 1
            if self.peek()[1] == "^":
                self.take()
                neg = False
                if self.peek()[1] == "-":
                    self.take()
                    neg = True
                kk, kv, kp = self.take()
                if kk != "num" or not kv.isdigit():
                    raise ParseError("expected an integer exponent", self.text, kp)
                k = -int(kv) if neg else int(kv)
            return Laurent.monomial(coef, k)
        if not saw:
            raise ParseError("expected a number or 'e'", self.text, pos)
        return Laurent.const(coef)


def parse_path(text: str) -> list[Laurent]:
    """Parse ``"e^2, e, 1-e, 1-e^2"`` style lists of Laurent polynomials."""
    if not text.strip():
        return []
    return _PathParser(text).polys()


def format_path(polys: list[Laurent]) -> str:
    return ", ".join(str(p) for p in polys)
