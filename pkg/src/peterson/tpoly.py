"""Univariate polynomials in the equivariant parameter ``t`` over the rationals."""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from .errors import ParseError


def frac(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"not an exact rational: {x!r}") from exc
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def format_rational(q: Fraction) -> str:
    return str(q)


class TPoly:
    """Immutable polynomial ``c0 + c1 t + c2 t^2 + ...`` with Fraction coefficients.

    Coefficients are stored lowest degree first with trailing zeros stripped,
    so the zero polynomial has an empty coefficient tuple.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("TPoly is immutable")

    @classmethod
    def const(cls, c) -> TPoly:
        return cls((c,))

    @classmethod
    def monomial(cls, c, k: int) -> TPoly:
        return cls((0,) * k + (c,))

    @classmethod
    def t(cls) -> TPoly:
        return cls((0, 1))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def coeff(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __call__(self, t):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def is_monomial(self) -> bool:
        return sum(1 for c in self.coeffs if c) <= 1

    def nonneg(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    @staticmethod
    def _lift(other):
        if isinstance(other, TPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return TPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return TPoly(self.coeff(k) + other.coeff(k) for k in range(n))

    __radd__ = __add__

    def __neg__(self):
        return TPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TPoly(c * other for c in self.coeffs)
        if not isinstance(other, TPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return TPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return TPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = TPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def div_monomial(self, c, k: int):
        """Divide by ``c t^k``; returns ``(quotient, remainder)``."""
        c = frac(c)
        rem = TPoly(self.coeffs[:k])
        quo = TPoly(x / c for x in self.coeffs[k:])
        return quo, rem

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"TPoly({[str(c) for c in self.coeffs]})"

    def __str__(self):
        return self.format()

    def format(self) -> str:
        """Render as ``c0 + c1 t + c2 t^2`` with exact coefficients, e.g. ``4/3 + 2t``."""
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mag = abs(c)
            if k == 0:
                body = format_rational(mag)
            else:
                var = "t" if k == 1 else f"t^{k}"
                body = var if mag == 1 else f"{format_rational(mag)}{var}"
            parts.append(("-" if c < 0 else "+", body))
        sign, body = parts[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data) -> TPoly:
        return cls(frac(c) for c in data)


ZERO = TPoly()
ONE = TPoly.const(1)
T = TPoly.t()
