"""Exact scalars: arithmetic in the number field Q(i, sqrt(2)).

Every quantity in the engine lives in this field.  The imaginary unit is
forced by the N=2 structure constants, sqrt(2) by the fermionic zero mode
and by the factor 2**(-wt) acting on half-integer weights in the order-two
twisting operator.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from .errors import DivisionByZero

RationalLike = Union[int, Fraction]

_F0 = Fraction(0)
_F1 = Fraction(1)


def parse_rational(text: str) -> Fraction:
    """Parse a decimal-free fraction string such as '-3/4' or '2'."""
    text = text.strip()
    if "." in text or "e" in text or "E" in text:
        raise ValueError(f"not a decimal-free fraction string: {text!r}")
    return Fraction(text)


def format_rational(x: Fraction) -> str:
    return str(x)


class ExactScalar:
    """a + b*i + c*sqrt2 + d*i*sqrt2 with arbitrary-precision rational parts."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a: RationalLike = 0, b: RationalLike = 0,
                 c: RationalLike = 0, d: RationalLike = 0):
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))
        object.__setattr__(self, "c", Fraction(c))
        object.__setattr__(self, "d", Fraction(d))

    def __setattr__(self, name, value):
        raise AttributeError("ExactScalar is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def coerce(cls, x) -> "ExactScalar":
        if isinstance(x, ExactScalar):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to ExactScalar")

    # -- predicates ----------------------------------------------------

    def is_zero(self) -> bool:
        return not (self.a or self.b or self.c or self.d)

    def is_rational(self) -> bool:
        return not (self.b or self.c or self.d)

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.a

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- ring operations -----------------------------------------------

    def __add__(self, other):
        o = ExactScalar.coerce(other)
        return ExactScalar(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar(-self.a, -self.b, -self.c, -self.d)

    def __sub__(self, other):
        return self + (-ExactScalar.coerce(other))

    def __rsub__(self, other):
        return ExactScalar.coerce(other) + (-self)

    def __mul__(self, other):
        o = ExactScalar.coerce(other)
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = o.a, o.b, o.c, o.d
        return ExactScalar(
            a1 * a2 - b1 * b2 + 2 * (c1 * c2 - d1 * d2),
            a1 * b2 + b1 * a2 + 2 * (c1 * d2 + d1 * c2),
            a1 * c2 + c1 * a2 - b1 * d2 - d1 * b2,
            a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2,
        )

    __rmul__ = __mul__

    def inv(self) -> "ExactScalar":
        """Multiplicative inverse; exact via the two field conjugations."""
        if self.is_zero():
            raise DivisionByZero("inverse of zero in Q(i, sqrt2)")
        # y = self * conj_i(self) lies in Q(sqrt2): y = p + q*sqrt2.
        p = self.a * self.a + self.b * self.b + 2 * (self.c * self.c + self.d * self.d)
        q = 2 * (self.a * self.c + self.b * self.d)
        norm = p * p - 2 * q * q
        # inv = conj_i(self) * (p - q*sqrt2) / norm
        return self.conj_i() * ExactScalar(p / norm, 0, -q / norm, 0)

    def __truediv__(self, other):
        return self * ExactScalar.coerce(other).inv()

    def __rtruediv__(self, other):
        return ExactScalar.coerce(other) * self.inv()

    # -- field automorphisms --------------------------------------------

    def conj_i(self) -> "ExactScalar":
        """Galois conjugation i -> -i."""
        return ExactScalar(self.a, -self.b, self.c, -self.d)

    def conj_sqrt2(self) -> "ExactScalar":
        """Galois conjugation sqrt2 -> -sqrt2."""
        return ExactScalar(self.a, self.b, -self.c, -self.d)

    # -- comparisons and hashing -----------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ExactScalar(other)
        if not isinstance(other, ExactScalar):
            return NotImplemented
        return (self.a, self.b, self.c, self.d) == (other.a, other.b, other.c, other.d)

    def __hash__(self):
        return hash((self.a, self.b, self.c, self.d))

    # -- rendering -------------------------------------------------------

    def __repr__(self):
        if self.is_zero():
            return "0"
        parts = []
        for coeff, unit in ((self.a, ""), (self.b, "i"), (self.c, "sqrt2"), (self.d, "i*sqrt2")):
            if not coeff:
                continue
            if unit == "":
                parts.append(str(coeff))
            elif coeff == 1:
                parts.append(unit)
            elif coeff == -1:
                parts.append(f"-{unit}")
            else:
                parts.append(f"{coeff}*{unit}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "a": format_rational(self.a),
            "b": format_rational(self.b),
            "c": format_rational(self.c),
            "d": format_rational(self.d),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ExactScalar":
        return cls(*(parse_rational(obj[k]) for k in ("a", "b", "c", "d")))


ZERO = ExactScalar(0)
ONE = ExactScalar(1)
I = ExactScalar(0, 1)
SQRT2 = ExactScalar(0, 0, 1)


def pow_two(e: Fraction) -> ExactScalar:
    """2**e for e in (1/2)Z, as an element of Q(sqrt2)."""
    e = Fraction(e)
    if e.denominator == 1:
        return ExactScalar(Fraction(2) ** e.numerator)
    if e.denominator == 2:
        return SQRT2 * ExactScalar(Fraction(2) ** int(e - Fraction(1, 2)))
    raise ValueError(f"2**{e} is outside Q(i, sqrt2)")
