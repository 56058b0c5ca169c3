"""Exact Gaussian rationals a + b*i with a, b in Q."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

import gmpy2

mpq = gmpy2.mpq
_ZERO = mpq(0)
_ONE = mpq(1)


def _to_mpq(value) -> "gmpy2.mpq":
    if isinstance(value, type(_ZERO)):
        return value
    if isinstance(value, (int, Fraction)) or isinstance(value, Rational):
        return mpq(value)
    if isinstance(value, str):
        return mpq(Fraction(value.strip()))
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def rational_str(value) -> str:
    """Canonical ``p/q`` string for a rational (denominator always present)."""
    value = _to_mpq(value)
    return f"{value.numerator}/{value.denominator}"


class GaussianRational:
    """Element of Q(i). Immutable; all arithmetic is exact."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussianRational):
            if im:
                raise TypeError("imaginary part given twice")
            object.__setattr__(self, "re", re.re)
            object.__setattr__(self, "im", re.im)
            return
        object.__setattr__(self, "re", _to_mpq(re))
        object.__setattr__(self, "im", _to_mpq(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def _raw(cls, re, im) -> "GaussianRational":
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = as_scalar(other)
        return GaussianRational._raw(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = as_scalar(other)
        return GaussianRational._raw(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return as_scalar(other) - self

    def __neg__(self):
        return GaussianRational._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def __mul__(self, other):
        other = as_scalar(other)
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return GaussianRational._raw(a * c, _ZERO)
        return GaussianRational._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = as_scalar(other)
        c, d = other.re, other.im
        if not c and not d:
            raise ZeroDivisionError("division by zero in Q(i)")
        if not d:
            return GaussianRational._raw(self.re / c, self.im / c)
        norm = c * c + d * d
        a, b = self.re, self.im
        return GaussianRational._raw((a * c + b * d) / norm, (b * c - a * d) / norm)

    def __rtruediv__(self, other):
        return as_scalar(other) / self

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            raise TypeError("only integer powers are supported")
        if exponent < 0:
            return (ONE / self) ** (-exponent)
        result, base = ONE, self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._raw(self.re, -self.im)

    # -- comparisons ------------------------------------------------------
    def __eq__(self, other):
        try:
            other = as_scalar(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_real(self) -> bool:
        return not self.im

    def is_integral(self) -> bool:
        return self.re.denominator == 1 and self.im.denominator == 1

    def denominator(self) -> int:
        return int(gmpy2.lcm(self.re.denominator, self.im.denominator))

    # -- presentation -----------------------------------------------------
    def __repr__(self):
        return f"GaussianRational({self})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}*i)"

    def to_json(self) -> dict:
        return {"re": rational_str(self.re), "im": rational_str(self.im)}

    @classmethod
    def from_json(cls, data: dict) -> "GaussianRational":
        return cls(data.get("re", "0"), data.get("im", "0"))


def as_scalar(value) -> GaussianRational:
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, complex):
        raise TypeError("floating-point complex values are not exact")
    if isinstance(value, float):
        raise TypeError("floating-point values are not exact")
    return GaussianRational(value)


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)
HALF = GaussianRational(Fraction(1, 2))


def i_power(k: int) -> GaussianRational:
    """i**k for any integer k."""
    return (ONE, I, -ONE, -I)[k % 4]
