"""Exact scalar arithmetic over the Gaussian rationals Q(i).

GaussianRational is the coefficient field for every exact computation in
this package: state coefficients, matrix entries, and polynomial
coefficients.  Components are `fractions.Fraction` values, so both parts
are automatically kept in lowest terms with positive denominator and
equality is exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

Rational = Union[int, Fraction]

_FRACTION_LIMIT = 10**6  # denominator bound used when rationalizing floats


class GaussianRational:
    """An exact complex scalar a + b*i with rational a and b."""

    __slots__ = ("re", "im")

    def __init__(self, re: Rational = 0, im: Rational = 0):
        object.__setattr__(self, "re", re if type(re) is Fraction else Fraction(re))
        object.__setattr__(self, "im", im if type(im) is Fraction else Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def _make(cls, re: Fraction, im: Fraction) -> "GaussianRational":
        # trusted constructor: arguments must already be Fractions
        self = object.__new__(cls)
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)
        return self

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational._make(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational._make(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self):
        return GaussianRational._make(-self.re, -self.im)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:  # common real-only fast path
            return GaussianRational._make(a * c, b)
        return GaussianRational._make(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        """Multiplicative inverse; raises ZeroDivisionError on zero."""
        n = self.re * self.re + self.im * self.im
        if not n:
            raise ZeroDivisionError("inverse of zero GaussianRational")
        return GaussianRational._make(self.re / n, -self.im / n)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._make(self.re, -self.im)

    def abs2(self) -> Fraction:
        """Squared modulus, exact."""
        return self.re * self.re + self.im * self.im

    # -- predicates / conversions ----------------------------------------

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def to_complex(self) -> complex:
        """Nearest double-precision value componentwise.

        Raises OverflowError when a component exceeds the float range.
        """
        return complex(float(self.re), float(self.im))

    __complex__ = to_complex

    # -- text form --------------------------------------------------------

    def __str__(self):
        if not self.im:
            return str(self.re)
        imag = "i" if abs(self.im) == 1 else f"{abs(self.im)}*i"
        if not self.re:
            return imag if self.im > 0 else "-" + imag
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{imag}"

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"

    @classmethod
    def parse(cls, text: str) -> "GaussianRational":
        """Parse the textual forms "p/q" and "p/q+r/s*i" (whitespace allowed).

        Also accepts bare integers, "i", "-i" and pure-imaginary forms such
        as "2/3*i".  Zero denominators and malformed input raise ValueError.
        """
        s = "".join(text.split())
        if not s:
            raise ValueError("empty scalar literal")
        try:
            if s.endswith("i"):
                body = s[:-1]
                # split the real part from the imaginary part at the last
                # +/- that is not a leading sign
                cut = max(body.rfind("+", 1), body.rfind("-", 1))
                real_tok, imag_tok = (body[:cut], body[cut:]) if cut > 0 else ("", body)
                if imag_tok.endswith("*"):
                    imag_tok = imag_tok[:-1]
                if imag_tok in ("", "+"):
                    im = Fraction(1)
                elif imag_tok == "-":
                    im = Fraction(-1)
                else:
                    im = Fraction(imag_tok)
                re_part = Fraction(real_tok) if real_tok else Fraction(0)
                return cls._make(re_part, im)
            return cls._make(Fraction(s), Fraction(0))
        except ZeroDivisionError:
            raise ValueError(f"zero denominator in scalar literal: {text!r}") from None
        except ValueError:
            raise ValueError(f"malformed scalar literal: {text!r}") from None


def _coerce(value):
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)):
        return GaussianRational(value)
    return NotImplemented


def as_scalar(value) -> GaussianRational:
    """Coerce an int, Fraction or GaussianRational; reject anything else."""
    out = _coerce(value)
    if out is NotImplemented:
        raise TypeError(f"cannot interpret {value!r} as a GaussianRational")
    return out


def rationalize(z: complex, limit: int = _FRACTION_LIMIT) -> GaussianRational:
    """Best GaussianRational approximation with bounded denominators."""
    return GaussianRational(
        Fraction(z.real).limit_denominator(limit),
        Fraction(z.imag).limit_denominator(limit),
    )


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)
