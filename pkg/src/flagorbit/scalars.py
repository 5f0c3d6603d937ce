"""Exact scalars: ``Fraction`` for Q and ``GaussianRational`` for Q(i).

Integers and Fractions mix freely with Gaussian rationals. A Gaussian value
with zero imaginary part compares and hashes equal to the matching Fraction.
"""

from fractions import Fraction
from numbers import Rational

from .errors import ParseError


class GaussianRational:
    """a + b i with a, b rational."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @staticmethod
    def _coerce(x):
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Rational)):
            return GaussianRational(x, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        num = self * o.conjugate()
        return GaussianRational(num.re / n, num.im / n)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def norm(self):
        """a^2 + b^2, zero exactly when the scalar is zero."""
        return self.re * self.re + self.im * self.im

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({self.re!s}, {self.im!s})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


def is_gaussian(x):
    return isinstance(x, GaussianRational) and x.im != 0


def real_part(x):
    return x.re if isinstance(x, GaussianRational) else Fraction(x)


def imag_part(x):
    return x.im if isinstance(x, GaussianRational) else Fraction(0)


def format_rational(x):
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rational(token):
    """Accept ints and the strings "p" or "p/q"."""
    if isinstance(token, bool):
        raise ParseError(f"not a rational: {token!r}")
    if isinstance(token, int):
        return Fraction(token)
    if not isinstance(token, str):
        raise ParseError(f"not a rational: {token!r}")
    try:
        # Fraction also accepts decimals and exponents; the format does not.
        if any(ch in token for ch in ".eE_ "):
            raise ValueError(token)
        return Fraction(token)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational: {token!r}") from exc


def format_scalar(x, gaussian=False):
    if gaussian:
        return {"re": format_rational(real_part(x)), "im": format_rational(imag_part(x))}
    return format_rational(real_part(x))


def parse_scalar(token):
    if isinstance(token, dict):
        if set(token) - {"re", "im"}:
            raise ParseError(f"unexpected keys in Gaussian scalar: {sorted(token)}")
        return GaussianRational(parse_rational(token.get("re", "0")),
                                parse_rational(token.get("im", "0")))
    return parse_rational(token)
