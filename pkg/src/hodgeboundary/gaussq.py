"""Exact Gaussian rationals: elements a + b*i of Q(i)."""

from fractions import Fraction
from numbers import Rational

from gmpy2 import mpq

_MPQ = type(mpq(0))
_RATIONAL_TYPES = (int, Fraction, Rational, _MPQ)


def _q(x):
    if type(x) is _MPQ:
        return x
    if isinstance(x, (int, Fraction)):
        return mpq(x)
    if isinstance(x, str):
        return mpq(x)
    if isinstance(x, Rational):
        return mpq(x.numerator, x.denominator)
    raise TypeError(f"not a rational: {x!r}")


class GaussQ:
    """An element of Q(i) with exact rational real and imaginary parts.

    Mixing with a Python float or complex promotes the result to ``complex``.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _q(re)
        self.im = _q(im)

    @classmethod
    def _make(cls, re, im):
        out = object.__new__(cls)
        out.re = re
        out.im = im
        return out

    @classmethod
    def coerce(cls, x):
        if type(x) is GaussQ:
            return x
        if isinstance(x, _RATIONAL_TYPES):
            return cls(x, 0)
        if isinstance(x, GaussQ):
            return x
        return None

    def conjugate(self):
        return _make(self.re, -self.im)

    @property
    def real(self):
        return GaussQ(self.re, 0)

    @property
    def imag(self):
        return GaussQ(self.im, 0)

    def norm2(self):
        """|x|^2 as an exact rational."""
        return self.re * self.re + self.im * self.im

    def is_real(self):
        return self.im == 0

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __eq__(self, other):
        o = GaussQ.coerce(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) == other
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __neg__(self):
        return _make(-self.re, -self.im)

    def __pos__(self):
        return self

    def __add__(self, other):
        o = other if type(other) is GaussQ else GaussQ.coerce(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) + other
            return NotImplemented
        return _make(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = other if type(other) is GaussQ else GaussQ.coerce(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) - other
            return NotImplemented
        return _make(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = GaussQ.coerce(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return other - complex(self)
            return NotImplemented
        return _make(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = other if type(other) is GaussQ else GaussQ.coerce(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) * other
            return NotImplemented
        return _make(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = other if type(other) is GaussQ else GaussQ.coerce(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return complex(self) / other
            return NotImplemented
        d = o.re * o.re + o.im * o.im
        if d == 0:
            raise ZeroDivisionError("GaussQ division by zero")
        return _make((self.re * o.re + self.im * o.im) / d, (self.im * o.re - self.re * o.im) / d)

    def __rtruediv__(self, other):
        o = GaussQ.coerce(other)
        if o is None:
            if isinstance(other, (float, complex)):
                return other / complex(self)
            return NotImplemented
        return o / self

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return (GaussQ(1) / self) ** (-k)
        out = GaussQ(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __repr__(self):
        return f"GaussQ({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


_make = GaussQ._make

I = GaussQ(0, 1)
ZERO = GaussQ(0)
ONE = GaussQ(1)


def gq(re=0, im=0):
    """Shorthand constructor; accepts ints, Fractions, mpq or 'p/q' strings."""
    return GaussQ(re, im)
