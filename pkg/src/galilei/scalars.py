"""Exact Gaussian-rational scalars.

Every number in this package is a ``GRat``: a + b*i with arbitrary-precision
rational a, b.  There is no floating point anywhere; equality is exact.
"""

from __future__ import annotations

from fractions import Fraction

_RatLike = (int, Fraction)


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


class GRat:
    """Gaussian rational a + b*i, immutable and hashable.

    ``Fraction`` keeps both parts in lowest terms with positive denominator,
    which makes the representation canonical.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _frac(re))
        object.__setattr__(self, "im", _frac(im))

    def __setattr__(self, name, value):
        raise AttributeError("GRat is immutable")

    # -- ring / field structure -------------------------------------------

    def __add__(self, other):
        if not isinstance(other, (GRat, int, Fraction)):
            return NotImplemented
        other = as_grat(other)
        return GRat(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GRat(-self.re, -self.im)

    def __sub__(self, other):
        if not isinstance(other, (GRat, int, Fraction)):
            return NotImplemented
        return self + (-as_grat(other))

    def __rsub__(self, other):
        if not isinstance(other, (GRat, int, Fraction)):
            return NotImplemented
        return as_grat(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, (GRat, int, Fraction)):
            return NotImplemented
        other = as_grat(other)
        return GRat(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def inverse(self) -> "GRat":
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise ZeroDivisionError("division by zero GRat")
        return GRat(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * as_grat(other).inverse()

    def __rtruediv__(self, other):
        return as_grat(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("integer powers only")
        if k < 0:
            return self.inverse() ** (-k)
        out, base = ONE, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "GRat":
        return GRat(self.re, -self.im)

    # -- predicates --------------------------------------------------------

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_rational(self) -> bool:
        return self.im == 0

    def __eq__(self, other):
        try:
            other = as_grat(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    # -- text form ----------------------------------------------------------
    # "a/b" and "a/b+c/d*i", no spaces (External Interfaces).

    def __str__(self):
        if self.im == 0:
            return _fstr(self.re)
        if self.re == 0:
            return f"{_fstr(self.im)}*i"
        sign = "+" if self.im > 0 else "-"
        return f"{_fstr(self.re)}{sign}{_fstr(abs(self.im))}*i"

    def __repr__(self):
        return f"GRat({self})"


def _fstr(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def as_grat(x) -> GRat:
    if isinstance(x, GRat):
        return x
    if isinstance(x, _RatLike):
        return GRat(x)
    raise TypeError(f"cannot coerce {x!r} to GRat")


def parse_grat(text: str) -> GRat:
    """Parse the scalar text form: "a/b", "a/b+c/d*i", "i", "-i", "2*i"."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty scalar")
    # split into real and imaginary chunks at a +/- that is not leading
    chunks = []
    start = 0
    for k in range(1, len(s)):
        if s[k] in "+-" and s[k - 1] not in "+-/*":
            chunks.append(s[start:k])
            start = k
    chunks.append(s[start:])
    re = Fraction(0)
    im = Fraction(0)
    for c in chunks:
        if c in ("i", "+i"):
            im += 1
        elif c == "-i":
            im -= 1
        elif c.endswith("*i"):
            im += Fraction(c[:-2])
        elif c.endswith("i"):
            im += Fraction(c[:-1])
        else:
            re += Fraction(c)
    return GRat(re, im)


ZERO = GRat(0)
ONE = GRat(1)
I = GRat(0, 1)
