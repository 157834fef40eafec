"""Exact Gaussian rationals, the coefficient field Q(i)."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational


class Scalar:
    """``re + im*i`` with ``re``, ``im`` exact fractions."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, Scalar):
            re, im = re.re, re.im + Fraction(im)
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, key, value):
        raise AttributeError("Scalar is immutable")

    @staticmethod
    def coerce(x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Rational)):
            return Scalar(x)
        if isinstance(x, complex):
            raise TypeError("floating-point complex numbers are not exact; build a Scalar")
        if isinstance(x, str):
            return Scalar.parse(x)
        raise TypeError(f"cannot convert {type(x).__name__} to Scalar")

    @staticmethod
    def parse(text: str) -> "Scalar":
        """Inverse of ``str``: accepts ``3``, ``-1/2``, ``2/3i``, ``1/2+1/3i``, ``i``."""
        s = text.replace(" ", "")
        if not s.endswith("i"):
            return Scalar(Fraction(s))
        body = s[:-1]
        cut = max(body.rfind("+"), body.rfind("-"))
        re_part, im_part = (body[:cut], body[cut:]) if cut > 0 else ("0", body)
        if im_part in ("", "+"):
            im_part = "1"
        elif im_part == "-":
            im_part = "-1"
        return Scalar(Fraction(re_part), Fraction(im_part))

    @staticmethod
    def _operand(x):
        try:
            return Scalar.coerce(x)
        except TypeError:
            return None

    def __add__(self, other):
        other = Scalar._operand(other)
        if other is None:
            return NotImplemented
        return Scalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.re, -self.im)

    def __sub__(self, other):
        other = Scalar._operand(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return Scalar.coerce(other) - self

    def __mul__(self, other):
        o = Scalar._operand(other)
        if o is None:
            return NotImplemented
        return Scalar(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = Scalar.coerce(other)
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero scalar")
        return self * Scalar(o.re / n, -o.im / n)

    def conjugate(self) -> "Scalar":
        return Scalar(self.re, -self.im)

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im)) if self.im else hash(self.re)

    def __str__(self):
        if not self.im:
            return str(self.re)
        im = "" if self.im == 1 else "-" if self.im == -1 else str(self.im)
        if not self.re:
            return f"{im}i"
        sign = "" if im.startswith("-") else "+"
        return f"{self.re}{sign}{im}i"

    def __repr__(self):
        return f"Scalar({str(self)!r})"


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)
