"""Exact scalars: rationals (stand-in for the reals) and Gaussian rationals
(stand-in for the complex numbers).

Rationals are ``gmpy2.mpq``.  Gaussian rationals are :class:`Gaussian`, a pair
of ``mpq``.  A :class:`Field` object carries the tag and the handful of
operations generic code needs (zero, one, coercion, conjugation, JSON codec).
"""
from __future__ import annotations

from gmpy2 import mpq

__all__ = ["mpq", "Gaussian", "Field", "QQ", "QQI", "field_from_tag", "I", "fmt"]


def _q(x) -> mpq:
    if isinstance(x, str):
        return mpq(x.strip())
    return mpq(x)


class Gaussian:
    """A Gaussian rational ``re + im*i`` with exact ``mpq`` parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is type(mpq()) else _q(re)
        self.im = im if type(im) is type(mpq()) else _q(im)

    @staticmethod
    def _coerce(x):
        if isinstance(x, Gaussian):
            return x
        return Gaussian(x, 0)

    def __add__(self, other):
        if isinstance(other, Gaussian):
            return Gaussian(self.re + other.re, self.im + other.im)
        return Gaussian(self.re + other, self.im)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Gaussian):
            return Gaussian(self.re - other.re, self.im - other.im)
        return Gaussian(self.re - other, self.im)

    def __rsub__(self, other):
        return Gaussian(other - self.re, -self.im)

    def __neg__(self):
        return Gaussian(-self.re, -self.im)

    def __mul__(self, other):
        if isinstance(other, Gaussian):
            a, b, c, d = self.re, self.im, other.re, other.im
            return Gaussian(a * c - b * d, a * d + b * c)
        return Gaussian(self.re * other, self.im * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Gaussian):
            c, d = other.re, other.im
            n = c * c + d * d
            if not n:
                raise ZeroDivisionError("Gaussian division by zero")
            a, b = self.re, self.im
            return Gaussian((a * c + b * d) / n, (b * c - a * d) / n)
        return Gaussian(self.re / other, self.im / other)

    def __rtruediv__(self, other):
        return Gaussian(other, 0) / self

    def __eq__(self, other):
        if isinstance(other, Gaussian):
            return self.re == other.re and self.im == other.im
        try:
            return self.im == 0 and self.re == other
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def conjugate(self):
        return Gaussian(self.re, -self.im)

    def __repr__(self):
        if not self.im:
            return str(self.re)
        return f"({self.re}{'+' if self.im >= 0 else '-'}{abs(self.im)}i)"


I = Gaussian(0, 1)


class Field:
    """Exact base field: ``"Q"`` (rationals) or ``"Qi"`` (Gaussian rationals)."""

    def __init__(self, tag: str):
        if tag not in ("Q", "Qi"):
            raise ValueError(f"unknown field tag {tag!r}")
        self.tag = tag
        self.is_gaussian = tag == "Qi"
        self.zero = self(0)
        self.one = self(1)

    def __call__(self, x):
        """Coerce ``x`` (int, str, mpq, Fraction, Gaussian) into this field."""
        if self.is_gaussian:
            if isinstance(x, Gaussian):
                return x
            return Gaussian(x, 0)
        if isinstance(x, Gaussian):
            if x.im:
                raise ValueError(f"{x!r} is not rational")
            return x.re
        return _q(x)

    def conj(self, x):
        return x.conjugate() if self.is_gaussian else x

    def is_real(self, x) -> bool:
        return not self.is_gaussian or not x.im

    def re(self, x) -> mpq:
        return x.re if self.is_gaussian else x

    def im(self, x) -> mpq:
        return x.im if self.is_gaussian else mpq(0)

    def parse(self, obj):
        """Decode a JSON scalar: ``"p/q"``, an int, or ``{"re": .., "im": ..}``."""
        if isinstance(obj, dict):
            return self(Gaussian(obj.get("re", "0"), obj.get("im", "0")))
        if isinstance(obj, (list, tuple)) and len(obj) == 2:
            return self(Gaussian(obj[0], obj[1]))
        return self(obj)

    def dump(self, x):
        if self.is_gaussian and x.im:
            return {"re": str(x.re), "im": str(x.im)}
        return str(self.re(x))

    def __eq__(self, other):
        return isinstance(other, Field) and other.tag == self.tag

    def __hash__(self):
        return hash(self.tag)

    def __repr__(self):
        return f"Field({self.tag!r})"


QQ = Field("Q")
QQI = Field("Qi")


def field_from_tag(tag: str) -> Field:
    return QQI if tag == "Qi" else QQ if tag == "Q" else Field(tag)


def fmt(x) -> str:
    """Short human-readable form of a scalar."""
    return repr(x) if isinstance(x, Gaussian) else str(x)
