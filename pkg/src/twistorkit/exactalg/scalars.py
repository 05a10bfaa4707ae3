"""Exact scalars: rationals (``fractions.Fraction``) and Gaussian rationals.

Rationals are plain :class:`~fractions.Fraction` objects. The Gaussian
extension Q(i) is :class:`Gaussian`; arithmetic between the two mixes freely
and any Gaussian result with zero imaginary part collapses back to a
``Fraction`` so that equality and hashing stay canonical.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from ..errors import InputError

__all__ = ["Gaussian", "I", "gauss", "conj", "is_real", "re_part", "im_part", "scalar", "to_json", "from_json"]


def _q(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


class Gaussian:
    """Element re + im*i of Q(i) with im != 0 (use :func:`gauss` to build)."""

    __slots__ = ("re", "im")

    def __init__(self, re, im):
        self.re = _q(re)
        self.im = _q(im)

    # construction helpers -------------------------------------------------
    @staticmethod
    def _lift(x):
        if isinstance(x, Gaussian):
            return x.re, x.im
        if isinstance(x, (int, Fraction)):
            return _q(x), Fraction(0)
        return None

    def __add__(self, other):
        o = Gaussian._lift(other)
        if o is None:
            return NotImplemented
        return gauss(self.re + o[0], self.im + o[1])

    __radd__ = __add__

    def __sub__(self, other):
        o = Gaussian._lift(other)
        if o is None:
            return NotImplemented
        return gauss(self.re - o[0], self.im - o[1])

    def __rsub__(self, other):
        o = Gaussian._lift(other)
        if o is None:
            return NotImplemented
        return gauss(o[0] - self.re, o[1] - self.im)

    def __mul__(self, other):
        o = Gaussian._lift(other)
        if o is None:
            return NotImplemented
        a, b = o
        return gauss(self.re * a - self.im * b, self.re * b + self.im * a)

    __rmul__ = __mul__

    def _inv(self):
        n = self.re * self.re + self.im * self.im
        return gauss(self.re / n, -self.im / n)

    def __truediv__(self, other):
        o = Gaussian._lift(other)
        if o is None:
            return NotImplemented
        return self * gauss(*o)._inv() if o[1] else gauss(self.re / o[0], self.im / o[0])

    def __rtruediv__(self, other):
        o = Gaussian._lift(other)
        if o is None:
            return NotImplemented
        return gauss(*o) * self._inv()

    def __neg__(self):
        return Gaussian(-self.re, -self.im)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        base = self if n >= 0 else self._inv()
        out = Fraction(1)
        for _ in range(abs(n)):
            out = out * base
        return out

    def __pos__(self):
        return self

    def __eq__(self, other):
        o = Gaussian._lift(other)
        if o is None:
            return NotImplemented
        return self.re == o[0] and self.im == o[1]

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return True  # im != 0 by construction

    def conjugate(self):
        return Gaussian(self.re, -self.im)

    def __repr__(self):
        return f"Gaussian({self.re}, {self.im})"

    def __str__(self):
        sign = "+" if self.im >= 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


def gauss(re, im=0):
    """Build a Q(i) element; returns a ``Fraction`` when ``im == 0``."""
    im = _q(im)
    if im == 0:
        return _q(re)
    return Gaussian(re, im)


I = Gaussian(0, 1)


def conj(x):
    """Complex conjugation: identity on Q, ``im -> -im`` on Q(i)."""
    return x.conjugate() if isinstance(x, Gaussian) else x


def re_part(x) -> Fraction:
    return x.re if isinstance(x, Gaussian) else _q(x)


def im_part(x) -> Fraction:
    return x.im if isinstance(x, Gaussian) else Fraction(0)


def is_real(x) -> bool:
    return not isinstance(x, Gaussian)


def scalar(x):
    """Coerce ints/strings/Fractions into an exact scalar."""
    if isinstance(x, (Fraction, Gaussian)):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return _parse_rational(x)
    raise TypeError(f"cannot interpret {x!r} as an exact scalar")


def _parse_rational(s: str) -> Fraction:
    s = s.strip()
    if "." in s or "e" in s.lower():
        raise InputError(f"decimal notation not allowed in exact scalar: {s!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad rational {s!r}") from exc


def to_json(x):
    """``"p/q"`` for rationals, ``{"re": .., "im": ..}`` for Gaussian values."""
    if isinstance(x, Gaussian):
        return {"re": str(x.re), "im": str(x.im)}
    return str(_q(x))


def from_json(obj):
    if isinstance(obj, dict):
        if set(obj) != {"re", "im"}:
            raise InputError(f"Gaussian scalar needs exactly 're' and 'im': {obj!r}")
        return gauss(_parse_rational(str(obj["re"])), _parse_rational(str(obj["im"])))
    if isinstance(obj, bool) or not isinstance(obj, (str, int)):
        raise InputError(f"bad scalar {obj!r}")
    return scalar(obj)
