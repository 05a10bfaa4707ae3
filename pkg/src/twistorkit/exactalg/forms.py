"""Binary forms in (lambda, mu): the Hom spaces between line bundles on P^1.

Coefficient ``coeffs[k]`` multiplies ``lambda**k * mu**(d-k)``. The affine
coordinate at 0 is ``t = lambda/mu`` so that ``f(t, 1)`` is the chart-0
dehomogenisation and ``f(1, s)`` the chart-at-infinity one.
"""
from __future__ import annotations

from fractions import Fraction

from ..errors import InputError
from . import scalars
from .poly import POLY_T, Laurent

__all__ = ["BinaryForm", "form_gcd", "LAMBDA", "MU"]


class BinaryForm:
    """Homogeneous polynomial of a fixed degree ``d >= 0`` (zero allowed)."""

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree: int, coeffs):
        if degree < 0:
            raise InputError(f"binary form degree must be >= 0, got {degree}")
        cs = tuple(scalars.scalar(c) if isinstance(c, (int, str)) else c for c in coeffs)
        if len(cs) != degree + 1:
            raise InputError(f"degree {degree} form needs {degree + 1} coefficients, got {len(cs)}")
        self.degree = degree
        self.coeffs = cs

    @classmethod
    def zero(cls, degree: int) -> "BinaryForm":
        return cls(degree, [Fraction(0)] * (degree + 1))

    @classmethod
    def monomial(cls, degree: int, k: int, c=1) -> "BinaryForm":
        cs = [Fraction(0)] * (degree + 1)
        cs[k] = scalars.scalar(c) if isinstance(c, int) else c
        return cls(degree, cs)

    @classmethod
    def from_chart0(cls, p: Laurent, degree: int) -> "BinaryForm":
        """Homogenise ``p(t)`` to a form of the given degree (requires deg p <= degree)."""
        if p.coeffs and (p.low < 0 or p.high > degree):
            raise ValueError(f"{p} does not homogenise to degree {degree}")
        return cls(degree, [p.coeff(k) for k in range(degree + 1)])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def chart0(self) -> Laurent:
        """``f(t, 1)``."""
        return Laurent(0, self.coeffs)

    def chart_inf(self) -> Laurent:
        """``f(1, s)`` written in ``t = 1/s``: equals ``t**-d * f(t, 1)``."""
        return Laurent(-self.degree, self.coeffs)

    def __call__(self, lam, mu):
        acc = 0
        for k, c in enumerate(self.coeffs):
            if c:
                acc = acc + c * lam ** k * mu ** (self.degree - k)
        return acc

    def __add__(self, other):
        if other.degree != self.degree:
            raise ValueError("adding forms of different degrees")
        return BinaryForm(self.degree, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return BinaryForm(self.degree, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, BinaryForm):
            out = [Fraction(0)] * (self.degree + other.degree + 1)
            for i, a in enumerate(self.coeffs):
                if a:
                    for j, b in enumerate(other.coeffs):
                        if b:
                            out[i + j] += a * b
            return BinaryForm(self.degree + other.degree, out)
        return BinaryForm(self.degree, [c * other for c in self.coeffs])

    __rmul__ = __mul__

    def conj_coeffs(self) -> "BinaryForm":
        return BinaryForm(self.degree, [scalars.conj(c) for c in self.coeffs])

    def mu_order(self) -> int:
        """Multiplicity of the point at infinity (mu = 0) as a root."""
        for k in range(self.degree, -1, -1):
            if self.coeffs[k]:
                return self.degree - k
        raise ValueError("zero form has no root multiplicity")

    def monic(self) -> "BinaryForm":
        """Scale so that the coefficient of the highest lambda power present is 1."""
        for c in reversed(self.coeffs):
            if c:
                return self * (1 / c)
        return self

    def divides(self, other: "BinaryForm") -> bool:
        if self.is_zero():
            return other.is_zero()
        if other.is_zero():
            return True
        if other.mu_order() < self.mu_order():
            return False
        return POLY_T.divides(self.chart0(), other.chart0())

    def exact_div(self, other: "BinaryForm") -> "BinaryForm":
        q = POLY_T.exact_div(self.chart0(), other.chart0())
        return BinaryForm.from_chart0(q, self.degree - other.degree)

    def __eq__(self, other):
        if not isinstance(other, BinaryForm):
            return NotImplemented
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.degree, self.coeffs))

    def __repr__(self):
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mon = "*".join(x for x in (_pw("λ", k), _pw("μ", self.degree - k)) if x)
            if not mon:
                terms.append(str(c))
            elif c == 1:
                terms.append(mon)
            elif c == -1:
                terms.append("-" + mon)
            else:
                terms.append(f"({c})*{mon}")
        return " + ".join(terms) if terms else f"0[deg {self.degree}]"

    def to_json(self):
        return {"deg": self.degree, "coeffs": [scalars.to_json(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj) -> "BinaryForm":
        if not isinstance(obj, dict) or "deg" not in obj or "coeffs" not in obj:
            raise InputError(f"binary form needs 'deg' and 'coeffs': {obj!r}")
        deg = obj["deg"]
        if not isinstance(deg, int) or isinstance(deg, bool):
            raise InputError(f"form field 'deg' must be an integer: {deg!r}")
        if not isinstance(obj["coeffs"], list):
            raise InputError("form field 'coeffs' must be a list")
        return cls(deg, [scalars.from_json(c) for c in obj["coeffs"]])


def _pw(x, k):
    if k == 0:
        return ""
    return x if k == 1 else f"{x}^{k}"


LAMBDA = BinaryForm(1, [0, 1])
MU = BinaryForm(1, [1, 0])


def form_gcd(f: BinaryForm, g: BinaryForm) -> BinaryForm:
    """Monic generator of the gcd of two binary forms."""
    if f.is_zero() and g.is_zero():
        raise InputError("gcd undefined: both forms are zero")
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    at_inf = min(f.mu_order(), g.mu_order())
    p = POLY_T.gcd(f.chart0(), g.chart0())
    core = BinaryForm.from_chart0(p, p.high if p.coeffs else 0)
    mu_pow = BinaryForm.monomial(at_inf, 0) if at_inf else BinaryForm(0, [1])
    return (core * mu_pow).monic()


def forms_gcd(forms) -> BinaryForm:
    forms = [f for f in forms if not f.is_zero()]
    if not forms:
        raise InputError("gcd undefined: all forms are zero")
    out = forms[0].monic()
    for f in forms[1:]:
        out = form_gcd(out, f)
    return out

