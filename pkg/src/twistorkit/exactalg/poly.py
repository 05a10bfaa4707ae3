"""Laurent polynomials in one variable ``t`` and the three Euclidean rings we use.

A single element type, :class:`Laurent`, covers K[t], K[1/t] and K[t, 1/t];
the ring objects :data:`POLY_T`, :data:`POLY_S` and :data:`LAURENT` supply the
Euclidean structure (norm, division with remainder, unit normalisation).
``s = 1/t`` is the coordinate at infinity.
"""
from __future__ import annotations

from fractions import Fraction

from .scalars import conj

__all__ = ["Laurent", "ZERO", "ONE", "T", "S", "mono", "Ring", "POLY_T", "POLY_S", "LAURENT"]


class Laurent:
    """Finitely supported sum ``sum_k coeffs[k] * t**(low + k)``.

    Immutable. Stored trimmed: ``coeffs`` has nonzero first and last entries,
    and the zero element is ``low == 0, coeffs == ()``.
    """

    __slots__ = ("low", "coeffs")

    def __init__(self, low: int = 0, coeffs=()):
        cs = list(coeffs)
        start = 0
        while start < len(cs) and not cs[start]:
            start += 1
        end = len(cs)
        while end > start and not cs[end - 1]:
            end -= 1
        if start == end:
            self.low, self.coeffs = 0, ()
        else:
            self.low = low + start
            self.coeffs = tuple(cs[start:end])

    @classmethod
    def _raw(cls, low, coeffs):
        obj = object.__new__(cls)
        obj.low = low
        obj.coeffs = coeffs
        return obj

    @classmethod
    def const(cls, c):
        return cls._raw(0, (c,)) if c else ZERO

    @classmethod
    def from_dict(cls, terms: dict) -> "Laurent":
        terms = {e: c for e, c in terms.items() if c}
        if not terms:
            return ZERO
        lo, hi = min(terms), max(terms)
        return cls(lo, [terms.get(e, 0) for e in range(lo, hi + 1)])

    # inspection ------------------------------------------------------------
    def __bool__(self):
        return bool(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def high(self) -> int:
        """Largest exponent (only meaningful for nonzero elements)."""
        return self.low + len(self.coeffs) - 1

    def span(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, e: int):
        k = e - self.low
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def terms(self):
        return {self.low + k: c for k, c in enumerate(self.coeffs) if c}

    def top(self):
        return self.coeffs[-1]

    def bottom(self):
        return self.coeffs[0]

    def is_monomial(self) -> bool:
        return len(self.coeffs) == 1

    def is_poly_t(self) -> bool:
        return not self.coeffs or self.low >= 0

    def is_poly_s(self) -> bool:
        return not self.coeffs or self.high <= 0

    # arithmetic ------------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Laurent):
            other = Laurent.const(other)
        if not other.coeffs:
            return self
        if not self.coeffs:
            return other
        lo = min(self.low, other.low)
        hi = max(self.high, other.high)
        out = [0] * (hi - lo + 1)
        for k, c in enumerate(self.coeffs):
            out[self.low - lo + k] = c
        for k, c in enumerate(other.coeffs):
            out[other.low - lo + k] += c
        return Laurent(lo, out)

    __radd__ = __add__

    def __neg__(self):
        return Laurent._raw(self.low, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if not isinstance(other, Laurent):
            other = Laurent.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Laurent):
            if not other:
                return ZERO
            return Laurent._raw(self.low, tuple(c * other for c in self.coeffs))
        if not self.coeffs or not other.coeffs:
            return ZERO
        a, b = self.coeffs, other.coeffs
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return Laurent(self.low + other.low, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_monomial():
                raise ValueError("only monomials are invertible")
            return Laurent._raw(-self.low * (-n), ((1 / self.coeffs[0]) ** (-n),))
        out = ONE
        for _ in range(n):
            out = out * self
        return out

    def shift(self, k: int) -> "Laurent":
        """Multiply by ``t**k``."""
        if not self.coeffs:
            return self
        return Laurent._raw(self.low + k, self.coeffs)

    def scale(self, c) -> "Laurent":
        return self * c

    def flip(self) -> "Laurent":
        """Substitute ``t -> 1/t``."""
        if not self.coeffs:
            return self
        return Laurent._raw(-self.high, tuple(reversed(self.coeffs)))

    def conj(self) -> "Laurent":
        return Laurent._raw(self.low, tuple(conj(c) for c in self.coeffs))

    def inverse(self) -> "Laurent":
        if not self.is_monomial():
            raise ZeroDivisionError(f"{self} is not a unit of K[t, 1/t]")
        return Laurent._raw(-self.low, (1 / self.coeffs[0],))

    def __call__(self, x):
        """Evaluate at a nonzero scalar (or any scalar if no negative powers)."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        if self.low:
            acc = acc * (x ** self.low if self.low > 0 else (1 / x) ** (-self.low))
        return acc

    def __eq__(self, other):
        if not isinstance(other, Laurent):
            if isinstance(other, (int, Fraction)) or hasattr(other, "conjugate"):
                other = Laurent.const(other)
            else:
                return NotImplemented
        return self.low == other.low and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.low, self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for e, c in sorted(self.terms().items(), reverse=True):
            if e == 0:
                parts.append(f"{c}")
            elif c == 1:
                parts.append(f"t^{e}")
            else:
                parts.append(f"({c})*t^{e}")
        return " + ".join(parts)


ZERO = Laurent._raw(0, ())
ONE = Laurent._raw(0, (Fraction(1),))
T = Laurent._raw(1, (Fraction(1),))
S = Laurent._raw(-1, (Fraction(1),))


def mono(e: int, c=1) -> Laurent:
    """The monomial ``c * t**e``."""
    return Laurent._raw(e, (Fraction(c) if isinstance(c, int) else c,)) if c else ZERO


def _divmod_t(a: Laurent, b: Laurent):
    """Division in K[t]; both arguments must be polynomials in t."""
    if not b.coeffs:
        raise ZeroDivisionError("polynomial division by zero")
    if not a.coeffs or a.high < b.high:
        return ZERO, a
    # dense ascending arrays from exponent 0
    r = [0] * a.low + list(a.coeffs)
    bc = [0] * b.low + list(b.coeffs)
    db = len(bc) - 1
    lead = bc[-1]
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k]
        if not c:
            continue
        f = c / lead
        q[k - db] = f
        for j in range(db + 1):
            if bc[j]:
                r[k - db + j] -= f * bc[j]
    return Laurent(0, q), Laurent(0, r[:db])


class Ring:
    """Euclidean structure on :class:`Laurent` elements for one chart ring."""

    def __init__(self, name: str):
        self.name = name

    def __repr__(self):
        return f"Ring({self.name})"

    def contains(self, a: Laurent) -> bool:
        raise NotImplementedError

    def norm(self, a: Laurent) -> int:
        raise NotImplementedError

    def divmod(self, a: Laurent, b: Laurent):
        raise NotImplementedError

    def unit_part(self, a: Laurent) -> Laurent:
        """The unit ``u`` such that ``a / u`` is the normalised associate."""
        raise NotImplementedError

    def is_unit(self, a: Laurent) -> bool:
        return bool(a.coeffs) and self.norm(a) == 0

    def normalize(self, a: Laurent) -> Laurent:
        if not a.coeffs:
            return a
        return a * self.unit_part(a).inverse()

    def divides(self, b: Laurent, a: Laurent) -> bool:
        if not b.coeffs:
            return not a.coeffs
        return not self.divmod(a, b)[1].coeffs

    def exact_div(self, a: Laurent, b: Laurent) -> Laurent:
        q, r = self.divmod(a, b)
        if r.coeffs:
            raise ArithmeticError(f"{b} does not divide {a} in {self.name}")
        return q

    def gcd(self, a: Laurent, b: Laurent) -> Laurent:
        while b.coeffs:
            a, b = b, self.divmod(a, b)[1]
        return self.normalize(a)


class _PolyT(Ring):
    def contains(self, a):
        return a.is_poly_t()

    def norm(self, a):
        return a.high

    def divmod(self, a, b):
        return _divmod_t(a, b)

    def unit_part(self, a):
        return Laurent.const(a.top())


class _PolyS(Ring):
    def contains(self, a):
        return a.is_poly_s()

    def norm(self, a):
        return -a.low

    def divmod(self, a, b):
        q, r = _divmod_t(a.flip(), b.flip())
        return q.flip(), r.flip()

    def unit_part(self, a):
        return Laurent.const(a.bottom())


class _Laurent(Ring):
    def contains(self, a):
        return True

    def norm(self, a):
        return a.span() if a.coeffs else 0

    def divmod(self, a, b):
        if not b.coeffs:
            raise ZeroDivisionError("division by zero")
        if not a.coeffs:
            return ZERO, ZERO
        q, r = _divmod_t(a.shift(-a.low), b.shift(-b.low))
        return q.shift(a.low - b.low), r.shift(a.low)

    def unit_part(self, a):
        return mono(a.high, a.top())


POLY_T = _PolyT("K[t]")
POLY_S = _PolyS("K[1/t]")
LAURENT = _Laurent("K[t,1/t]")
