"""Dimensions of framed moduli of mixed twistor structures with fixed graded ranks.

For ``Gr_n = O(n)^{b_n}`` on a range ``[j, k]`` the framed moduli scheme is an
iterated affine bundle: peeling off the lowest weight j adds the relative Ext^1
with every higher weight i, of dimension ``(i - j - 1) b_i b_j`` (Hom vanishes
because the weights are strictly larger). The stack divides by ``prod GL(b_n)``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .bundles import O, SplitBundle, ext1_basis, ext1_dim, hom_space
from .errors import InputError, TheoremViolation

__all__ = [
    "WeightVector", "framed_dim", "framed_dim_direct", "stack_dim", "formula_crosscheck",
    "CrosscheckReport", "extension_basis",
]


class WeightVector:
    """Ranks ``b_n`` on a contiguous range; zero entries inside the range are allowed."""

    def __init__(self, b: dict | None = None, start: int = 0, entries=None):
        if entries is not None:
            b = {start + k: v for k, v in enumerate(entries)}
        b = {int(k): v for k, v in (b or {}).items()}
        for k, v in b.items():
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise InputError(f"weight vector entry b_{k} must be a nonnegative integer")
        if not any(b.values()):
            raise InputError("weight vector needs at least one nonzero entry")
        lo, hi = min(b), max(b)
        self.b = {n: b.get(n, 0) for n in range(lo, hi + 1)}

    @property
    def lo(self):
        return min(self.b)

    @property
    def hi(self):
        return max(self.b)

    def tail(self):
        """The vector with the lowest weight removed (``None`` if nothing is left)."""
        rest = {n: v for n, v in self.b.items() if n > self.lo}
        return WeightVector(rest) if any(rest.values()) else None

    def __getitem__(self, n):
        return self.b.get(n, 0)

    def __repr__(self):
        return f"WeightVector({self.b})"

    def to_json(self):
        return {"b": {str(n): v for n, v in self.b.items()}}

    @classmethod
    def from_json(cls, obj):
        if not isinstance(obj, dict) or not isinstance(obj.get("b"), dict):
            raise InputError("weight-vector document needs a 'b' object")
        try:
            b = {int(k): v for k, v in obj["b"].items()}
        except ValueError as exc:
            raise InputError("weight-vector field 'b' keys must be integers") from exc
        return cls(b)


def framed_dim(b: WeightVector) -> int:
    """Recursion: peel off the lowest weight j, adding ``sum_{i>j} (i-j-1) b_i b_j``."""
    j = b.lo
    rest = b.tail()
    if rest is None:
        return 0
    step = sum((i - j - 1) * b[i] * b[j] for i in range(j + 1, b.hi + 1))
    return framed_dim(rest) + step


def framed_dim_direct(b: WeightVector) -> int:
    """Pairwise sum of ``dim Ext^1(O(i)^{b_i}, O(u)^{b_u})`` over ``u < i``, via the bundle engine."""
    total = 0
    for u in b.b:
        for i in b.b:
            if u < i and b[u] and b[i]:
                total += ext1_dim(O(i), O(u)) * b[i] * b[u]
    return total


def stack_dim(b: WeightVector) -> int:
    return framed_dim(b) - sum(v * v for v in b.b.values())


@dataclass(frozen=True)
class CrosscheckReport:
    closed_formula: int
    stack_dim: int

    @property
    def agree(self) -> bool:
        return self.closed_formula == self.stack_dim

    def to_json(self):
        return {"closed_formula": self.closed_formula, "stack_dim": self.stack_dim, "agree": self.agree}


def formula_crosscheck(b: WeightVector) -> CrosscheckReport:
    """Closed form ``sum_{u <= i} (i-u-1) b_i b_u``; the diagonal gives ``-b_i^2``."""
    closed = sum((i - u - 1) * b[i] * b[u] for i in b.b for u in b.b if u <= i)
    return CrosscheckReport(closed, stack_dim(b))


def extension_basis(tail: SplitBundle, n: int, b_n: int):
    """Basis of ``Ext^1(E', O(n)^{b_n})`` for a tail with all weights above n.

    ``Hom(E', O(n)^{b_n})`` is checked to vanish first.
    """
    if any(d <= n for d in tail.degrees):
        raise InputError(f"tail weights must all exceed {n}")
    target = O(*([n] * b_n))
    if hom_space(tail, target)[0]:
        raise TheoremViolation("Hom from the tail to the lowest weight does not vanish")
    return ext1_basis(tail, target)
