"""Birkhoff (Grothendieck) splitting of bundles given by a Laurent transition matrix."""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import InputError
from ..exactalg import matrix as mx
from ..exactalg.poly import LAURENT, Laurent, mono
from .core import SplitBundle, sort_permutation


@dataclass(frozen=True)
class TransitionBundle:
    """A rank-r bundle glued from two trivialisations: ``g = T f``.

    ``f`` are U_0 coefficients (over K[t]) and ``g`` U_inf coefficients (over
    K[1/t]); ``T`` is invertible over K[t, 1/t].
    """

    T: tuple

    def __init__(self, T):
        object.__setattr__(self, "T", tuple(tuple(r) for r in T))

    @property
    def rank(self) -> int:
        return len(self.T)

    def matrix(self):
        return [list(r) for r in self.T]

    @classmethod
    def of(cls, bundle: SplitBundle) -> "TransitionBundle":
        return cls(bundle.chart_transition())

    def to_json(self):
        from ..serialize import laurent_matrix_to_json

        return {"rank": self.rank, "T": laurent_matrix_to_json(self.matrix(), self.rank, self.rank)}


@dataclass(frozen=True)
class BirkhoffSplitting:
    """``T == B @ diag(t**-d) @ A`` with A over K[t], B over K[1/t], both unimodular.

    ``Ainv`` is the inverse of ``A``; its columns express the split U_0 frame in
    the original U_0 coordinates.
    """

    degrees: tuple
    A: list
    B: list
    Ainv: list

    @property
    def bundle(self) -> SplitBundle:
        return SplitBundle(self.degrees)

    def diagonal(self):
        return mx.pdiag([mono(-d) for d in self.degrees])


def _top_exponent(col):
    return max(e.high for e in col if e.coeffs)


def birkhoff_split(T) -> BirkhoffSplitting:
    """Split a bundle presented by an invertible Laurent matrix.

    Column reduction over K[t]: while the leading (highest t-power) coefficient
    vectors of the columns are dependent, replace the column of largest top
    exponent in the dependency by the K[t]-combination that cancels its top
    term. The sum of column top exponents strictly drops and is bounded below
    by the exponent of ``det T``, so this terminates.
    """
    if isinstance(T, TransitionBundle):
        T = T.matrix()
    X = mx.pcopy(T)
    r = len(X)
    if any(len(row) != r for row in X):
        raise InputError("not a vector bundle presentation: transition must be square")
    if r == 0:
        return BirkhoffSplitting(degrees=(), A=[], B=[], Ainv=[])
    det = mx.pdet(X, LAURENT)
    if not det.is_monomial():
        raise InputError("not a vector bundle presentation: determinant is not a unit of K[t, 1/t]")
    A = mx.peye(r)
    Ainv = mx.peye(r)
    while True:
        cols = [[X[i][j] for i in range(r)] for j in range(r)]
        tops = [_top_exponent(c) for c in cols]
        lead = [[cols[j][i].coeff(tops[j]) for j in range(r)] for i in range(r)]
        null = mx.nullspace(lead, r)
        if not null:
            break
        alpha = null[0]
        support = [j for j in range(r) if alpha[j]]
        j0 = max(support, key=lambda j: (tops[j], -j))
        a0 = alpha[j0]
        shifts = {j: tops[j0] - tops[j] for j in support}
        # X: col_j0 <- sum_j alpha_j t^shift_j col_j
        for i in range(r):
            acc = Laurent()
            for j in support:
                if X[i][j].coeffs:
                    acc = acc + X[i][j].shift(shifts[j]) * alpha[j]
            X[i][j0] = acc
        # Ainv <- Ainv E (same column operation)
        for i in range(r):
            acc = Laurent()
            for j in support:
                if Ainv[i][j].coeffs:
                    acc = acc + Ainv[i][j].shift(shifts[j]) * alpha[j]
            Ainv[i][j0] = acc
        # A <- E^-1 A
        inv0 = 1 / a0
        row0 = [e * inv0 for e in A[j0]]
        for j in support:
            if j == j0:
                continue
            c = alpha[j] * inv0
            A[j] = [a - b.shift(shifts[j]) * c for a, b in zip(A[j], A[j0])]
        A[j0] = row0
    degrees = [-e for e in tops]
    pos = sort_permutation(degrees)
    order = sorted(range(r), key=lambda j: pos[j])
    X = [[X[i][j] for j in order] for i in range(r)]
    Ainv = [[Ainv[i][j] for j in order] for i in range(r)]
    A = [A[j] for j in order]
    degrees = [degrees[j] for j in order]
    B = [[X[i][j].shift(degrees[j]) for j in range(r)] for i in range(r)]
    return BirkhoffSplitting(degrees=tuple(degrees), A=A, B=B, Ainv=Ainv)
