"""Smith normal form over the chart rings K[t], K[1/t], K[t, 1/t]."""
from __future__ import annotations

from dataclasses import dataclass

from .matrix import pcopy, peye
from .poly import POLY_T, Laurent, Ring

__all__ = ["SmithForm", "smith_normal_form"]


@dataclass(frozen=True)
class SmithForm:
    """``U @ M @ V == D`` with U, V unimodular; ``Uinv``/``Vinv`` are their inverses.

    ``invariants`` are the normalised nonzero diagonal entries d_1 | d_2 | ...
    """

    U: list
    D: list
    V: list
    Uinv: list
    Vinv: list
    invariants: tuple
    ring: Ring

    @property
    def rank(self) -> int:
        return len(self.invariants)


def smith_normal_form(M, ring: Ring = POLY_T, ncols: int | None = None) -> SmithForm:
    """Exact Smith normal form of an m x n matrix over a Euclidean chart ring.

    The input entries must lie in ``ring``. Empty matrices are allowed; pass
    ``ncols`` when ``M`` has no rows.
    """
    A = pcopy(M)
    m = len(A)
    n = len(A[0]) if m else (ncols or 0)
    U, Ui = peye(m), peye(m)
    V, Vi = peye(n), peye(n)
    norm = ring.norm
    dm = ring.divmod

    def swap_rows(i, j):
        if i != j:
            A[i], A[j] = A[j], A[i]
            U[i], U[j] = U[j], U[i]
            for row in Ui:
                row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        if i != j:
            for row in A:
                row[i], row[j] = row[j], row[i]
            for row in V:
                row[i], row[j] = row[j], row[i]
            Vi[i], Vi[j] = Vi[j], Vi[i]

    def row_addmul(i, k, q):
        # row_i += q * row_k
        A[i] = [a + q * b if b.coeffs else a for a, b in zip(A[i], A[k])]
        U[i] = [a + q * b if b.coeffs else a for a, b in zip(U[i], U[k])]
        for row in Ui:  # col_k -= q * col_i
            if row[i].coeffs:
                row[k] = row[k] - q * row[i]

    def col_addmul(j, k, q):
        # col_j += q * col_k
        for row in A:
            if row[k].coeffs:
                row[j] = row[j] + q * row[k]
        for row in V:
            if row[k].coeffs:
                row[j] = row[j] + q * row[k]
        Vi[k] = [a - q * b if b.coeffs else a for a, b in zip(Vi[k], Vi[j])]

    invariants = []
    for k in range(min(m, n)):
        while True:
            best = None
            for i in range(k, m):
                for j in range(k, n):
                    e = A[i][j]
                    if e.coeffs:
                        nv = norm(e)
                        if best is None or nv < best[0]:
                            best = (nv, i, j)
                            if nv == 0:
                                break
                if best is not None and best[0] == 0:
                    break
            if best is None:
                break
            _, pi, pj = best
            swap_rows(k, pi)
            swap_cols(k, pj)
            piv = A[k][k]
            dirty = False
            for i in range(k + 1, m):
                if A[i][k].coeffs:
                    q, r = dm(A[i][k], piv)
                    row_addmul(i, k, -q)
                    if r.coeffs:
                        dirty = True
            for j in range(k + 1, n):
                if A[k][j].coeffs:
                    q, r = dm(A[k][j], piv)
                    col_addmul(j, k, -q)
                    if r.coeffs:
                        dirty = True
            if dirty:
                continue
            bad = None
            for i in range(k + 1, m):
                for j in range(k + 1, n):
                    if A[i][j].coeffs and dm(A[i][j], piv)[1].coeffs:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is not None:
                row_addmul(k, bad, Laurent.const(1))
                continue
            break
        if k >= m or k >= n or not A[k][k].coeffs:
            break
        u = ring.unit_part(A[k][k])
        if u != Laurent.const(1):
            ui = u.inverse()
            A[k] = [a * ui for a in A[k]]
            U[k] = [a * ui for a in U[k]]
            for row in Ui:
                row[k] = row[k] * u
        invariants.append(A[k][k])
    return SmithForm(U=U, D=A, V=V, Uinv=Ui, Vinv=Vi, invariants=tuple(invariants), ring=ring)
