"""Dense matrices as lists of row lists.

Two families of helpers live here: ring-agnostic operations on matrices of
:class:`~twistorkit.exactalg.poly.Laurent` entries, and exact Gaussian
elimination over the scalar field (``Fraction`` or Q(i)).
"""
from __future__ import annotations

from fractions import Fraction

from .poly import ONE, ZERO, Laurent, Ring

# ---------------------------------------------------------------------------
# polynomial (Laurent-entry) matrices


def pzeros(m: int, n: int):
    return [[ZERO] * n for _ in range(m)]


def peye(n: int):
    out = pzeros(n, n)
    for i in range(n):
        out[i][i] = ONE
    return out


def pdiag(entries):
    n = len(entries)
    out = pzeros(n, n)
    for i, e in enumerate(entries):
        out[i][i] = e
    return out


def pmul(A, B, inner: int | None = None, ncols: int | None = None):
    """Matrix product; pass ``inner``/``ncols`` when a factor has no rows."""
    m = len(A)
    k = len(B) if inner is None else inner
    n = ncols if ncols is not None else (len(B[0]) if B else 0)
    out = []
    for i in range(m):
        row = A[i]
        out_row = []
        for j in range(n):
            acc = ZERO
            for l in range(k):
                a = row[l]
                if a.coeffs:
                    b = B[l][j]
                    if b.coeffs:
                        acc = acc + a * b
            out_row.append(acc)
        out.append(out_row)
    return out


def padd(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def psub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def pneg(A):
    return [[-a for a in row] for row in A]


def ptranspose(A, ncols: int | None = None):
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


def pcols(A, idx, nrows: int | None = None):
    rows = len(A) if nrows is None else nrows
    return [[A[i][j] for j in idx] for i in range(rows)]


def prows(A, idx):
    return [list(A[i]) for i in idx]


def pis_zero(A) -> bool:
    return all(not e.coeffs for row in A for e in row)


def pmap(A, fn):
    return [[fn(e) for e in row] for row in A]


def pflip(A):
    return pmap(A, Laurent.flip)


def pconst(rows):
    """Lift a scalar matrix to constant Laurent entries."""
    return [[Laurent.const(c) for c in row] for row in rows]


def pcopy(A):
    return [list(row) for row in A]


def phstack(blocks, nrows: int):
    out = [[] for _ in range(nrows)]
    for B in blocks:
        for i in range(nrows):
            out[i].extend(B[i])
    return out


def pvstack(blocks):
    out = []
    for B in blocks:
        out.extend(list(r) for r in B)
    return out


def pdet(A, ring: Ring) -> Laurent:
    """Determinant by fraction-free (Bareiss) elimination with exact ring division."""
    n = len(A)
    if n == 0:
        return ONE
    M = pcopy(A)
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if not M[k][k].coeffs:
            for i in range(k + 1, n):
                if M[i][k].coeffs:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return ZERO
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = M[i][j] * M[k][k] - M[i][k] * M[k][j]
                M[i][j] = ring.exact_div(num, prev) if prev != ONE else num
        prev = M[k][k]
    d = M[n - 1][n - 1]
    return -d if sign < 0 else d


def pinverse(A, ring: Ring) -> list:
    """Inverse of a matrix whose determinant is a unit of ``ring`` (adjugate formula)."""
    n = len(A)
    det = pdet(A, ring)
    if not ring.is_unit(det):
        raise ZeroDivisionError("matrix is not invertible over the ring")
    dinv = det.inverse()
    out = pzeros(n, n)
    for i in range(n):
        for j in range(n):
            minor = [[A[r][c] for c in range(n) if c != i] for r in range(n) if r != j]
            val = pdet(minor, ring) * dinv
            out[i][j] = val if (i + j) % 2 == 0 else -val
    return out


# ---------------------------------------------------------------------------
# scalar matrices over the base field


def zeros(m: int, n: int):
    return [[Fraction(0)] * n for _ in range(m)]


def eye(n: int):
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = Fraction(1)
    return out


def mul(A, B, inner: int | None = None):
    k = len(B) if inner is None else inner
    n = len(B[0]) if B else 0
    return [[sum((A[i][l] * B[l][j] for l in range(k)), Fraction(0)) for j in range(n)] for i in range(len(A))]


def transpose(A, ncols: int | None = None):
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(c) for c in zip(*A)]


def rref(A):
    """Reduced row echelon form; returns (R, pivot_columns)."""
    M = [[Fraction(x) if isinstance(x, int) else x for x in r] for r in A]
    m = len(M)
    n = len(M[0]) if M else 0
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(m):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return M, pivots


def rank(A) -> int:
    return len(rref(A)[1]) if A and A[0] else 0


def nullspace(A, ncols: int | None = None):
    """Basis of the right kernel, returned as a list of column vectors."""
    n = ncols if ncols is not None else (len(A[0]) if A else 0)
    if not A:
        return [[Fraction(1) if i == j else Fraction(0) for i in range(n)] for j in range(n)]
    R, piv = rref(A)
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, pc in enumerate(piv):
            v[pc] = -R[row][f]
        basis.append(v)
    return basis


def inverse(A):
    n = len(A)
    aug = [list(A[i]) + [Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    R, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R]


def solve(A, b):
    """One solution x of A x = b (b a column list), or None if inconsistent."""
    m = len(A)
    n = len(A[0]) if A else 0
    aug = [list(A[i]) + [b[i]] for i in range(m)]
    R, piv = rref(aug)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for row, pc in enumerate(piv):
        x[pc] = R[row][n]
    return x


def det(A):
    n = len(A)
    M = [list(r) for r in A]
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            M[c], M[p] = M[p], M[c]
            d = -d
        d = d * M[c][c]
        inv = 1 / M[c][c]
        for i in range(c + 1, n):
            if M[i][c]:
                f = M[i][c] * inv
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return d


def column_space(vectors, dim: int):
    """Row-reduced basis (as vectors) of the span of the given vectors."""
    if not vectors:
        return []
    R, piv = rref(vectors)
    return [R[i] for i in range(len(piv))]


def span_rank(vectors) -> int:
    return len(column_space(vectors, 0)) if vectors else 0


def intersect(U, V, dim: int):
    """Basis of span(U) ∩ span(V) for lists of vectors in K^dim."""
    if not U or not V:
        return []
    # solve sum a_i u_i = sum b_j v_j
    M = [[U[i][r] for i in range(len(U))] + [-V[j][r] for j in range(len(V))] for r in range(dim)]
    out = []
    for sol in nullspace(M, len(U) + len(V)):
        vec = [sum((sol[i] * U[i][r] for i in range(len(U))), Fraction(0)) for r in range(dim)]
        out.append(vec)
    return column_space(out, dim)


def contains(U, v) -> bool:
    return span_rank(U + [v]) == span_rank(U)
