"""Independent reference computations used to check the library.

Nothing here calls library algorithms: transition matrices are handled as plain
``{exponent: Fraction}`` dicts and all linear algebra is naive Gaussian
elimination over ``Fraction``.
"""
from fractions import Fraction


def rank(rows):
    M = [[Fraction(x) for x in r] for r in rows]
    rk, ncols = 0, (len(M[0]) if M else 0)
    for c in range(ncols):
        p = next((i for i in range(rk, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[rk], M[p] = M[p], M[rk]
        for i in range(len(M)):
            if i != rk and M[i][c] != 0:
                f = M[i][c] / M[rk][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[rk])]
        rk += 1
    return rk


def _entry_dicts(T):
    """Laurent matrix -> nested ``{exp: coeff}`` dicts."""
    return [[dict(e.terms()) if hasattr(e, "terms") else dict(e) for e in row] for row in T]


def _spread(T):
    exps = [e for row in T for d in row for e in d]
    return (min(exps), max(exps)) if exps else (0, 0)


def cech_h0_h1(T, window=None):
    """``(h0, h1)`` of the bundle glued by ``g = T f`` (f on U_0, g on U_inf).

    H^0 = {f in K[t]^r : T f in K[1/t]^r}. H^1 is the cokernel of
    ``K[t]^r + K[1/t]^r -> K[t, 1/t]^r``, (f, g) -> T f - g, computed in
    ``K[t, 1/t]^r / K[1/t]^r`` (positive exponents) and truncated high enough
    that everything above the window is already in the image.
    """
    T = _entry_dicts(T)
    r = len(T)
    lo, hi = _spread(T)
    M = window or 4 * (max(abs(lo), abs(hi)) + hi - lo + 1) + 8
    fexp = range(0, M + 1)
    # columns: f = t^a e_j; rows: positive part (exponents 1..M + hi) of T f in each component
    top = M + max(hi, 0)
    pos_rows = [(i, e) for i in range(r) for e in range(1, top + 1)]
    row_index = {x: k for k, x in enumerate(pos_rows)}
    cols = []
    for j in range(r):
        for a in fexp:
            col = [Fraction(0)] * len(pos_rows)
            for i in range(r):
                for e, c in T[i][j].items():
                    if e + a >= 1 and (i, e + a) in row_index:
                        col[row_index[(i, e + a)]] += c
            cols.append(col)
    # H^0: f with no positive part, inside the window
    rows_t = [list(x) for x in zip(*cols)] if cols else []
    h0 = len(cols) - rank(rows_t)
    # H^1 on exponents 1..K where K is low enough that higher exponents come from f
    K = M // 2
    keep = [k for k, (i, e) in enumerate(pos_rows) if e <= K]
    sub = [[col[k] for k in keep] for col in cols]
    h1 = len(keep) - rank(sub)
    return h0, h1


def line_bundle(n):
    """Transition of O(n): ``g = t^-n f``."""
    return [[{-n: Fraction(1)}]]


def ext1_oracle(i, j):
    """Ext^1(O(i), O(j)) = H^1(O(j - i)) by the two-chart computation."""
    return cech_h0_h1(line_bundle(j - i))[1]


def hom_oracle(i, j):
    return cech_h0_h1(line_bundle(j - i))[0]


# ---------------------------------------------------------------------------
# one-variable polynomials as coefficient lists (lowest degree first)


def trim(p):
    p = [Fraction(x) for x in p]
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_divmod(a, b):
    """Schoolbook long division."""
    a, b = trim(a), trim(b)
    if not b:
        raise ZeroDivisionError
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    while len(r) >= len(b) and r:
        k = len(r) - len(b)
        c = r[-1] / b[-1]
        q[k] = c
        for i, bi in enumerate(b):
            r[i + k] -= c * bi
        r = trim(r)
    return trim(q), r


def poly_gcd(a, b):
    """Monic gcd by Euclid."""
    a, b = trim(a), trim(b)
    while b:
        a, b = b, poly_divmod(a, b)[1]
    if not a:
        return []
    return [x / a[-1] for x in a]


def form_gcd_oracle(f, g):
    """gcd of binary forms given as ``(degree, coeffs)`` with ``coeffs[k]`` on ``lam^k mu^(d-k)``.

    The mu-power is ``min`` of the mu-orders; the rest is the gcd of the
    dehomogenised polynomials in lam. Returned monic in its top lam power,
    as ``(degree, coeffs)``.
    """
    def mu_order(c):
        # power of mu dividing the form: coefficients of lam^d, lam^(d-1), ... vanish
        d = len(c) - 1
        k = 0
        while k <= d and c[d - k] == 0:
            k += 1
        return k

    (df, cf), (dg, cg) = f, g
    if not any(cf):
        return dg, list(cg)
    if not any(cg):
        return df, list(cf)
    m = min(mu_order(cf), mu_order(cg))
    p = poly_gcd(cf, cg)
    deg = (len(p) - 1) + m
    coeffs = [Fraction(0)] * (deg + 1)
    for k, x in enumerate(p):
        coeffs[k] = x
    return deg, coeffs


def upper_class_is_coboundary(a, b, c, bound=8):
    """For ``T = [[t^-a, c], [0, t^-b]]`` (c a ``{exp: coeff}`` dict) decide by a
    bounded search over frame changes ``[[1, y], [0, 1]] T [[1, x], [0, 1]]``
    with x in K[t], y in K[1/t] of degree <= bound whether c can be cleared.

    The new corner is ``t^-a x + c + y t^-b``, so c is a coboundary iff
    ``-c`` lies in the span of ``t^(k - a)`` and ``t^(-k - b)`` for k >= 0.
    """
    gens = [k - a for k in range(bound + 1)] + [-k - b for k in range(bound + 1)]
    exps = sorted(set(gens) | set(c))
    cols = [[Fraction(1 if e == g else 0) for e in exps] for g in gens]
    target = [Fraction(-c.get(e, 0)) for e in exps]
    return rank(cols + [target]) == rank(cols)
