"""Gluing chart complexes into sheaves on P^1.

A chart complex is a bounded complex of free modules over one of the chart
rings ``K[t]`` (at 0), ``K[1/t]`` (at infinity) or ``K[t, 1/t]`` (the overlap),
with a filtration by basis vectors. Gluing happens on cohomology of the graded
pieces: with ``u: P -> M`` and ``v: P -> N`` inducing isomorphisms
``u_*, v_*`` on ``H^i(Gr_n)`` over the overlap, the transition from the chart-0
frame to the chart-infinity frame is ``T = v_* u_*^-1``, which is then split.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..bundles import BirkhoffSplitting, SplitBundle, birkhoff_split
from ..errors import InputError
from ..exactalg import matrix as mx
from ..exactalg.poly import LAURENT, POLY_S, POLY_T, Ring
from ..exactalg.smith import smith_normal_form

__all__ = ["ChartComplex", "ChartCohomology", "PatchResult", "chart_cohomology", "patch", "patch_chain", "cone_prime"]

RINGS = {"t": POLY_T, "s": POLY_S, "laurent": LAURENT}


class ChartComplex:
    """Free modules ``R^{ranks[k]}``, differentials ``d[k]`` (Laurent matrices with
    entries in the ring) and a level per basis vector (the filtration W)."""

    def __init__(self, ring: Ring, ranks: dict, d: dict | None = None, levels: dict | None = None):
        self.ring = ring
        self.ranks = {int(k): int(r) for k, r in ranks.items() if r}
        self._d = {int(k): m for k, m in (d or {}).items()}
        self.levels = {k: list((levels or {}).get(k, [0] * r)) for k, r in self.ranks.items()}
        for k, m in self._d.items():
            if len(m) != self.rank(k + 1) or any(len(row) != self.rank(k) for row in m):
                raise InputError(f"chart differential d^{k} has the wrong shape")
            for i, row in enumerate(m):
                for j, e in enumerate(row):
                    if e.coeffs and not ring.contains(e):
                        raise InputError(f"chart differential d^{k} entry ({i},{j}) is not in {ring}")
                    if e.coeffs and self.levels[k + 1][i] > self.levels[k][j]:
                        raise InputError(f"chart differential d^{k} does not preserve the filtration")
        for k in self.degrees():
            if not mx.pis_zero(mx.pmul(self.d(k + 1), self.d(k), inner=self.rank(k + 1), ncols=self.rank(k))):
                raise InputError(f"not a complex: d^{k + 1} d^{k} != 0")

    def rank(self, k):
        return self.ranks.get(k, 0)

    def d(self, k):
        m = self._d.get(k)
        return m if m is not None else mx.pzeros(self.rank(k + 1), self.rank(k))

    def degrees(self):
        if not self.ranks:
            return range(0)
        ks = sorted(self.ranks)
        return range(ks[0], ks[-1] + 1)

    def level_set(self):
        return sorted({n for ls in self.levels.values() for n in ls})

    def graded_index(self, n, k):
        return [j for j, lv in enumerate(self.levels.get(k, [])) if lv == n]

    def graded(self, n):
        """``Gr_n`` as a chart complex (rows and columns of level n)."""
        ranks = {k: len(self.graded_index(n, k)) for k in self.degrees()}
        d = {}
        for k in self.degrees():
            rows, cols = self.graded_index(n, k + 1), self.graded_index(n, k)
            d[k] = [[self.d(k)[i][j] for j in cols] for i in rows]
        d = {k: m for k, m in d.items() if ranks.get(k) and ranks.get(k + 1)}
        return ChartComplex(self.ring, ranks, d, {k: [n] * r for k, r in ranks.items()})

    def restrict(self) -> "ChartComplex":
        """Same complex over ``K[t, 1/t]``."""
        return ChartComplex(LAURENT, self.ranks, self._d, self.levels)


def graded_map(u: dict, src: ChartComplex, tgt: ChartComplex, n: int) -> dict:
    out = {}
    for k in set(src.degrees()) | set(tgt.degrees()):
        m = u.get(k)
        rows, cols = tgt.graded_index(n, k), src.graded_index(n, k)
        out[k] = [[m[i][j] for j in cols] for i in rows] if m is not None else mx.pzeros(len(rows), len(cols))
    return out


@dataclass
class ChartCohomology:
    """``H^i`` of a chart complex: representatives (columns) and the coordinate map on cycles."""

    rank: int
    torsion: tuple
    reps: list
    coords: list


def chart_cohomology(C: ChartComplex, i: int) -> ChartCohomology:
    ring = C.ring
    n = C.rank(i)
    if n == 0:
        return ChartCohomology(0, (), [], [])
    s = smith_normal_form(C.d(i), ring, ncols=n)
    rho = s.rank
    Z = mx.pcols(s.V, range(rho, n), nrows=n)
    Zc = mx.prows(s.Vinv, range(rho, n))
    z = n - rho
    if z == 0:
        return ChartCohomology(0, (), [[] for _ in range(n)], [])
    B = mx.pmul(Zc, C.d(i - 1), inner=n, ncols=C.rank(i - 1))
    sb = smith_normal_form(B, ring, ncols=C.rank(i - 1))
    torsion = tuple(x for x in sb.invariants if not ring.is_unit(x))
    h = z - sb.rank
    reps = mx.pmul(Z, mx.pcols(sb.Uinv, range(sb.rank, z), nrows=z), inner=z, ncols=h)
    coords = mx.pmul(mx.prows(sb.U, range(sb.rank, z)), Zc, inner=z, ncols=n)
    return ChartCohomology(h, torsion, reps, coords)


def _induced(u: dict, src: ChartComplex, tgt: ChartComplex, i: int):
    hs, ht = chart_cohomology(src, i), chart_cohomology(tgt, i)
    m = u.get(i) or mx.pzeros(tgt.rank(i), src.rank(i))
    mat = mx.pmul(ht.coords, mx.pmul(m, hs.reps, inner=src.rank(i), ncols=hs.rank), inner=tgt.rank(i), ncols=hs.rank)
    return hs, ht, mat


def _check_iso(mat, h_src, h_tgt, what):
    if h_src.rank != h_tgt.rank:
        raise InputError(f"not a filtered quasiisomorphism: {what} changes the cohomology rank")
    if h_src.rank == 0:
        return
    det = mx.pdet(mat, LAURENT)
    if not det.is_monomial():
        raise InputError(f"not a filtered quasiisomorphism: {what} is not invertible on cohomology")


@dataclass
class PatchResult:
    """``pieces[(n, i)]``: the glued ``Gr_n H^i`` with its transition and splitting."""

    pieces: dict

    def degrees(self):
        return {k: v["bundle"].degrees for k, v in sorted(self.pieces.items())}

    def to_json(self):
        return {
            "pieces": [
                {"n": n, "i": i, "degrees": list(v["bundle"].degrees)} for (n, i), v in sorted(self.pieces.items())
            ]
        }


def patch(M: ChartComplex, P: ChartComplex, N: ChartComplex, u: dict, v: dict) -> PatchResult:
    """Glue ``M`` (over K[t]) and ``N`` (over K[1/t]) along ``M <-u- P -v-> N``."""
    if M.ring is not POLY_T or N.ring is not POLY_S or P.ring is not LAURENT:
        raise InputError("patch needs M over K[t], P over K[t,1/t] and N over K[1/t]")
    levels = sorted(set(M.level_set()) | set(P.level_set()) | set(N.level_set()))
    degs = sorted(set(M.degrees()) | set(P.degrees()) | set(N.degrees()))
    pieces = {}
    for n in levels:
        Mg, Pg, Ng = M.graded(n), P.graded(n), N.graded(n)
        ug, vg = graded_map(u, P, M, n), graded_map(v, P, N, n)
        for i in degs:
            hp, hm, U = _induced(ug, Pg, Mg, i)
            _, hn, V = _induced(vg, Pg, Ng, i)
            for h, where in ((hm, "U_0"), (hn, "U_inf")):
                if h.torsion:
                    raise InputError(f"chart cohomology H^{i}(Gr_{n}) on {where} has torsion")
            _check_iso(U, hp, hm, f"u on H^{i}(Gr_{n})")
            _check_iso(V, hp, hn, f"v on H^{i}(Gr_{n})")
            if hp.rank == 0:
                continue
            Uinv = mx.pinverse(U, LAURENT)
            T = mx.pmul(V, Uinv, inner=hp.rank)
            sp: BirkhoffSplitting = birkhoff_split(T)
            pieces[(n, i)] = {"bundle": SplitBundle(sp.degrees), "transition": T, "splitting": sp}
    return PatchResult(pieces)


def cone_prime(P: ChartComplex, Q: ChartComplex, R: ChartComplex, v: dict, w: dict):
    """``Cone(P + R -> Q)[-1]`` for the map ``(v, -w)``, with its projections to P and R.

    Degree k is ``P^k + R^k + Q^{k-1}`` and ``d(p, r, q) = (dp, dr, -v p + w r - dq)``.
    """
    ks = sorted(set(P.degrees()) | set(R.degrees()) | {k + 1 for k in Q.degrees()})
    if not ks:
        return ChartComplex(LAURENT, {}), {}, {}
    ks = list(range(ks[0], ks[-1] + 1))
    ranks = {k: P.rank(k) + R.rank(k) + Q.rank(k - 1) for k in ks}
    levels = {k: P.levels.get(k, []) + R.levels.get(k, []) + Q.levels.get(k - 1, []) for k in ks}
    d = {}
    for k in ks:
        a, b, c = P.rank(k), R.rank(k), Q.rank(k - 1)
        a2, b2, c2 = P.rank(k + 1), R.rank(k + 1), Q.rank(k)
        m = mx.pzeros(a2 + b2 + c2, a + b + c)
        dp, dr, dq = P.d(k), R.d(k), Q.d(k - 1)
        vk = v.get(k) or mx.pzeros(c2, a)
        wk = w.get(k) or mx.pzeros(c2, b)
        for i in range(a2):
            for j in range(a):
                m[i][j] = dp[i][j]
        for i in range(b2):
            for j in range(b):
                m[a2 + i][a + j] = dr[i][j]
        for i in range(c2):
            for j in range(a):
                m[a2 + b2 + i][j] = -vk[i][j]
            for j in range(b):
                m[a2 + b2 + i][a + j] = wk[i][j]
            for j in range(c):
                m[a2 + b2 + i][a + b + j] = -dq[i][j]
        d[k] = m
    cone = ChartComplex(LAURENT, ranks, d, levels)
    pr_p = {k: [[_one(i == j) for j in range(ranks[k])] for i in range(P.rank(k))] for k in ks}
    pr_r = {k: [[_one(j == P.rank(k) + i) for j in range(ranks[k])] for i in range(R.rank(k))] for k in ks}
    return cone, pr_p, pr_r


def _one(flag):
    from ..exactalg.poly import ONE, ZERO

    return ONE if flag else ZERO


def _compose(f: dict, g: dict, mid: ChartComplex, src_ranks: dict):
    out = {}
    for k in src_ranks:
        if k in f and k in g:
            out[k] = mx.pmul(f[k], g[k], inner=mid.rank(k), ncols=src_ranks[k])
    return out


def patch_chain(M, P, Q, R, N, u, v, w, x) -> PatchResult:
    """Five-term chain ``M <-u- P -v-> Q <-w- R -x-> N`` reduced to three terms through
    ``Cone'(P + R -> Q)`` and then glued."""
    C, pr_p, pr_r = cone_prime(P, Q, R, v, w)
    uu = _compose(u, pr_p, P, C.ranks)
    xx = _compose(x, pr_r, R, C.ranks)
    return patch(M, C, N, uu, xx)
