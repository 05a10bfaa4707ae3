"""Hom, cohomology, kernels, cokernels and saturation for maps of split bundles.

Everything is computed chart by chart. On U_0 a map is a matrix over K[t], on
U_inf a matrix over K[1/t]; both rings are principal, so a Smith normal form
gives kernels, saturated images and torsion. The chart-local answers are
glued over the overlap and the resulting transition is Birkhoff split.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import InputError, TheoremViolation
from ..exactalg import matrix as mx
from ..exactalg.forms import BinaryForm
from ..exactalg.poly import ONE, POLY_S, POLY_T, mono
from ..exactalg.smith import smith_normal_form
from .birkhoff import birkhoff_split
from .core import BundleMap, SplitBundle, sort_permutation

__all__ = [
    "hom_space", "cohomology", "ext1_dim", "ext1_basis", "Cohomology",
    "kernel", "cokernel", "CokernelReport", "image_saturation", "ImageReport",
    "is_strict_injection", "is_strict_surjection", "factor_through_injection",
    "factor_through_surjection", "tensor", "dual", "twist", "tensor_map",
    "dual_map", "twist_map", "same_subbundle", "rank_of_map", "image_contained", "zero_bundle",
]


# ---------------------------------------------------------------------------
# Hom and cohomology


def hom_space(E: SplitBundle, F: SplitBundle):
    """``(dim, basis)`` of Hom(E, F); basis elements have one monomial entry."""
    basis = []
    for i, b in enumerate(F.degrees):
        for j, a in enumerate(E.degrees):
            for k in range(b - a + 1):
                mat = mx.pzeros(F.rank, E.rank)
                mat[i][j] = mono(k)
                basis.append(BundleMap(E, F, mat, check=False))
    return len(basis), basis


@dataclass(frozen=True)
class Cohomology:
    """H^0 basis as ``(summand, form)`` pairs, H^1 basis as ``(summand, exponent)``.

    A class ``(j, e)`` in H^1 is the Cech cocycle ``t**e`` on the overlap,
    written in the U_0 frame of summand ``j``.
    """

    h0_basis: tuple
    h1_basis: tuple

    @property
    def h0(self) -> int:
        return len(self.h0_basis)

    @property
    def h1(self) -> int:
        return len(self.h1_basis)


def cohomology(E: SplitBundle) -> Cohomology:
    h0, h1 = [], []
    for j, d in enumerate(E.degrees):
        for k in range(d + 1):
            h0.append((j, BinaryForm.monomial(d, k)))
        for e in range(-1, d, -1):
            h1.append((j, e))
    return Cohomology(tuple(h0), tuple(h1))


def ext1_dim(E: SplitBundle, F: SplitBundle) -> int:
    return sum(max(a - b - 1, 0) for b in F.degrees for a in E.degrees)


def ext1_basis(E: SplitBundle, F: SplitBundle):
    """Basis of Ext^1(E, F) as ``(i, j, e)``: cocycle ``t**e`` from E_j to F_i.

    The extension with cocycle matrix ``C`` (U_0 frames) has transition
    ``[[D_F, D_F C], [0, D_E]]`` where ``D = diag(t**-deg)``.
    """
    out = []
    for i, b in enumerate(F.degrees):
        for j, a in enumerate(E.degrees):
            for e in range(-1, b - a, -1):
                out.append((i, j, e))
    return out


# ---------------------------------------------------------------------------
# chart machinery


def _rows_shift(M, shifts):
    return [[e.shift(shifts[i]) for e in row] for i, row in enumerate(M)]


def _chart_smith(f: BundleMap):
    n = f.source.rank
    s0 = smith_normal_form(f.chart0(), POLY_T, ncols=n)
    si = smith_normal_form(f.chart_inf(), POLY_S, ncols=n)
    if s0.rank != si.rank:
        raise TheoremViolation("chart ranks disagree", {"map": f.to_json()})
    return s0, si


def _glue_sub(ambient: SplitBundle, N0, Linf, k: int):
    """Glue a saturated subsheaf with U_0 frame ``N0`` and U_inf left inverse ``Linf``."""
    if k == 0:
        sub = SplitBundle(())
        return sub, BundleMap(sub, ambient, [[] for _ in range(ambient.rank)], check=False)
    G = mx.pmul(Linf, _rows_shift(N0, [-a for a in ambient.degrees]), inner=ambient.rank)
    sp = birkhoff_split(G)
    sub = SplitBundle(sp.degrees)
    mat = mx.pmul(N0, sp.Ainv, inner=k)
    return sub, BundleMap(sub, ambient, mat, check=True)


def _quotient(ambient: SplitBundle, s0, si, rho: int):
    """Free quotient of ``ambient`` by the saturated span of the first ``rho`` Smith columns."""
    m = ambient.rank
    q = m - rho
    if q == 0:
        Q = SplitBundle(())
        return Q, BundleMap(ambient, Q, [], check=False)
    pi0 = mx.prows(s0.U, range(rho, m))
    piinf = mx.prows(si.U, range(rho, m))
    right0 = mx.pcols(s0.Uinv, range(rho, m), nrows=m)
    G = mx.pmul(piinf, _rows_shift(right0, [-b for b in ambient.degrees]), inner=m)
    sp = birkhoff_split(G)
    Q = SplitBundle(sp.degrees)
    return Q, BundleMap(ambient, Q, mx.pmul(sp.A, pi0, inner=q, ncols=m), check=True)


# ---------------------------------------------------------------------------
# kernel, image, cokernel


def kernel(f: BundleMap):
    """``(K, incl)``: the kernel sheaf of ``f`` (always a saturated subbundle)."""
    s0, si = _chart_smith(f)
    n = f.source.rank
    rho = s0.rank
    idx = range(rho, n)
    N0 = mx.pcols(s0.V, idx, nrows=n)
    Linf = mx.prows(si.Vinv, idx)
    return _glue_sub(f.source, N0, Linf, n - rho)


@dataclass(frozen=True)
class ImageReport:
    """Saturated image of ``f``: ``incl @ proj == f`` and ``proj`` is generically onto.

    ``torsion_length`` is the length of the saturation quotient Im / f(E).
    """

    bundle: SplitBundle
    incl: BundleMap
    proj: BundleMap
    torsion_length: int

    def __iter__(self):
        return iter((self.bundle, self.incl, self.proj))


def _divisor_forms(s0, si):
    out = []
    for d0, dinf in zip(s0.invariants, si.invariants):
        deg0 = d0.high
        e = -dinf.high
        if deg0 == 0 and e == 0:
            continue
        core = BinaryForm.from_chart0(d0, deg0)
        form = core * BinaryForm.monomial(e, 0) if e else core
        out.append(form.monic())
    return out


def image_saturation(f: BundleMap) -> ImageReport:
    s0, si = _chart_smith(f)
    m = f.target.rank
    rho = s0.rank
    N0 = mx.pcols(s0.Uinv, range(rho), nrows=m)
    Linf = mx.prows(si.U, range(rho))
    Im, incl = _glue_sub(f.target, N0, Linf, rho)
    proj = factor_through_injection(f, incl)
    if proj is None:
        raise TheoremViolation("map does not factor through its saturated image", {"map": f.to_json()})
    length = sum(d.degree for d in _divisor_forms(s0, si))
    return ImageReport(Im, incl, proj, length)


@dataclass(frozen=True)
class CokernelReport:
    """Cokernel of ``f``: torsion divisors (one form per glued invariant factor)
    and the locally free quotient with its projection from the target."""

    torsion_divisors: tuple
    free_part: SplitBundle
    projection: BundleMap

    @property
    def torsion_length(self) -> int:
        return sum(d.degree for d in self.torsion_divisors)

    @property
    def is_locally_free(self) -> bool:
        return not self.torsion_divisors

    def to_json(self):
        return {
            "torsion_divisors": [d.to_json() for d in self.torsion_divisors],
            "free_part": self.free_part.to_json(),
            "projection": self.projection.to_json(),
        }


def cokernel(f: BundleMap) -> CokernelReport:
    s0, si = _chart_smith(f)
    Q, proj = _quotient(f.target, s0, si, s0.rank)
    return CokernelReport(tuple(_divisor_forms(s0, si)), Q, proj)


def rank_of_map(f: BundleMap) -> int:
    return smith_normal_form(f.chart0(), POLY_T, ncols=f.source.rank).rank


def _all_units(smith) -> bool:
    return all(d == ONE for d in smith.invariants)


def is_strict_injection(f: BundleMap) -> bool:
    """Injective on every fibre: full column rank with unit invariant factors on both charts."""
    s0, si = _chart_smith(f)
    return s0.rank == f.source.rank and _all_units(s0) and _all_units(si)


def is_strict_surjection(f: BundleMap) -> bool:
    s0, si = _chart_smith(f)
    return s0.rank == f.target.rank and _all_units(s0) and _all_units(si)


def factor_through_injection(g: BundleMap, incl: BundleMap):
    """``h`` with ``incl @ h == g``, or ``None`` if ``g`` does not land in the subbundle."""
    if g.target != incl.target:
        raise InputError("factor_through_injection: targets differ")
    k = incl.source.rank
    if k == 0:
        return BundleMap.zero(g.source, incl.source) if g.is_zero() else None
    s = smith_normal_form(incl.chart0(), POLY_T, ncols=k)
    if s.rank != k or not _all_units(s):
        raise InputError("factor_through_injection: not a strict injection on U_0")
    L = mx.pmul(s.V, mx.prows(s.U, range(k)), inner=k, ncols=incl.target.rank)
    h0 = mx.pmul(L, g.chart0(), inner=incl.target.rank, ncols=g.source.rank)
    try:
        h = BundleMap(g.source, incl.source, h0, check=True)
    except InputError:
        return None
    return h if incl @ h == g else None


def factor_through_surjection(g: BundleMap, p: BundleMap):
    """``h`` with ``h @ p == g``, or ``None`` if ``g`` does not kill ``ker p``."""
    if g.source != p.source:
        raise InputError("factor_through_surjection: sources differ")
    q = p.target.rank
    if q == 0:
        return BundleMap.zero(p.target, g.target) if g.is_zero() else None
    s = smith_normal_form(p.chart0(), POLY_T, ncols=p.source.rank)
    if s.rank != q or not _all_units(s):
        raise InputError("factor_through_surjection: not a strict surjection on U_0")
    R = mx.pmul(mx.pcols(s.V, range(q), nrows=p.source.rank), s.U, inner=q)
    h0 = mx.pmul(g.chart0(), R, inner=p.source.rank, ncols=q)
    try:
        h = BundleMap(p.target, g.target, h0, check=True)
    except InputError:
        return None
    return h if h @ p == g else None


def _chart_contains(G, H, ring, ncols_g, ncols_h):
    s = smith_normal_form(G, ring, ncols=ncols_g)
    Y = mx.pmul(s.U, H, inner=len(G), ncols=ncols_h)
    for i, row in enumerate(Y):
        for y in row:
            if not y.coeffs:
                continue
            if i >= s.rank or not ring.divides(s.invariants[i], y):
                return False
    return True


def image_contained(h: BundleMap, G: BundleMap) -> bool:
    """``im h`` is a subsheaf of ``im G`` (checked on both charts; no saturation)."""
    if h.target != G.target:
        raise InputError("image_contained: targets differ")
    if h.is_zero():
        return True
    if G.source.rank == 0:
        return False
    g, k = G.source.rank, h.source.rank
    return _chart_contains(G.chart0(), h.chart0(), POLY_T, g, k) and _chart_contains(
        G.chart_inf(), h.chart_inf(), POLY_S, g, k
    )


def same_subbundle(i1: BundleMap, i2: BundleMap) -> bool:
    """Two strict injections into one bundle have the same image."""
    return (
        i1.target == i2.target
        and factor_through_injection(i1, i2) is not None
        and factor_through_injection(i2, i1) is not None
    )


# ---------------------------------------------------------------------------
# tensor, dual, twist


def _tensor_positions(E: SplitBundle, F: SplitBundle):
    flat = [a + b for a in E.degrees for b in F.degrees]
    return flat, sort_permutation(flat)


def tensor(E: SplitBundle, F: SplitBundle) -> SplitBundle:
    return SplitBundle(a + b for a in E.degrees for b in F.degrees)


def dual(E: SplitBundle) -> SplitBundle:
    return SplitBundle(-d for d in E.degrees)


def twist(E: SplitBundle, n: int) -> SplitBundle:
    return SplitBundle(d + n for d in E.degrees)


def tensor_map(f: BundleMap, g: BundleMap) -> BundleMap:
    """Kronecker product ``f (x) g`` (summand ``(j, l)`` placed by sorted degree)."""
    _, ps = _tensor_positions(f.source, g.source)
    _, pt = _tensor_positions(f.target, g.target)
    src, tgt = tensor(f.source, g.source), tensor(f.target, g.target)
    mat = mx.pzeros(tgt.rank, src.rank)
    ns, ms = g.source.rank, g.target.rank
    for i in range(f.target.rank):
        for k in range(ms):
            r = pt[i * ms + k]
            for j in range(f.source.rank):
                a = f.mat[i][j]
                if not a.coeffs:
                    continue
                for l in range(ns):
                    b = g.mat[k][l]
                    if b.coeffs:
                        mat[r][ps[j * ns + l]] = a * b
    return BundleMap(src, tgt, mat, check=False)


def dual_map(f: BundleMap) -> BundleMap:
    """Transpose ``F^v -> E^v``; dualising reverses the sorted summand order."""
    n, m = f.source.rank, f.target.rank
    mat = [[f.mat[m - 1 - i][n - 1 - j] for i in range(m)] for j in range(n)]
    return BundleMap(dual(f.target), dual(f.source), mat, check=False)


def twist_map(f: BundleMap, n: int) -> BundleMap:
    return BundleMap(twist(f.source, n), twist(f.target, n), f.mat, check=False)


def zero_bundle() -> SplitBundle:
    return SplitBundle(())

