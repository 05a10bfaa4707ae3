"""The Rees bundle of a vector space with two decreasing filtrations.

Lattice model: near 0 the bundle is generated by ``t**-p F^p``, near infinity
by ``s**-q F'^q`` (``s = 1/t``). With adapted bases ``P_v`` (for F, jumps
``p``) and ``P_w`` (for F', jumps ``q``) the transition is

    T = diag(t**-q) P_w^-1 P_v diag(t**-p).

Adding an increasing filtration W gives a candidate mixed twistor structure
whose weight steps are the Rees bundles of the W_i with induced filtrations.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .bundles import BirkhoffSplitting, BundleMap, SplitBundle, TransitionBundle, birkhoff_split
from .errors import InputError, TheoremViolation
from .exactalg import matrix as mx
from .exactalg import scalars
from .exactalg.poly import LAURENT, mono
from .mts import MixedTwistorStructure, extension_mts, validate_mts

__all__ = [
    "Filtration", "FilteredSpace", "ReesOutput", "rees_bundle", "rees_mts", "rees_map",
    "is_complex_mhs", "equivalence_check", "rees_inverse", "jet_mts_example",
    "random_filtered_space", "graded_dims",
]


# ---------------------------------------------------------------------------
# filtrations


def _span(vectors, dim):
    return mx.column_space([list(v) for v in vectors], dim)


class Filtration:
    """A filtration by subspaces of ``K^dim`` given as jumps ``{index: basis vectors}``.

    Decreasing: ``F^p`` is the value at the largest listed index ``<= p`` (the
    whole space before the first, 0 beyond the last) and the smallest listed
    value must be the whole space.
    Increasing: ``W_i`` is the value at the largest listed index ``<= i`` (0
    before the first) and the largest listed value must be the whole space.
    """

    def __init__(self, dim: int, jumps: dict, decreasing: bool, name: str = "F"):
        self.dim = dim
        self.decreasing = decreasing
        self.name = name
        self.jumps = {int(k): _span(v, dim) for k, v in jumps.items()}
        if dim and not self.jumps:
            raise InputError(f"filtration {name} is empty")
        keys = sorted(self.jumps)
        if dim:
            end = keys[0] if decreasing else keys[-1]
            if len(self.jumps[end]) != dim:
                raise InputError(f"filtration {name} is not exhaustive")
        seq = [self.jumps[k] for k in keys]
        for a, b in zip(seq, seq[1:]):
            small, big = (b, a) if decreasing else (a, b)
            if mx.span_rank(big + small) != len(big):
                raise InputError(f"filtration {name} is not monotone")

    @classmethod
    def trivial(cls, dim: int, decreasing: bool, at: int = 0, name: str = "F"):
        return cls(dim, {at: mx.eye(dim)}, decreasing, name)

    def __call__(self, k: int):
        keys = sorted(self.jumps)
        if self.decreasing:
            if k > keys[-1]:
                return []
            if k < keys[0]:
                return self.jumps[keys[0]]
        le = [x for x in keys if x <= k]
        return self.jumps[le[-1]] if le else []

    def range(self):
        keys = sorted(self.jumps)
        return (keys[0], keys[-1]) if keys else (0, 0)

    def adapted(self):
        """``(P, jumps)``: basis columns with ``P[:, k] in F^{jumps[k]}`` exactly."""
        if not self.decreasing:
            raise InputError("adapted bases are built for decreasing filtrations")
        lo, hi = self.range()
        vecs, idx = [], []
        for p in range(hi, lo - 1, -1):
            for v in self(p):
                if mx.span_rank(vecs + [v]) > len(vecs):
                    vecs.append(list(v))
                    idx.append(p)
        return mx.transpose(vecs, self.dim) if vecs else [[] for _ in range(self.dim)], idx

    def restrict(self, basis):
        """Induced filtration on ``span(basis)`` in the coordinates of ``basis``."""
        k = len(basis)
        C = mx.transpose(basis, self.dim)
        out = {}
        for key, sub in self.jumps.items():
            inter = mx.intersect(sub, basis, self.dim) if sub else []
            out[key] = [mx.solve(C, v) for v in inter]
        if self.decreasing:
            lo = self.range()[0]
            out[lo] = mx.eye(k)
        else:
            out[self.range()[1]] = mx.eye(k)
        return Filtration(k, out, self.decreasing, self.name)

    def to_json(self):
        return [
            {"i": k, "basis": [[scalars.to_json(x) for x in row] for row in mx.transpose(v, self.dim)] if v else []}
            for k, v in sorted(self.jumps.items())
        ]

    @classmethod
    def from_json(cls, dim, obj, decreasing, name):
        if not isinstance(obj, list):
            raise InputError(f"field '{name}' must be a list of jumps")
        jumps = {}
        for k, entry in enumerate(obj):
            if not isinstance(entry, dict) or "i" not in entry or "basis" not in entry:
                raise InputError(f"field '{name}[{k}]' needs 'i' and 'basis'")
            rows = entry["basis"]
            if not isinstance(rows, list) or (rows and len(rows) != dim):
                raise InputError(f"field '{name}[{k}].basis' must have {dim} rows")
            M = [[scalars.from_json(x) for x in row] for row in rows]
            jumps[entry["i"]] = mx.transpose(M) if M and M[0] else []
        return cls(dim, jumps, decreasing, name)


@dataclass
class FilteredSpace:
    """``(V, W, F, F')``: one increasing and two decreasing filtrations on ``K^dim``."""

    dim: int
    W: Filtration
    F: Filtration
    Fp: Filtration

    @classmethod
    def build(cls, dim, W, F, Fp):
        return cls(
            dim,
            Filtration(dim, W, False, "W"),
            Filtration(dim, F, True, "F"),
            Filtration(dim, Fp, True, "Fprime"),
        )

    def to_json(self):
        return {"dim": self.dim, "W": self.W.to_json(), "F": self.F.to_json(), "Fprime": self.Fp.to_json()}

    @classmethod
    def from_json(cls, obj):
        if not isinstance(obj, dict):
            raise InputError("filtered-space document must be an object")
        for key in ("dim", "W", "F", "Fprime"):
            if key not in obj:
                raise InputError(f"filtered-space document missing field '{key}'")
        d = obj["dim"]
        if not isinstance(d, int) or isinstance(d, bool) or d < 0:
            raise InputError("field 'dim' must be a nonnegative integer")
        return cls(
            d,
            Filtration.from_json(d, obj["W"], False, "W"),
            Filtration.from_json(d, obj["F"], True, "F"),
            Filtration.from_json(d, obj["Fprime"], True, "Fprime"),
        )


# ---------------------------------------------------------------------------
# Rees construction


@dataclass
class ReesOutput:
    """Rees bundle with its lattice frames and splitting.

    ``frame0``/``frame_inf`` are the lattice generators in V coordinates
    (``P_v diag(t**-p)`` and ``P_w diag(t**q)``); ``T = frame_inf^-1 frame0``.
    ``filtration_transitions`` maps a weight to its sub-bundle transition.
    """

    bundle: TransitionBundle
    split: SplitBundle
    splitting: BirkhoffSplitting
    frame0: list
    frame_inf: list
    frame0_inv: list
    filtration_transitions: dict

    def to_json(self):
        return {"split": self.split.to_json(), "transition": self.bundle.to_json()}


def _frames(F: Filtration, Fp: Filtration):
    n = F.dim
    Pv, p = F.adapted()
    Pw, q = Fp.adapted()
    Pvi, Pwi = mx.inverse(Pv), mx.inverse(Pw)
    frame0 = [[mono(-p[j], Pv[i][j]) for j in range(n)] for i in range(n)]
    frame0_inv = [[mono(p[i], Pvi[i][j]) for j in range(n)] for i in range(n)]
    frame_inf = [[mono(q[j], Pw[i][j]) for j in range(n)] for i in range(n)]
    frame_inf_inv = [[mono(-q[i], Pwi[i][j]) for j in range(n)] for i in range(n)]
    T = mx.pmul(frame_inf_inv, frame0, inner=n)
    return frame0, frame0_inv, frame_inf, T


def rees_bundle(F: Filtration, Fp: Filtration, _extra=None) -> ReesOutput:
    if F.dim != Fp.dim:
        raise InputError("filtrations live on spaces of different dimension")
    if F.dim == 0:
        empty = birkhoff_split([])
        return ReesOutput(TransitionBundle([]), SplitBundle(()), empty, [], [], [], {})
    frame0, frame0_inv, frame_inf, T = _frames(F, Fp)
    sp = birkhoff_split(T)
    return ReesOutput(TransitionBundle(T), SplitBundle(sp.degrees), sp, frame0, frame_inf, frame0_inv, _extra or {})


def _rees_incl(big: ReesOutput, small: ReesOutput, C, n, k) -> BundleMap:
    """Bundle map xi(small) -> xi(big) induced by the inclusion matrix ``C`` (n x k)."""
    if k == 0:
        return BundleMap(small.split, big.split, [[] for _ in range(big.split.rank)], check=False)
    Cl = mx.pconst(C)
    M0 = mx.pmul(big.frame0_inv, mx.pmul(Cl, small.frame0, inner=k), inner=n)
    mat = mx.pmul(big.splitting.A, mx.pmul(M0, small.splitting.Ainv, inner=k), inner=n)
    return BundleMap(small.split, big.split, mat, check=True)


def rees_map(phi, src: "FilteredSpace", tgt: "FilteredSpace") -> BundleMap:
    """Bundle map ``xi(src) -> xi(tgt)`` of a filtered linear map ``phi`` (dim_tgt x dim_src)."""
    a, b = rees_bundle(src.F, src.Fp), rees_bundle(tgt.F, tgt.Fp)
    return _rees_incl(b, a, phi, tgt.dim, src.dim)


def rees_mts(V: FilteredSpace) -> MixedTwistorStructure:
    """Candidate MTS with ``W_i xi = xi(W_i V; F, F')`` (may fail validation)."""
    whole = rees_bundle(V.F, V.Fp)
    steps = []
    lo, hi = V.W.range()
    for i in range(lo, hi + 1):
        basis = V.W(i)
        k = len(basis)
        if k == 0:
            continue
        sub = rees_bundle(V.F.restrict(basis), V.Fp.restrict(basis))
        whole.filtration_transitions[i] = sub.bundle
        C = mx.transpose(basis, V.dim)
        steps.append((i, sub.split, _rees_incl(whole, sub, C, V.dim, k)))
    return MixedTwistorStructure(whole.split, steps)


def rees_inverse(R: ReesOutput):
    """Recover ``(F, F')`` as ``F^p = {v : t**-p v in lattice at 0}`` (and likewise at infinity)."""
    n = R.split.rank
    if n == 0:
        return Filtration(0, {}, True), Filtration(0, {}, True, "Fprime")
    inv0 = R.frame0_inv
    inv_inf = mx.pinverse(R.frame_inf, LAURENT)
    return _read_lattice(inv0, n, sign=1), _read_lattice(inv_inf, n, sign=-1, name="Fprime")


def _read_lattice(Ninv, n, sign, name="F"):
    """Jumps of ``{v : Ninv v t**(-sign p)`` regular at the chart point``}``.

    At 0 (``sign=1``) the coefficient of ``t**f`` in ``Ninv`` must vanish on v
    for ``f < p``; at infinity (``sign=-1``) for ``f > -p``.
    """
    exps = [e for row in Ninv for x in row if x.coeffs for e in (x.low, x.high)]
    lo, hi = min(exps), max(exps)
    span = range(lo, hi + 2) if sign > 0 else range(-hi, -lo + 2)
    jumps = {}
    for p in span:
        rows = [
            [Ninv[r][c].coeff(f) for c in range(n)]
            for r in range(n)
            for f in range(lo, hi + 1)
            if (f < p if sign > 0 else f > -p)
        ]
        sub = mx.nullspace(rows, n) if rows else mx.eye(n)
        jumps[p] = mx.column_space(sub, n)
    keys = sorted(jumps)
    start = max(k for k in keys if len(jumps[k]) == n)
    kept = {start: jumps[start]}
    prev = jumps[start]
    for k in keys:
        if k > start and len(jumps[k]) != len(prev):
            kept[k] = jumps[k]
            prev = jumps[k]
    return Filtration(n, kept, True, name)


# ---------------------------------------------------------------------------
# complex mixed Hodge structures


def _dim_inter(U, V, dim):
    return len(mx.intersect(U, V, dim)) if U and V else 0


def graded_dims(V: FilteredSpace):
    """``{(w, p, q): dim Gr_F^p Gr_F'^q Gr^W_w}`` over the relevant index box."""
    n = V.dim
    out = {}
    wlo, whi = V.W.range()
    plo, phi = V.F.range()
    qlo, qhi = V.Fp.range()
    for w in range(wlo, whi + 1):
        Wlow = V.W(w - 1)
        Ww = V.W(w)
        base = len(Wlow)

        def lift(sub):
            inter = mx.intersect(sub, Ww, n) if sub and Ww else []
            return mx.column_space(inter + Wlow, n)

        cache = {}

        def d(p, q):
            if (p, q) not in cache:
                A, B = lift(V.F(p)), lift(V.Fp(q))
                cache[(p, q)] = _dim_inter(A, B, n) - base
            return cache[(p, q)]

        for p in range(plo, phi + 1):
            for q in range(qlo, qhi + 1):
                val = d(p, q) - d(p + 1, q) - d(p, q + 1) + d(p + 1, q + 1)
                if val:
                    out[(w, p, q)] = val
    return out


def is_complex_mhs(V: FilteredSpace) -> bool:
    return all(p + q == w for (w, p, q) in graded_dims(V))


def equivalence_check(V: FilteredSpace) -> dict:
    """Compare opposedness of the Hodge filtrations with validity of the Rees MTS."""
    mhs = is_complex_mhs(V)
    rep = validate_mts(rees_mts(V))
    out = {"complex_mhs": mhs, "mts_valid": rep.valid, "graded": rep.to_json()["graded"]}
    if mhs != rep.valid:
        raise TheoremViolation("Hodge and twistor sides disagree", out)
    return out


# ---------------------------------------------------------------------------
# generators


def jet_mts_example(r: int, n: int) -> MixedTwistorStructure:
    """Split MTS with ``Gr_m = O(m)^binom(m+r-1, r-1)`` for ``0 <= m <= n``."""
    if r < 1 or n < 0:
        raise InputError("jet example needs r >= 1 and n >= 0")
    return extension_mts([(m, comb(m + r - 1, r - 1)) for m in range(n + 1)])


def _rand_vec(rng, n):
    return [Fraction(rng.randint(-2, 2)) for _ in range(n)]


def _random_basis(rng, n):
    while True:
        M = [_rand_vec(rng, n) for _ in range(n)]
        if mx.det(M):
            return M


def random_filtered_space(rng: random.Random, max_dim: int = 5, mhs: bool | None = None) -> FilteredSpace:
    """Random ``(V, W, F, F')``; with ``mhs=True`` a Deligne-split MHS perturbed by a
    unipotent map lowering W, with ``mhs=False`` random flags (usually not an MHS)."""
    if mhs is None:
        mhs = rng.random() < 0.5
    n = rng.randint(1, max_dim)
    if mhs:
        labels = []
        for _ in range(n):
            w = rng.randint(0, 2)
            p = rng.randint(min(0, w), max(w, 0))
            labels.append((w, p, w - p))
        labels.sort()
        g = _random_basis(rng, n)
        # unipotent u with u(e_k) = e_k + (combination of strictly lower weight vectors)
        u = mx.eye(n)
        for k in range(n):
            for j in range(n):
                if labels[j][0] < labels[k][0] and rng.random() < 0.5:
                    u[j][k] = Fraction(rng.randint(-2, 2))
        # W is preserved by the change of basis g restricted to be weight-block lower triangular
        for k in range(n):
            for j in range(n):
                if labels[j][0] > labels[k][0]:
                    g[j][k] = Fraction(0)
        for k in range(n):
            g[k][k] = g[k][k] or Fraction(1)
        while not mx.det(g):
            for k in range(n):
                g[k][k] += 1
        cols = lambda M, idx: [[M[r][c] for r in range(n)] for c in idx]  # noqa: E731
        ug = mx.mul(u, g)
        ws = sorted({lab[0] for lab in labels})
        ps = sorted({lab[1] for lab in labels})
        qs = sorted({lab[2] for lab in labels})
        W = {w: cols(g, [k for k, lab in enumerate(labels) if lab[0] <= w]) for w in ws}
        F = {p: cols(ug, [k for k, lab in enumerate(labels) if lab[1] >= p]) for p in range(ps[0], ps[-1] + 1)}
        Fp = {q: cols(g, [k for k, lab in enumerate(labels) if lab[2] >= q]) for q in range(qs[0], qs[-1] + 1)}
        return FilteredSpace.build(n, W, F, Fp)

    def flag(lo):
        basis = _random_basis(rng, n)
        cuts = sorted(rng.randint(0, n) for _ in range(rng.randint(1, 2)))
        out = {lo: basis}
        for k, c in enumerate(cuts):
            out[lo + k + 1] = basis[c:] if c < n else []
        return out

    W = {}
    basis = _random_basis(rng, n)
    cuts = sorted(rng.randint(1, n) for _ in range(rng.randint(0, 2))) + [n]
    for k, c in enumerate(cuts):
        W[k] = basis[:c]
    return FilteredSpace.build(n, W, flag(0), flag(0))
