"""Mixed twistor structures: bundles with a weight filtration by strict subbundles.

A :class:`MixedTwistorStructure` stores, for a contiguous range of weights
``lo..hi``, the bundle ``W_i`` and its strict inclusion ``iota_i`` into the
total bundle. ``W_i = 0`` below ``lo`` and ``W_hi`` is the whole bundle.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .bundles import (
    BundleMap,
    SplitBundle,
    birkhoff_split,
    cokernel,
    factor_through_injection,
    factor_through_surjection,
    hom_space,
    image_saturation,
    is_strict_injection,
    is_strict_surjection,
    kernel,
    tensor_map,
    twist,
    twist_map,
)
from .errors import InputError, TheoremViolation
from .exactalg import matrix as mx
from .exactalg.poly import Laurent, mono

__all__ = [
    "MixedTwistorStructure", "MtsMorphism", "MtsReport", "FilteredVectorSpace",
    "validate_mts", "mts_kernel", "mts_kernel_map", "mts_cokernel", "mts_cokernel_map",
    "mts_image_coimage", "fiber_functor", "tate_twist", "mts_tensor",
    "extension_mts", "random_mts", "random_morphism",
]

ZERO_BUNDLE = SplitBundle(())


class MixedTwistorStructure:
    def __init__(self, total: SplitBundle, steps):
        """``steps``: iterable of ``(i, W_i, iota_i)``; gaps are filled by the previous step."""
        self.total = total
        given = sorted(((int(i), W, inc) for i, W, inc in steps), key=lambda s: s[0])
        if len({s[0] for s in given}) != len(given):
            raise InputError("weight indices must be distinct")
        self.steps = {}
        for k, (i, W, inc) in enumerate(given):
            if inc.source != W or inc.target != total:
                raise InputError(f"inclusion at weight {i} has wrong source/target")
            self.steps[i] = (W, inc)
            if k + 1 < len(given):
                for j in range(i + 1, given[k + 1][0]):
                    self.steps[j] = (W, inc)
        # drop leading zero steps so that lo is the first nonzero weight
        while self.steps and self.steps[min(self.steps)][0].rank == 0:
            del self.steps[min(self.steps)]
        if total.rank and not self.steps:
            raise InputError("nonzero bundle needs at least one weight step")

    @classmethod
    def zero(cls):
        return cls(ZERO_BUNDLE, [])

    @classmethod
    def pure(cls, E: SplitBundle, w: int):
        return cls(E, [(w, E, BundleMap.identity(E))])

    @property
    def weights(self):
        return sorted(self.steps)

    @property
    def lo(self):
        return min(self.steps) if self.steps else 0

    @property
    def hi(self):
        return max(self.steps) if self.steps else -1

    def W(self, i: int):
        """``(W_i, iota_i)`` for any integer ``i``."""
        if i in self.steps:
            return self.steps[i]
        if not self.steps or i < self.lo:
            return ZERO_BUNDLE, BundleMap.zero(ZERO_BUNDLE, self.total)
        return self.steps[self.hi]

    def kappa(self, i: int) -> BundleMap:
        """The inclusion ``W_{i-1} -> W_i``."""
        prev, inc_prev = self.W(i - 1)
        cur, inc = self.W(i)
        k = factor_through_injection(inc_prev, inc)
        if k is None:
            raise InputError(f"filtration not increasing at {i}")
        return k

    def __repr__(self):
        parts = ", ".join(f"W{i}={self.steps[i][0]}" for i in self.weights)
        return f"MTS({self.total}; {parts})"

    def to_json(self):
        return {
            "total": self.total.to_json(),
            "weights": [
                {"i": i, "bundle": self.steps[i][0].to_json(), "incl": self.steps[i][1].to_json()}
                for i in self.weights
            ],
        }

    @classmethod
    def from_json(cls, obj):
        if not isinstance(obj, dict) or "total" not in obj or "weights" not in obj:
            raise InputError("mts document needs 'total' and 'weights'")
        total = SplitBundle.from_json(obj["total"])
        steps = []
        for k, s in enumerate(obj["weights"]):
            for key in ("i", "bundle", "incl"):
                if key not in s:
                    raise InputError(f"mts field 'weights[{k}]' missing '{key}'")
            steps.append((s["i"], SplitBundle.from_json(s["bundle"]), BundleMap.from_json(s["incl"])))
        return cls(total, steps)


@dataclass
class MtsReport:
    """Per weight ``i``: splitting type of Gr_i, its torsion length, and purity."""

    graded: dict = field(default_factory=dict)

    @property
    def valid(self) -> bool:
        return all(g["pure"] and g["torsion"] == 0 for g in self.graded.values())

    def first_invalid(self):
        for i in sorted(self.graded):
            g = self.graded[i]
            if not (g["pure"] and g["torsion"] == 0):
                return i
        return None

    def to_json(self):
        return {
            "valid": self.valid,
            "graded": [
                {"i": i, "degrees": list(g["degrees"]), "torsion": g["torsion"], "pure": g["pure"]}
                for i, g in sorted(self.graded.items())
            ],
        }


def validate_mts(M: MixedTwistorStructure) -> MtsReport:
    rep = MtsReport()
    if M.total.rank == 0:
        return rep
    top, inc_top = M.W(M.hi)
    if top.rank != M.total.rank or not is_strict_surjection(inc_top):
        raise InputError("top weight step is not the whole bundle")
    for i in M.weights:
        W, inc = M.W(i)
        if not is_strict_injection(inc):
            raise InputError(f"filtration not strict at {i}")
        k = M.kappa(i)
        c = cokernel(k)
        rep.graded[i] = {
            "degrees": c.free_part.degrees,
            "torsion": c.torsion_length,
            "pure": c.free_part.is_pure(i),
        }
    return rep


def _require_valid(M, what):
    rep = validate_mts(M)
    if not rep.valid:
        raise InputError(f"{what} is not a valid mixed twistor structure (weight {rep.first_invalid()})")


class MtsMorphism:
    """A bundle map preserving the weight filtrations."""

    def __init__(self, source: MixedTwistorStructure, target: MixedTwistorStructure, f: BundleMap):
        if f.source != source.total or f.target != target.total:
            raise InputError("morphism does not match source/target totals")
        self.source, self.target, self.f = source, target, f
        for i in source.weights:
            if self.induced(i) is None:
                raise InputError(f"map does not preserve the weight filtration at {i}")

    def induced(self, i: int):
        """``f_i: W_i -> W'_i`` with ``iota'_i f_i = f iota_i``, or ``None``."""
        _, inc = self.source.W(i)
        _, inc2 = self.target.W(i)
        return factor_through_injection(self.f @ inc, inc2)


def _submts(A: SplitBundle, a: BundleMap, E: MixedTwistorStructure):
    """Filtration induced on a saturated subbundle ``a: A -> E.total``."""
    steps = []
    for i in E.weights:
        _, inc = E.W(i)
        pi = cokernel(inc).projection
        Wi, wi = kernel(pi @ a)
        steps.append((i, Wi, wi))
    return MixedTwistorStructure(A, steps)


def mts_kernel_map(phi: MtsMorphism):
    """``(ker MTS, inclusion into phi.source.total)``."""
    _require_valid(phi.source, "source")
    _require_valid(phi.target, "target")
    A, a = kernel(phi.f)
    out = _submts(A, a, phi.source)
    rep = validate_mts(out)
    if not rep.valid:
        raise TheoremViolation("kernel is not a mixed twistor structure", {"report": rep.to_json()})
    return out, a


def mts_kernel(phi: MtsMorphism) -> MixedTwistorStructure:
    return mts_kernel_map(phi)[0]


def mts_cokernel_map(phi: MtsMorphism):
    """``(coker MTS, projection from phi.target.total)``."""
    _require_valid(phi.source, "source")
    _require_valid(phi.target, "target")
    c = cokernel(phi.f)
    if not c.is_locally_free:
        raise InputError("not an MTS morphism: cokernel has torsion")
    p = c.projection
    steps = []
    for i in phi.target.weights:
        _, inc = phi.target.W(i)
        im = image_saturation(p @ inc)
        if im.torsion_length:
            raise TheoremViolation(f"image of W_{i} in the cokernel is not saturated")
        steps.append((i, im.bundle, im.incl))
    out = MixedTwistorStructure(c.free_part, steps)
    rep = validate_mts(out)
    if not rep.valid:
        raise TheoremViolation("cokernel is not a mixed twistor structure", {"report": rep.to_json()})
    return out, p


def mts_cokernel(phi: MtsMorphism) -> MixedTwistorStructure:
    return mts_cokernel_map(phi)[0]


def _is_iso(g: BundleMap) -> bool:
    return g.source == g.target and is_strict_injection(g) and is_strict_surjection(g)


def mts_image_coimage(phi: MtsMorphism):
    """``(image, coimage, comparison)`` with ``comparison: coimage -> image`` a filtered iso."""
    C, p = mts_cokernel_map(phi)
    image, im_incl = mts_kernel_map(MtsMorphism(phi.target, C, p))
    K, k = mts_kernel_map(phi)
    coimage, coim_proj = mts_cokernel_map(MtsMorphism(K, phi.source, k))
    g = factor_through_injection(phi.f, im_incl)
    c = factor_through_surjection(g, coim_proj) if g is not None else None
    dump = {"map": phi.f.to_json()}
    if c is None or not _is_iso(c):
        raise TheoremViolation("image and coimage differ", dump)
    for i in sorted(set(image.weights) | set(coimage.weights)):
        Wc, ic = coimage.W(i)
        Wi, ii = image.W(i)
        ci = factor_through_injection(c @ ic, ii)
        if ci is None or (Wc.rank and not _is_iso(ci)) or Wc != Wi:
            raise TheoremViolation(f"comparison is not strict at weight {i}", dump)
    return image, coimage, c


# ---------------------------------------------------------------------------
# fibres, twists, tensor products


@dataclass(frozen=True)
class FilteredVectorSpace:
    """A vector space ``K^dim`` with an increasing filtration ``{i: basis vectors}``."""

    dim: int
    steps: dict

    def dims(self):
        return {i: len(b) for i, b in self.steps.items()}


def fiber_functor(M: MixedTwistorStructure, point) -> FilteredVectorSpace:
    lam, mu = point
    if not lam and not mu:
        raise InputError("point [0:0] is not on P^1")
    steps = {}
    for i in M.weights:
        _, inc = M.W(i)
        ev = inc.evaluate(lam, mu)
        cols = [[ev[r][c] for r in range(M.total.rank)] for c in range(inc.source.rank)]
        steps[i] = mx.column_space(cols, M.total.rank)
    return FilteredVectorSpace(M.total.rank, steps)


def tate_twist(M: MixedTwistorStructure, n: int) -> MixedTwistorStructure:
    steps = [(i + 2 * n, twist(W, 2 * n), twist_map(inc, 2 * n)) for i, (W, inc) in sorted(M.steps.items())]
    return MixedTwistorStructure(twist(M.total, 2 * n), steps)


def mts_tensor(M: MixedTwistorStructure, N: MixedTwistorStructure) -> MixedTwistorStructure:
    """Tensor product when at least one factor is pure (e.g. a Tate twistor)."""
    if len(N.weights) > 1 or N.total.rank == 0:
        if len(M.weights) <= 1 and M.total.rank:
            M, N = N, M
        else:
            raise InputError("tensor product is implemented with one pure factor")
    w = N.lo
    ident = BundleMap.identity(N.total)
    from .bundles import tensor

    steps = [(i + w, tensor(W, N.total), tensor_map(inc, ident)) for i, (W, inc) in sorted(M.steps.items())]
    return MixedTwistorStructure(tensor(M.total, N.total), steps)


# ---------------------------------------------------------------------------
# generators


def extension_mts(blocks, cocycles=None) -> MixedTwistorStructure:
    """MTS glued from pure pieces ``blocks = [(weight, rank), ...]`` (ascending weights).

    ``cocycles[(k, l)]`` for ``k < l`` is a matrix of Laurent cocycles (rows of
    block ``k``, columns of block ``l``) in the U_0 frames; the transition is
    block upper triangular with ``D_k C_kl`` off the diagonal.
    """
    cocycles = cocycles or {}
    ws = [w for w, _ in blocks]
    if ws != sorted(ws) or len(set(ws)) != len(ws):
        raise InputError("blocks must have strictly increasing weights")
    offs, n = [], 0
    for _, r in blocks:
        offs.append(n)
        n += r
    T = mx.pzeros(n, n)
    for k, (w, r) in enumerate(blocks):
        for a in range(r):
            T[offs[k] + a][offs[k] + a] = mono(-w)
    for (k, l), C in cocycles.items():
        wk = blocks[k][0]
        for a in range(blocks[k][1]):
            for b in range(blocks[l][1]):
                T[offs[k] + a][offs[l] + b] = C[a][b].shift(-wk)
    sp = birkhoff_split(T)
    E = SplitBundle(sp.degrees)
    steps = []
    for k, (w, r) in enumerate(blocks):
        m = offs[k] + r
        Tk = [row[:m] for row in T[:m]]
        spk = birkhoff_split(Tk)
        mat = mx.pmul(mx.pcols(sp.A, range(m), nrows=n), spk.Ainv, inner=m)
        Wk = SplitBundle(spk.degrees)
        steps.append((w, Wk, BundleMap(Wk, E, mat, check=True)))
    return MixedTwistorStructure(E, steps)


def random_mts(rng: random.Random, max_rank: int = 4, weights=(0, 3)) -> MixedTwistorStructure:
    """A random MTS with nonsplit extension data between its pure pieces."""
    rank = rng.randint(1, max_rank)
    lo, hi = weights
    ws = sorted(rng.randint(lo, hi) for _ in range(rank))
    blocks = []
    for w in ws:
        if blocks and blocks[-1][0] == w:
            blocks[-1] = (w, blocks[-1][1] + 1)
        else:
            blocks.append((w, 1))
    cocycles = {}
    for k in range(len(blocks)):
        for l in range(k + 1, len(blocks)):
            wk, wl = blocks[k][0], blocks[l][0]
            exps = list(range(wk - wl + 1, 0))
            if not exps:
                continue
            C = [
                [Laurent.from_dict({e: Fraction(rng.randint(-2, 2)) for e in exps}) for _ in range(blocks[l][1])]
                for _ in range(blocks[k][1])
            ]
            cocycles[(k, l)] = C
    return extension_mts(blocks, cocycles)


def _coeff_vector(maps):
    out = {}
    for tag, g in maps:
        for r, row in enumerate(g.mat):
            for c, e in enumerate(row):
                for x, v in e.terms().items():
                    out[(tag, r, c, x)] = v
    return out


def filtered_hom_basis(M: MixedTwistorStructure, N: MixedTwistorStructure):
    """Basis of the filtered morphisms ``M -> N`` (solving ``pi'_i h iota_i = 0``)."""
    _, basis = hom_space(M.total, N.total)
    if not basis:
        return []
    tests = []
    for i in M.weights:
        _, inc = M.W(i)
        _, inc2 = N.W(i)
        tests.append((i, inc, cokernel(inc2).projection))
    cols = [_coeff_vector((i, p @ h @ inc) for i, inc, p in tests) for h in basis]
    keys = sorted({k for c in cols for k in c}, key=repr)
    A = [[c.get(k, Fraction(0)) for c in cols] for k in keys]
    null = mx.nullspace(A, len(basis))
    out = []
    for v in null:
        acc = BundleMap.zero(M.total, N.total)
        for coef, h in zip(v, basis):
            if coef:
                acc = acc + h.scale(coef)
        out.append(acc)
    return out


def random_morphism(rng: random.Random, M: MixedTwistorStructure, N: MixedTwistorStructure) -> MtsMorphism:
    basis = filtered_hom_basis(M, N)
    f = BundleMap.zero(M.total, N.total)
    picked = [h for h in basis if rng.random() < 0.6]
    if basis and not picked:
        picked = [rng.choice(basis)]
    for h in picked:
        f = f + h.scale(Fraction(rng.choice((-2, -1, 1, 2))))
    return MtsMorphism(M, N, f)
