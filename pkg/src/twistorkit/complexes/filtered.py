"""Bounded complexes of split bundles with an increasing preweight filtration."""
from __future__ import annotations

from dataclasses import dataclass

from ..bundles import (
    BundleMap,
    DirectSum,
    SplitBundle,
    block_map,
    cokernel,
    factor_through_injection,
    factor_through_surjection,
    is_strict_injection,
    kernel,
)
from ..errors import InputError, TheoremViolation
from ..exactalg import matrix as mx
from ..exactalg.poly import ONE

__all__ = [
    "Complex", "FilteredComplex", "FilteredMap", "HReport", "cohomology_sheaves",
    "MtcReport", "validate_mtc", "cone", "direct_sum", "simplicial_total", "shift",
]


class Complex:
    """``M^k`` with differentials ``d^k: M^k -> M^{k+1}`` (missing ones are zero)."""

    def __init__(self, objects: dict, d: dict | None = None):
        self.objects = {int(k): v for k, v in objects.items() if v.rank}
        self._d = {}
        for k, f in (d or {}).items():
            k = int(k)
            if f.source != self.obj(k) or f.target != self.obj(k + 1):
                raise InputError(f"differential d^{k} has wrong source or target")
            if not f.is_zero():
                self._d[k] = f

    def obj(self, k: int) -> SplitBundle:
        return self.objects.get(k, SplitBundle(()))

    def d(self, k: int) -> BundleMap:
        f = self._d.get(k)
        return f if f is not None else BundleMap.zero(self.obj(k), self.obj(k + 1))

    def degrees(self):
        if not self.objects:
            return range(0)
        ks = sorted(self.objects)
        return range(ks[0], ks[-1] + 1)

    def check(self):
        for k in self.degrees():
            if not (self.d(k + 1) @ self.d(k)).is_zero():
                raise InputError(f"not a complex: d^{k + 1} d^{k} != 0")
        return self

    def euler_char(self) -> int:
        return sum((-1) ** (k % 2) * self.obj(k).euler_char() for k in self.degrees())


class FilteredComplex(Complex):
    """A complex with sub-complexes ``W_n`` given by strict inclusions per degree.

    ``levels`` maps ``n`` to ``{k: inclusion W_n M^k -> M^k}``. Below the
    smallest level ``W_n = 0``; a level equal to everything is appended on top
    when needed, so ``W_n = M`` for ``n >= top``. Gaps repeat the level below.
    """

    def __init__(self, objects: dict, d: dict | None, levels: dict, check: bool = True):
        super().__init__(objects, d)
        self.levels = {}
        for n, per in levels.items():
            n = int(n)
            incl = {}
            for k in self.degrees():
                f = per.get(k, per.get(str(k)))
                if f is None:
                    f = BundleMap.zero(SplitBundle(()), self.obj(k))
                if f.target != self.obj(k):
                    raise InputError(f"preweight level {n} degree {k}: target mismatch")
                incl[k] = f
            self.levels[n] = incl
        if not self.levels:
            self.levels[0] = {k: BundleMap.identity(self.obj(k)) for k in self.degrees()}
        top = max(self.levels)
        if any(self.levels[top][k].source.rank != self.obj(k).rank for k in self.degrees()):
            self.levels[top + 1] = {k: BundleMap.identity(self.obj(k)) for k in self.degrees()}
        self._cache = {}
        if check:
            self.check()

    # construction helpers --------------------------------------------------------
    @classmethod
    def split(cls, objects: dict, d: dict | None, weights: dict, check: bool = True):
        """Filtration by summands: ``weights[k][j]`` is the level of summand j of M^k."""
        objects = {int(k): v for k, v in objects.items()}
        ns = sorted({w for ws in weights.values() for w in ws}) or [0]
        levels = {}
        for n in ns:
            per = {}
            for k, M in objects.items():
                ws = weights.get(k, [ns[0]] * M.rank)
                if len(ws) != M.rank:
                    raise InputError(f"degree {k}: need {M.rank} summand weights")
                idx = [j for j in range(M.rank) if ws[j] <= n]
                S = SplitBundle([M.degrees[j] for j in idx])
                mat = mx.pzeros(M.rank, len(idx))
                # S keeps the descending order of the chosen summands
                for c, j in enumerate(idx):
                    mat[j][c] = ONE
                per[k] = BundleMap(S, M, mat, check=False)
            levels[n] = per
        return cls(objects, d, levels, check=check)

    @property
    def range(self):
        ks = sorted(self.levels)
        return ks[0], ks[-1]

    def W(self, n: int, k: int) -> BundleMap:
        lo, hi = self.range
        if n < lo or k not in self.degrees():
            return BundleMap.zero(SplitBundle(()), self.obj(k))
        if n >= hi:
            return BundleMap.identity(self.obj(k))
        m = max(x for x in self.levels if x <= n)
        return self.levels[m][k]

    def quotient(self, n: int, k: int) -> BundleMap:
        """Projection ``M^k -> M^k / W_n M^k`` (locally free since W_n is strict)."""
        key = ("q", n, k)
        if key not in self._cache:
            rep = cokernel(self.W(n, k))
            if not rep.is_locally_free:
                raise InputError(f"preweight level {n} in degree {k} is not a strict subbundle")
            self._cache[key] = rep.projection
        return self._cache[key]

    def sub_d(self, n: int, k: int) -> BundleMap:
        """Differential of the sub-complex ``W_n``."""
        key = ("d", n, k)
        if key not in self._cache:
            h = factor_through_injection(self.d(k) @ self.W(n, k), self.W(n, k + 1))
            if h is None:
                raise InputError(f"preweight level {n} is not a sub-complex in degree {k}")
            self._cache[key] = h
        return self._cache[key]

    def sub_complex(self, n: int) -> Complex:
        ks = list(self.degrees())
        return Complex({k: self.W(n, k).source for k in ks}, {k: self.sub_d(n, k) for k in ks})

    def graded(self, n: int) -> "Complex":
        """``Gr_n = W_n / W_{n-1}`` with the induced differential."""
        key = ("gr", n)
        if key in self._cache:
            return self._cache[key]
        ks = list(self.degrees())
        proj = {}
        for k in list(ks) + [ks[-1] + 1 if ks else 0]:
            j = factor_through_injection(self.W(n - 1, k), self.W(n, k))
            if j is None:
                raise InputError(f"preweight is not monotone at level {n}")
            rep = cokernel(j)
            if not rep.is_locally_free:
                raise InputError(f"preweight level {n - 1} is not strict inside level {n}")
            proj[k] = rep.projection
        objs, ds = {}, {}
        for k in ks:
            objs[k] = proj[k].target
            g = proj[k + 1] @ self.sub_d(n, k)
            h = factor_through_surjection(g, proj[k])
            if h is None:
                raise TheoremViolation("differential does not descend to the graded piece")
            ds[k] = h
        out = Complex(objs, ds)
        self._cache[key] = out
        return out

    def check(self):
        super().check()
        lo, hi = self.range
        for n in range(lo, hi + 1):
            for k in self.degrees():
                i = self.W(n, k)
                if i.source.rank and not is_strict_injection(i):
                    raise InputError(f"preweight level {n} in degree {k} is not a strict subbundle")
                self.sub_d(n, k)
            self.graded(n)
        return self

    def to_json(self):
        from ..serialize import complex_to_json

        return complex_to_json(self)


def shift(C: FilteredComplex, s: int = 1, wshift: int = 0) -> FilteredComplex:
    """``C[s]`` (``M^k -> M^{k+s}``, ``d -> (-1)^s d``) with levels moved by ``wshift``."""
    sign = -1 if s % 2 else 1
    objs = {k - s: C.obj(k) for k in C.degrees()}
    ds = {k - s: C.d(k).scale(sign) for k in C.degrees()}
    lo, hi = C.range
    levels = {n + wshift: {k - s: C.W(n, k) for k in C.degrees()} for n in range(lo, hi + 1)}
    return FilteredComplex(objs, ds, levels)


# ---------------------------------------------------------------------------
# cohomology sheaves


@dataclass(frozen=True)
class HReport:
    """``H^i``: torsion divisors, free part, cycles ``Z -> M^i`` and ``Z -> H^i``."""

    degree: int
    torsion_divisors: tuple
    bundle: SplitBundle
    cycles: BundleMap
    projection: BundleMap

    @property
    def torsion_length(self) -> int:
        return sum(d.degree for d in self.torsion_divisors)

    def to_json(self):
        return {
            "degree": self.degree,
            "torsion_divisors": [d.to_json() for d in self.torsion_divisors],
            "bundle": self.bundle.to_json(),
        }


def cohomology_sheaves(C: Complex) -> dict:
    """``{i: HReport}`` for every degree, with Euler-characteristic bookkeeping."""
    out = {}
    ks = list(C.degrees())
    for i in ks:
        K, kin = kernel(C.d(i))
        g = factor_through_injection(C.d(i - 1), kin)
        if g is None:
            raise TheoremViolation("boundaries are not cycles", {"degree": i})
        rep = cokernel(g)
        out[i] = HReport(i, rep.torsion_divisors, rep.free_part, kin, rep.projection)
    lhs = sum((-1) ** (i % 2) * (h.bundle.euler_char() + h.torsion_length) for i, h in out.items())
    if lhs != C.euler_char():
        raise TheoremViolation("Euler characteristic bookkeeping fails", {"H": lhs, "M": C.euler_char()})
    return out


# ---------------------------------------------------------------------------
# mixed twistor complexes


@dataclass
class MtcReport:
    """Per ``(n, i)``: the graded cohomology ``H^i(Gr_n)`` and whether it is pure of weight n+i."""

    entries: dict

    @property
    def valid(self) -> bool:
        return all(e["ok"] for e in self.entries.values())

    @property
    def failures(self):
        return sorted(k for k, e in self.entries.items() if not e["ok"])

    def to_json(self):
        return {
            "valid": self.valid,
            "entries": [
                {"n": n, "i": i, "ok": e["ok"], "torsion_length": e["torsion_length"], "bundle": e["bundle"].to_json()}
                for (n, i), e in sorted(self.entries.items())
            ],
        }


def validate_mtc(C: FilteredComplex) -> MtcReport:
    lo, hi = C.range
    entries = {}
    for n in range(lo, hi + 1):
        for i, h in cohomology_sheaves(C.graded(n)).items():
            ok = not h.torsion_divisors and h.bundle.is_pure(n + i)
            entries[(n, i)] = {"ok": ok, "torsion_length": h.torsion_length, "bundle": h.bundle}
    return MtcReport(entries)


# ---------------------------------------------------------------------------
# maps, cones, total complexes


class FilteredMap:
    """Degree-wise bundle maps ``f^k: A^k -> B^k`` commuting with d and preserving W."""

    def __init__(self, source: FilteredComplex, target: FilteredComplex, maps: dict, check: bool = True):
        self.source, self.target = source, target
        self.maps = {}
        for k in set(source.degrees()) | set(target.degrees()):
            f = maps.get(k)
            if f is None:
                f = BundleMap.zero(source.obj(k), target.obj(k))
            if f.source != source.obj(k) or f.target != target.obj(k):
                raise InputError(f"map component f^{k} has wrong source or target")
            self.maps[k] = f
        if check:
            self.check()

    def __getitem__(self, k):
        return self.maps.get(k) or BundleMap.zero(self.source.obj(k), self.target.obj(k))

    def check(self):
        A, B = self.source, self.target
        ks = sorted(set(A.degrees()) | set(B.degrees()))
        for k in ks:
            if self[k + 1] @ A.d(k) != B.d(k) @ self[k]:
                raise InputError(f"map does not commute with differentials in degree {k}")
        lo = min(A.range[0], B.range[0])
        hi = max(A.range[1], B.range[1])
        for n in range(lo, hi + 1):
            for k in ks:
                if factor_through_injection(self[k] @ A.W(n, k), B.W(n, k)) is None:
                    raise InputError(f"map does not preserve preweight level {n} in degree {k}")
        return self


def _sum_inclusion(parts_big, incls) -> BundleMap:
    """``(+) S_j -> (+) M_j`` block-diagonal from inclusions ``S_j -> M_j``."""
    src = DirectSum([f.source for f in incls])
    return block_map(src, parts_big, {(j, j): f for j, f in enumerate(incls)})


def cone(f: FilteredMap, mixed: bool = False) -> FilteredComplex:
    """``C^k = A^{k+1} + B^k``, ``d(a, b) = (-d_A a, f(a) + d_B b)``.

    The filtration is the levelwise sum ``W_n A^{k+1} + W_n B^k``; with
    ``mixed=True`` the source is shifted, ``W_{n-1} A^{k+1} + W_n B^k``, which
    keeps the graded cohomology pure when A and B are mixed twistor complexes.
    """
    A, B = f.source, f.target
    s = 1 if mixed else 0
    lo = min(A.range[0] + s, B.range[0])
    hi = max(A.range[1] + s, B.range[1])
    ks = sorted({k - 1 for k in A.degrees()} | set(B.degrees()))
    if not ks:
        return FilteredComplex({}, {}, {})
    ks = range(ks[0], ks[-1] + 1)
    sums = {k: DirectSum([A.obj(k + 1), B.obj(k)]) for k in list(ks) + [ks[-1] + 1]}
    objs = {k: sums[k].bundle for k in ks}
    ds = {}
    for k in ks:
        ds[k] = block_map(sums[k], sums[k + 1], {(0, 0): -A.d(k + 1), (1, 0): f[k + 1], (1, 1): B.d(k)})
    levels = {
        n: {k: _sum_inclusion(sums[k], [A.W(n - s, k + 1), B.W(n, k)]) for k in ks} for n in range(lo, hi + 1)
    }
    return FilteredComplex(objs, ds, levels)


def direct_sum(parts) -> FilteredComplex:
    """Degreewise direct sum of filtered complexes."""
    parts = [C for C in parts if C.objects]
    if not parts:
        return FilteredComplex({}, {}, {})
    ks = sorted({k for C in parts for k in C.degrees()})
    ks = range(ks[0], ks[-1] + 1)
    sums = {k: DirectSum([C.obj(k) for C in parts]) for k in list(ks) + [ks[-1] + 1]}
    ds = {k: block_map(sums[k], sums[k + 1], {(j, j): C.d(k) for j, C in enumerate(parts)}) for k in ks}
    lo = min(C.range[0] for C in parts)
    hi = max(C.range[1] for C in parts)
    levels = {n: {k: _sum_inclusion(sums[k], [C.W(n, k) for C in parts]) for k in ks} for n in range(lo, hi + 1)}
    return FilteredComplex({k: sums[k].bundle for k in ks}, ds, levels)


def simplicial_total(family, cofaces) -> FilteredComplex:
    """Total complex of a cosimplicial family ``M_0, M_1, ...``.

    ``cofaces[k]`` lists the coface maps ``M_k -> M_{k+1}`` (FilteredMaps with
    their own filtrations). ``N^j = (+)_{i+k=j} M^i_k``,
    ``D = delta + (-1)^k d`` with ``delta = sum_l (-1)^l coface_l`` and
    ``W_n N^j = (+) W_{n+k} M^i_k``.
    """
    family = list(family)
    if not family:
        return FilteredComplex({}, {}, {})
    deltas = []
    for k in range(len(family) - 1):
        faces = cofaces[k] if k < len(cofaces) else []
        comp = {}
        for i in set(family[k].degrees()) | set(family[k + 1].degrees()):
            acc = BundleMap.zero(family[k].obj(i), family[k + 1].obj(i))
            for l_, face in enumerate(faces):
                acc = acc + (face[i] if l_ % 2 == 0 else -face[i])
            comp[i] = acc
        # a filtered map M_k -> M_{k+1}[weights shifted by one]: checked below through D
        deltas.append(comp)
    degs = [(i, k) for k, M in enumerate(family) for i in M.degrees()]
    if not degs:
        return FilteredComplex({}, {}, {})
    js = range(min(i + k for i, k in degs), max(i + k for i, k in degs) + 1)

    def parts(j):
        return [(i, k) for k, M in enumerate(family) for i in M.degrees() if i + k == j]

    sums = {j: (parts(j), DirectSum([family[k].obj(i) for i, k in parts(j)])) for j in list(js) + [js[-1] + 1]}
    ds = {}
    for j in js:
        src_parts, src = sums[j]
        tgt_parts, tgt = sums[j + 1]
        blocks = {}
        for a, (i, k) in enumerate(src_parts):
            sign = -1 if k % 2 else 1
            if (i + 1, k) in tgt_parts:
                blocks[(tgt_parts.index((i + 1, k)), a)] = family[k].d(i).scale(sign)
            if (i, k + 1) in tgt_parts and k < len(deltas):
                blocks[(tgt_parts.index((i, k + 1)), a)] = deltas[k][i]
        ds[j] = block_map(src, tgt, blocks)
    lo = min(M.range[0] - k for k, M in enumerate(family))
    hi = max(M.range[1] - k for k, M in enumerate(family))
    levels = {}
    for n in range(lo, hi + 1):
        levels[n] = {
            j: _sum_inclusion(sums[j][1], [family[k].W(n + k, i) for i, k in sums[j][0]]) for j in js
        }
    return FilteredComplex({j: sums[j][1].bundle for j in js}, ds, levels)
