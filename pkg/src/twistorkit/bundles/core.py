"""Split bundles on P^1 and maps between them.

Convention: ``t = lambda/mu`` vanishes at 0, ``s = 1/t`` at infinity, and
``O(n)`` is glued by the transition ``t**-n`` (U_inf coefficients equal
``t**-n`` times U_0 coefficients). Global sections of ``O(n)`` are binary forms
of degree ``n``.

A :class:`BundleMap` is stored through its chart-0 matrix: entry ``(i, j)`` is
the polynomial ``m_ij(t, 1)`` of degree at most ``target[i] - source[j]``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import InputError
from ..exactalg import matrix as mx
from ..exactalg.forms import BinaryForm
from ..exactalg.poly import ONE, ZERO, mono


@dataclass(frozen=True)
class SplitBundle:
    """``O(d_1) + ... + O(d_r)`` with degrees sorted descending."""

    degrees: tuple

    def __init__(self, degrees=()):
        object.__setattr__(self, "degrees", tuple(sorted((int(d) for d in degrees), reverse=True)))

    @property
    def rank(self) -> int:
        return len(self.degrees)

    @property
    def degree(self) -> int:
        return sum(self.degrees)

    def is_pure(self, w: int | None = None) -> bool:
        if not self.degrees:
            return True
        if w is None:
            return len(set(self.degrees)) == 1
        return all(d == w for d in self.degrees)

    def euler_char(self) -> int:
        return sum(d + 1 for d in self.degrees)

    def chart_transition(self):
        """Diagonal ``t**-d_j`` matrix (U_0 coordinates -> U_inf coordinates)."""
        return mx.pdiag([mono(-d) for d in self.degrees])

    def __repr__(self):
        if not self.degrees:
            return "0"
        return " + ".join(f"O({d})" for d in self.degrees)

    def to_json(self):
        return {"degrees": list(self.degrees)}

    @classmethod
    def from_json(cls, obj) -> "SplitBundle":
        if not isinstance(obj, dict) or not isinstance(obj.get("degrees"), list):
            raise InputError(f"bundle needs a 'degrees' list: {obj!r}")
        for d in obj["degrees"]:
            if not isinstance(d, int) or isinstance(d, bool):
                raise InputError(f"bundle field 'degrees' must hold integers, got {d!r}")
        return cls(obj["degrees"])


def O(*degrees) -> SplitBundle:
    return SplitBundle(degrees)


def sort_permutation(degrees):
    """Positions of the original summands inside the descending-sorted bundle."""
    order = sorted(range(len(degrees)), key=lambda j: (-degrees[j], j))
    pos = [0] * len(degrees)
    for new, old in enumerate(order):
        pos[old] = new
    return pos


class BundleMap:
    """A morphism of split bundles, stored through its chart-0 polynomial matrix."""

    __slots__ = ("source", "target", "mat")

    def __init__(self, source: SplitBundle, target: SplitBundle, mat, check: bool = True):
        self.source = source
        self.target = target
        self.mat = [list(r) for r in mat]
        if check:
            self._check()

    def _check(self):
        if len(self.mat) != self.target.rank or any(len(r) != self.source.rank for r in self.mat):
            raise InputError(
                f"matrix shape {len(self.mat)}x{len(self.mat[0]) if self.mat else 0} does not match "
                f"{self.target.rank}x{self.source.rank}"
            )
        for i, b in enumerate(self.target.degrees):
            for j, a in enumerate(self.source.degrees):
                e = self.mat[i][j]
                if e.coeffs and (e.low < 0 or e.high > b - a):
                    raise InputError(f"entry ({i},{j}) = {e} violates degree bound {b - a}")

    # constructors -----------------------------------------------------------
    @classmethod
    def zero(cls, source, target):
        return cls(source, target, mx.pzeros(target.rank, source.rank), check=False)

    @classmethod
    def identity(cls, bundle):
        return cls(bundle, bundle, mx.peye(bundle.rank), check=False)

    @classmethod
    def from_forms(cls, source, target, forms):
        """Build from a matrix of :class:`BinaryForm` (or ``None`` for zero entries)."""
        mat = []
        for i, row in enumerate(forms):
            out = []
            for j, f in enumerate(row):
                if f is None:
                    out.append(ZERO)
                    continue
                need = target.degrees[i] - source.degrees[j]
                if f.degree != need:
                    raise InputError(f"entry ({i},{j}) has degree {f.degree}, expected {need}")
                out.append(f.chart0())
            mat.append(out)
        return cls(source, target, mat)

    # views --------------------------------------------------------------------
    def form(self, i: int, j: int):
        """Entry as a :class:`BinaryForm`, or ``None`` where the degree is negative."""
        d = self.target.degrees[i] - self.source.degrees[j]
        if d < 0:
            return None
        return BinaryForm.from_chart0(self.mat[i][j], d)

    def forms(self):
        return [[self.form(i, j) for j in range(self.source.rank)] for i in range(self.target.rank)]

    def chart0(self):
        return self.mat

    def chart_inf(self):
        """Matrix in U_inf coordinates: ``D_target @ M0 @ D_source^-1``."""
        tb, sb = self.target.degrees, self.source.degrees
        return [[self.mat[i][j].shift(sb[j] - tb[i]) for j in range(len(sb))] for i in range(len(tb))]

    def chart(self, which: str):
        return self.mat if which == "0" else self.chart_inf()

    def evaluate(self, lam, mu):
        """Scalar matrix of the map on fibres at ``[lam : mu]`` in the monomial frames."""
        out = []
        for i in range(self.target.rank):
            row = []
            for j in range(self.source.rank):
                f = self.form(i, j)
                row.append(f(lam, mu) if f is not None else Fraction(0))
            out.append(row)
        return out

    def is_zero(self) -> bool:
        return mx.pis_zero(self.mat)

    # algebra --------------------------------------------------------------------
    def __matmul__(self, other: "BundleMap") -> "BundleMap":
        if other.target != self.source:
            raise InputError(f"cannot compose: {other.target} != {self.source}")
        return BundleMap(other.source, self.target, mx.pmul(self.mat, other.mat, inner=self.source.rank, ncols=other.source.rank), check=False)

    def __add__(self, other: "BundleMap") -> "BundleMap":
        self._same(other)
        return BundleMap(self.source, self.target, mx.padd(self.mat, other.mat), check=False)

    def __sub__(self, other: "BundleMap") -> "BundleMap":
        self._same(other)
        return BundleMap(self.source, self.target, mx.psub(self.mat, other.mat), check=False)

    def __neg__(self):
        return BundleMap(self.source, self.target, mx.pneg(self.mat), check=False)

    def scale(self, c) -> "BundleMap":
        return BundleMap(self.source, self.target, [[e * c for e in r] for r in self.mat], check=False)

    def _same(self, other):
        if self.source != other.source or self.target != other.target:
            raise InputError("maps have different source/target")

    def __eq__(self, other):
        if not isinstance(other, BundleMap):
            return NotImplemented
        return self.source == other.source and self.target == other.target and self.mat == other.mat

    def __hash__(self):
        return hash((self.source, self.target, tuple(tuple(r) for r in self.mat)))

    def __repr__(self):
        return f"BundleMap({self.source} -> {self.target}, {self.forms()})"

    def to_json(self):
        return {
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "matrix": [[f.to_json() if f is not None else None for f in row] for row in self.forms()],
        }

    @classmethod
    def from_json(cls, obj) -> "BundleMap":
        if not isinstance(obj, dict):
            raise InputError("map document must be an object")
        for key in ("source", "target", "matrix"):
            if key not in obj:
                raise InputError(f"map document missing field '{key}'")
        src = SplitBundle.from_json(obj["source"])
        tgt = SplitBundle.from_json(obj["target"])
        rows = obj["matrix"]
        if not isinstance(rows, list) or len(rows) != tgt.rank:
            raise InputError(f"map field 'matrix' must have {tgt.rank} rows")
        forms = []
        for i, row in enumerate(rows):
            if not isinstance(row, list) or len(row) != src.rank:
                raise InputError(f"map field 'matrix' row {i} must have {src.rank} entries")
            out = []
            for j, f in enumerate(row):
                if f is None:
                    out.append(None)
                    continue
                if tgt.degrees[i] - src.degrees[j] < 0:
                    raise InputError(f"map field 'matrix' entry ({i},{j}) must be null (negative degree)")
                out.append(BinaryForm.from_json(f))
            forms.append(out)
        return cls.from_forms(src, tgt, forms)


class DirectSum:
    """A direct sum of split bundles, re-sorted, with its injections and projections."""

    def __init__(self, parts):
        self.parts = list(parts)
        flat = []
        self._offsets = []
        for p in self.parts:
            self._offsets.append(len(flat))
            flat.extend(p.degrees)
        self._pos = sort_permutation(flat)
        self.bundle = SplitBundle(flat)

    def index(self, part: int, j: int) -> int:
        """Sorted position of summand ``j`` of part ``part``."""
        return self._pos[self._offsets[part] + j]

    def indices(self, part: int):
        return [self.index(part, j) for j in range(self.parts[part].rank)]

    def inj(self, part: int) -> BundleMap:
        P = self.parts[part]
        mat = mx.pzeros(self.bundle.rank, P.rank)
        for j in range(P.rank):
            mat[self.index(part, j)][j] = ONE
        return BundleMap(P, self.bundle, mat, check=False)

    def proj(self, part: int) -> BundleMap:
        P = self.parts[part]
        mat = mx.pzeros(P.rank, self.bundle.rank)
        for j in range(P.rank):
            mat[j][self.index(part, j)] = ONE
        return BundleMap(self.bundle, P, mat, check=False)


def block_map(src: DirectSum, tgt: DirectSum, blocks: dict) -> BundleMap:
    """Assemble ``src.bundle -> tgt.bundle`` from ``{(tgt_part, src_part): BundleMap}``."""
    mat = mx.pzeros(tgt.bundle.rank, src.bundle.rank)
    for (ti, si), f in blocks.items():
        if f.source != src.parts[si] or f.target != tgt.parts[ti]:
            raise InputError(f"block ({ti},{si}) has wrong source/target")
        for a in range(f.target.rank):
            ra = tgt.index(ti, a)
            for b in range(f.source.rank):
                e = f.mat[a][b]
                if e.coeffs:
                    cb = src.index(si, b)
                    mat[ra][cb] = mat[ra][cb] + e
    return BundleMap(src.bundle, tgt.bundle, mat, check=False)


def direct_sum_map(fs) -> BundleMap:
    """Block-diagonal sum of maps."""
    src = DirectSum([f.source for f in fs])
    tgt = DirectSum([f.target for f in fs])
    return block_map(src, tgt, {(k, k): f for k, f in enumerate(fs)})


def stack_maps_rows(fs) -> BundleMap:
    """``X -> (+) Y_k`` from maps ``f_k: X -> Y_k`` (column of blocks)."""
    src = DirectSum([fs[0].source])
    tgt = DirectSum([f.target for f in fs])
    return block_map(src, tgt, {(k, 0): f for k, f in enumerate(fs)})


def stack_maps_cols(fs) -> BundleMap:
    """``(+) X_k -> Y`` from maps ``f_k: X_k -> Y`` (row of blocks)."""
    src = DirectSum([f.source for f in fs])
    tgt = DirectSum([fs[0].target])
    return block_map(src, tgt, {(0, k): f for k, f in enumerate(fs)})


def form_matrix_from_chart0(source, target, mat) -> BundleMap:
    """Validate that a chart-0 matrix is a global map and wrap it."""
    return BundleMap(source, target, mat, check=True)

