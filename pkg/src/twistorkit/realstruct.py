"""Antipodal and circular real structures, Tate twistors, and quaternionic spaces.

The antipode acts on P^1 by ``[lam : mu] -> [-conj(mu) : conj(lam)]`` and on
forms by ``(sigma f)(lam, mu) = conj(f)(mu, -lam)``; the circular involution
is ``[lam : mu] -> [conj(mu) : conj(lam)]`` with ``(tau f)(lam, mu) =
conj(f)(mu, lam)``. A real structure on a split bundle is a constant Gaussian
matrix ``S`` acting on section vectors by ``v -> S sigma(v)`` (or ``S tau(v)``).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bundles import O, BundleMap, SplitBundle, cohomology, cokernel
from .bundles.ops import _tensor_positions
from .errors import FieldError, InputError, TheoremViolation
from .exactalg import matrix as mx
from .exactalg import scalars
from .exactalg.forms import BinaryForm
from .exactalg.scalars import I, conj, gauss

__all__ = [
    "sigma_conjugate", "tau_conjugate", "sigma_point", "tau_point",
    "RealStructure", "QuaternionicSpace", "weight0_real_space",
    "quaternionic_from_weight1", "tate_twistor", "standard_quaternionic",
    "tensor_real", "antilinear_fixed_space", "fiber_real_space",
    "TwistorLine", "twistor_from_quaternionic",
]

KINDS = ("antipodal", "circular")


def _need_gaussian(field: str):
    if field != "gaussian":
        raise FieldError("conjugation requires Gaussian field")


def sigma_conjugate(f, field: str = "gaussian"):
    """Antipodal conjugate of a form (entrywise on a :class:`BundleMap`)."""
    _need_gaussian(field)
    if isinstance(f, BundleMap):
        return _entrywise(f, sigma_conjugate)
    d = f.degree
    out = [Fraction(0)] * (d + 1)
    for k, c in enumerate(f.coeffs):
        out[d - k] = conj(c) if (d - k) % 2 == 0 else -conj(c)
    return BinaryForm(d, out)


def tau_conjugate(f, field: str = "gaussian"):
    """Circular conjugate of a form (entrywise on a :class:`BundleMap`)."""
    _need_gaussian(field)
    if isinstance(f, BundleMap):
        return _entrywise(f, tau_conjugate)
    d = f.degree
    return BinaryForm(d, [conj(f.coeffs[d - k]) for k in range(d + 1)])


def _entrywise(f: BundleMap, op):
    forms = [[op(e) if e is not None else None for e in row] for row in f.forms()]
    return BundleMap.from_forms(f.source, f.target, forms)


def sigma_point(p):
    lam, mu = p
    return (-conj(mu), conj(lam))


def tau_point(p):
    lam, mu = p
    return (conj(mu), conj(lam))


def _conj_matrix(S):
    return [[conj(x) for x in row] for row in S]


def antilinear_fixed_space(S):
    """Q-basis of ``{v in Q(i)^n : S conj(v) = v}``.

    Splitting ``S = P + iQ`` and ``v = x + iy`` turns the condition into the
    rational system ``(P - 1)x + Qy = 0``, ``Qx - (P + 1)y = 0``.
    """
    n = len(S)
    P = [[scalars.re_part(x) for x in row] for row in S]
    Q = [[scalars.im_part(x) for x in row] for row in S]
    rows = []
    for r in range(n):
        rows.append([P[r][c] - (1 if r == c else 0) for c in range(n)] + [Q[r][c] for c in range(n)])
    for r in range(n):
        rows.append([Q[r][c] for c in range(n)] + [-P[r][c] - (1 if r == c else 0) for c in range(n)])
    return [[gauss(v[k], v[n + k]) for k in range(n)] for v in mx.nullspace(rows, 2 * n)]


@dataclass(frozen=True)
class RealStructure:
    kind: str
    bundle: SplitBundle
    S: tuple

    def __init__(self, kind: str, bundle: SplitBundle, S, check: bool = True):
        if kind not in KINDS:
            raise InputError(f"real structure kind must be one of {KINDS}, got {kind!r}")
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "bundle", bundle)
        object.__setattr__(self, "S", tuple(tuple(scalars.scalar(x) if isinstance(x, (int, str)) else x for x in r) for r in S))
        if check:
            self.check()

    def matrix(self):
        return [list(r) for r in self.S]

    def law_matrix(self):
        """``S conj(S)`` times the sign rule; the identity exactly when ``S`` is an involution."""
        S = self.matrix()
        M = mx.mul(S, _conj_matrix(S))
        if self.kind == "antipodal":
            M = [[x if d % 2 == 0 else -x for x, d in zip(row, self.bundle.degrees)] for row in M]
        return M

    def check(self):
        r = self.bundle.rank
        S = self.matrix()
        if len(S) != r or any(len(row) != r for row in S):
            raise InputError(f"real structure matrix must be {r}x{r}")
        degs = self.bundle.degrees
        for i in range(r):
            for j in range(r):
                if S[i][j] and degs[i] != degs[j]:
                    raise InputError(f"matrix entry ({i},{j}) links summands of different degree")
        if self.law_matrix() != mx.eye(r):
            raise InputError(f"not an {self.kind} structure: involution law fails")

    def apply(self, sections):
        """Apply ``v -> S conj(v)`` to a section vector (list of forms)."""
        op = sigma_conjugate if self.kind == "antipodal" else tau_conjugate
        conjd = [op(f) for f in sections]
        S = self.matrix()
        out = []
        for i in range(len(S)):
            acc = BinaryForm.zero(self.bundle.degrees[i])
            for j, c in enumerate(S[i]):
                if c:
                    acc = acc + conjd[j] * c
            out.append(acc)
        return out

    def to_json(self):
        return {
            "kind": self.kind,
            "bundle": self.bundle.to_json(),
            "matrix": [[scalars.to_json(x) for x in row] for row in self.S],
        }

    @classmethod
    def from_json(cls, obj):
        for key in ("kind", "bundle", "matrix"):
            if not isinstance(obj, dict) or key not in obj:
                raise InputError(f"real-structure document missing field '{key}'")
        if not isinstance(obj["matrix"], list):
            raise InputError("real-structure field 'matrix' must be a list")
        S = [[scalars.from_json(x) for x in row] for row in obj["matrix"]]
        return cls(obj["kind"], SplitBundle.from_json(obj["bundle"]), S)


def tensor_real(R1: RealStructure, R2: RealStructure) -> RealStructure:
    if R1.kind != R2.kind:
        raise InputError("cannot tensor antipodal with circular structures")
    _, pos = _tensor_positions(R1.bundle, R2.bundle)
    n1, n2 = R1.bundle.rank, R2.bundle.rank
    n = n1 * n2
    S = mx.zeros(n, n)
    for i in range(n1):
        for k in range(n2):
            for j in range(n1):
                for l in range(n2):
                    S[pos[i * n2 + k]][pos[j * n2 + l]] = R1.S[i][j] * R2.S[k][l]
    from .bundles import tensor

    return RealStructure(R1.kind, tensor(R1.bundle, R2.bundle), S)


def tate_twistor(n: int, field: str = "gaussian"):
    """``(O(2n), antipodal, circular)``; both structures use ``S = [1]``.

    With this normalisation the section ``(lam mu)**n`` spans the real
    sections up to the sign ``(-1)**n`` under the antipode.
    """
    _need_gaussian(field)
    E = SplitBundle([2 * n])
    return E, RealStructure("antipodal", E, [[1]]), RealStructure("circular", E, [[1]])


def weight0_real_space(R: RealStructure):
    """Basis (Gaussian vectors) of the real sections of a pure weight-0 structure."""
    if not R.bundle.is_pure(0):
        raise InputError("weight0_real_space needs a bundle pure of weight 0")
    return antilinear_fixed_space(R.matrix())


def fiber_real_space(R: RealStructure, point=(1, 1)):
    """Real subspace of the fibre at a point fixed by the circular involution.

    At a fixed point ``tau(p) = c p`` the induced map on the fibre of O(d)
    is ``e -> c**d conj(e)``.
    """
    if R.kind != "circular":
        raise InputError("only circular structures have real fibres")
    lam, mu = (scalars.scalar(x) if isinstance(x, int) else x for x in point)
    tl, tm = tau_point((lam, mu))
    if tl * mu != tm * lam:
        raise InputError("point is not fixed by the circular involution")
    c = tl / lam if lam else tm / mu
    S = [[x * c ** R.bundle.degrees[j] for j, x in enumerate(row)] for row in R.matrix()]
    return antilinear_fixed_space(S)


# ---------------------------------------------------------------------------
# quaternionic spaces


@dataclass(frozen=True)
class QuaternionicSpace:
    """Rational matrices ``I, J, K`` on ``Q^dim`` (the real points of A)."""

    dim: int
    I: tuple
    J: tuple
    K: tuple

    def relations(self):
        n = self.dim
        minus = [[-x for x in row] for row in mx.eye(n)]
        Im, Jm, Km = (list(map(list, X)) for X in (self.I, self.J, self.K))
        return {
            "I^2=-1": mx.mul(Im, Im) == minus,
            "J^2=-1": mx.mul(Jm, Jm) == minus,
            "K^2=-1": mx.mul(Km, Km) == minus,
            "IJ=K": mx.mul(Im, Jm) == Km,
            "JK=I": mx.mul(Jm, Km) == Im,
            "KI=J": mx.mul(Km, Im) == Jm,
        }

    def check(self):
        bad = [k for k, ok in self.relations().items() if not ok]
        if bad:
            raise TheoremViolation(f"quaternion relations fail: {bad}")


def _weight1_sections(R: RealStructure):
    """Q-basis of A = H^0(E)^sigma for E = O(1)^r: pairs (a, S conj(a)) for a in {e_k, i e_k}."""
    r = R.bundle.rank
    S = R.matrix()
    basis = []
    for k in range(r):
        for unit in (Fraction(1), I):
            a = [unit if j == k else Fraction(0) for j in range(r)]
            b = mx.mul(S, [[conj(x)] for x in a])
            basis.append((a, [row[0] for row in b]))
    return basis


def _evaluation(basis, p):
    """Real 2r x 2r matrix of A -> E_p (coordinates: real parts, then imaginary parts)."""
    lam, mu = p
    r = len(basis[0][0])
    cols = []
    for a, b in basis:
        v = [lam * x + mu * y for x, y in zip(a, b)]
        cols.append([scalars.re_part(x) for x in v] + [scalars.im_part(x) for x in v])
    return [[cols[c][rr] for c in range(len(cols))] for rr in range(2 * r)]


def complex_structure_at(R: RealStructure, p):
    """``J_p``: multiplication by i on E_p pulled back to A."""
    basis = _weight1_sections(R)
    r = R.bundle.rank
    M = _evaluation(basis, p)
    Jstd = mx.zeros(2 * r, 2 * r)
    for k in range(r):
        Jstd[k][r + k] = Fraction(-1)
        Jstd[r + k][k] = Fraction(1)
    return mx.mul(mx.mul(mx.inverse(M), Jstd), M)


POINT_0 = (Fraction(0), Fraction(1))
POINT_1 = (Fraction(1), Fraction(1))
POINT_I = (I, Fraction(1))


def quaternionic_from_weight1(R: RealStructure, field: str = "gaussian") -> QuaternionicSpace:
    """I, J, K from the complex structures of the fibres at 0, 1 and i."""
    _need_gaussian(field)
    if R.kind != "antipodal":
        raise InputError("not an antipodal structure")
    if not R.bundle.is_pure(1):
        raise InputError("quaternionic structure needs a bundle pure of weight 1")
    if R.law_matrix() != mx.eye(R.bundle.rank):
        raise InputError("not an antipodal structure: involution law fails")
    Iq = complex_structure_at(R, POINT_0)
    Jq = complex_structure_at(R, POINT_1)
    Kq = complex_structure_at(R, POINT_I)
    Q = QuaternionicSpace(2 * R.bundle.rank, _freeze(Iq), _freeze(Jq), _freeze(Kq))
    Q.check()
    for p in (POINT_1, (Fraction(2), Fraction(3)), POINT_I):
        Jp = complex_structure_at(R, p)
        Js = complex_structure_at(R, sigma_point(p))
        if Js != [[-x for x in row] for row in Jp]:
            raise TheoremViolation(f"J at the antipode of {p} is not -J")
    return Q


@dataclass
class TwistorLine:
    """Twistor bundle of a quaternionic space: ``E`` with its antipodal structure,
    the projection ``A_C (x) O -> E`` and the basis change ``B`` from A to the
    section basis used by :func:`quaternionic_from_weight1`."""

    real_structure: RealStructure
    projection: BundleMap
    basis_change: list

    @property
    def bundle(self) -> SplitBundle:
        return self.real_structure.bundle


def twistor_from_quaternionic(Q: QuaternionicSpace, field: str = "gaussian") -> TwistorLine:
    """``E = (A_C (x) O) / (O(-1) (x) W)`` with ``W = ker(I + i)`` embedded by
    ``w -> mu w + lam K w``; conjugation on A descends to an antipodal structure.
    """
    _need_gaussian(field)
    Q.check()
    n = Q.dim
    Im, Km = [list(r) for r in Q.I], [list(r) for r in Q.K]
    W = mx.nullspace([[Im[i][j] + (I if i == j else 0) for j in range(n)] for i in range(n)], n)
    r = len(W)
    KW = [[sum((Km[i][j] * w[j] for j in range(n)), Fraction(0)) for i in range(n)] for w in W]
    forms = [[BinaryForm(1, [W[j][i], KW[j][i]]) for j in range(r)] for i in range(n)]
    rep = cokernel(BundleMap.from_forms(O(*[-1] * r), O(*[0] * n), forms))
    if rep.torsion_divisors or rep.free_part != SplitBundle([1] * r):
        raise TheoremViolation("twistor line of a quaternionic space is not O(1)^r", {"free": rep.free_part.degrees})
    p = rep.projection
    # real sections p(e_k) = lam a_k + mu b_k; solve S sigma(p(e_k)) = p(e_k)
    secs = [([p.form(i, k).coeffs[1] for i in range(r)], [p.form(i, k).coeffs[0] for i in range(r)]) for k in range(n)]
    X = [[-conj(x) for x in b] for _, b in secs] + [[conj(x) for x in a] for a, _ in secs]
    Y = [a for a, _ in secs] + [b for _, b in secs]
    S = []
    for row in range(r):
        sol = mx.solve(X, [col[row] for col in Y])
        if sol is None:
            raise TheoremViolation("conjugation does not descend to the twistor line")
        S.append(sol)
    R = RealStructure("antipodal", rep.free_part, S)
    basis = _weight1_sections(R)
    M = [[(basis[c][0] + basis[c][1])[row] for c in range(len(basis))] for row in range(2 * r)]
    cols = [mx.solve(M, a + b) for a, b in secs]
    return TwistorLine(R, p, mx.transpose(cols))


def _freeze(M):
    return tuple(tuple(r) for r in M)


def standard_quaternionic(copies: int = 1) -> RealStructure:
    """``L = O(1)^2`` with ``S = [[0, 1], [-1, 0]]`` (block-diagonal for several copies)."""
    n = 2 * copies
    S = mx.zeros(n, n)
    for c in range(copies):
        S[2 * c][2 * c + 1] = Fraction(1)
        S[2 * c + 1][2 * c] = Fraction(-1)
    return RealStructure("antipodal", SplitBundle([1] * n), S)


def h0_sections(E: SplitBundle):
    """Convenience: the monomial H^0 basis as section vectors."""
    out = []
    for j, f in cohomology(E).h0_basis:
        vec = [BinaryForm.zero(d) for d in E.degrees]
        vec[j] = f
        out.append(vec)
    return out
