from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strategies import forms, gaussians
from twistorkit.bundles import O
from twistorkit.errors import FieldError, InputError
from twistorkit.exactalg import LAMBDA, MU, BinaryForm
from twistorkit.exactalg import matrix as mx
from twistorkit.exactalg.scalars import I, conj, gauss
from twistorkit.realstruct import (
    QuaternionicSpace,
    RealStructure,
    fiber_real_space,
    quaternionic_from_weight1,
    sigma_conjugate,
    standard_quaternionic,
    tate_twistor,
    tau_conjugate,
    twistor_from_quaternionic,
    weight0_real_space,
)


def _conj_vec(v):
    return [conj(x) for x in v]


def _apply(S, v):
    return [sum((S[i][j] * v[j] for j in range(len(v))), Fraction(0)) for i in range(len(S))]


# ---------------------------------------------------------------------------
# conjugations


def test_sigma_examples():
    assert sigma_conjugate(LAMBDA) == MU
    assert sigma_conjugate(MU) == -LAMBDA
    assert sigma_conjugate(sigma_conjugate(LAMBDA)) == -LAMBDA
    assert sigma_conjugate(LAMBDA * MU) == -(LAMBDA * MU)
    f = (LAMBDA * LAMBDA) * I
    assert sigma_conjugate(f) == (MU * MU) * (-I)


def test_tau_examples():
    assert tau_conjugate(LAMBDA) == MU
    assert tau_conjugate(tau_conjugate(LAMBDA)) == LAMBDA
    assert tau_conjugate(LAMBDA + MU) == LAMBDA + MU
    assert tau_conjugate(LAMBDA * I) == MU * (-I)


@pytest.mark.parametrize("d", range(-3, 4))
def test_sigma_squared_sign_rule(d):
    """sigma^2 = (-1)^d on O(d): checked on sections (d >= 0) and on the structure law."""
    if d >= 0:
        for k in range(d + 1):
            f = BinaryForm.monomial(d, k) * gauss(1, 2)
            assert sigma_conjugate(sigma_conjugate(f)) == (f if d % 2 == 0 else -f)
    # a real structure with S = [1] exists exactly for even d
    if d % 2 == 0:
        assert RealStructure("antipodal", O(d), [[1]]).law_matrix() == [[1]]
    else:
        with pytest.raises(InputError):
            RealStructure("antipodal", O(d), [[1]])


@given(forms(scalars=gaussians), gaussians)
def test_conjugations_are_antilinear(f, a):
    g = BinaryForm.monomial(f.degree, 0) * gauss(2, -1)
    for op in (sigma_conjugate, tau_conjugate):
        assert op(f * a + g) == op(f) * conj(a) + op(g)


@given(forms(scalars=gaussians))
def test_tau_is_an_involution(f):
    assert tau_conjugate(tau_conjugate(f)) == f


def test_rational_field_is_refused():
    with pytest.raises(FieldError):
        sigma_conjugate(LAMBDA, field="rational")
    with pytest.raises(FieldError):
        quaternionic_from_weight1(standard_quaternionic(1), field="rational")


# ---------------------------------------------------------------------------
# weight 0 and Tate twistors


def test_weight0_examples():
    assert len(weight0_real_space(RealStructure("antipodal", O(0, 0), [[1, 0], [0, 1]]))) == 2
    R = RealStructure("circular", O(0), [[I]])
    basis = weight0_real_space(R)
    assert len(basis) == 1
    (v,) = basis
    assert _apply(R.matrix(), _conj_vec(v)) == v


@settings(max_examples=20, deadline=None)
@given(st.lists(st.lists(gaussians, min_size=3, max_size=3), min_size=3, max_size=3))
def test_random_antipodal_weight0_has_full_real_space(P):
    if mx.det(P) == 0:
        return
    # S = P conj(P)^-1 satisfies S conj(S) = 1
    S = mx.mul(P, mx.inverse([[conj(x) for x in row] for row in P]))
    R = RealStructure("antipodal", O(0, 0, 0), S)
    basis = weight0_real_space(R)
    assert len(basis) == 3
    for v in basis:
        assert _apply(S, _conj_vec(v)) == v


def test_tate_twistor_examples():
    E, anti, circ = tate_twistor(1)
    assert E == O(2) and anti.law_matrix() == [[1]]
    E0, _, _ = tate_twistor(0)
    assert E0 == O(0)
    _, _, circ2 = tate_twistor(2)
    assert len(fiber_real_space(circ2, (1, 1))) == 1


# ---------------------------------------------------------------------------
# quaternionic structures


@pytest.mark.parametrize("copies", [1, 2])
def test_standard_structure_gives_quaternions(copies):
    Q = quaternionic_from_weight1(standard_quaternionic(copies))
    assert Q.dim == 4 * copies
    assert all(Q.relations().values())


@given(gaussians)
def test_rank_one_odd_obstruction(c):
    with pytest.raises(InputError):
        RealStructure("antipodal", O(1), [[c]])


def test_quaternionic_dimension_is_twice_the_rank():
    R = standard_quaternionic(1)
    assert quaternionic_from_weight1(R).dim == 2 * R.bundle.rank


@pytest.mark.parametrize("copies", [1, 2, 3])
def test_twistor_line_round_trip(copies):
    Q = quaternionic_from_weight1(standard_quaternionic(copies))
    line = twistor_from_quaternionic(Q)
    assert line.bundle == O(*([1] * 2 * copies))
    Q2 = quaternionic_from_weight1(line.real_structure)
    B = line.basis_change
    Bi = mx.inverse(B)
    for X, Y in ((Q.I, Q2.I), (Q.J, Q2.J), (Q.K, Q2.K)):
        assert mx.mul(mx.mul(Bi, [list(r) for r in Y]), B) == [list(r) for r in X]


def test_broken_quaternions_are_rejected():
    Q = quaternionic_from_weight1(standard_quaternionic(1))
    bad = QuaternionicSpace(Q.dim, Q.I, Q.I, Q.K)
    with pytest.raises(AssertionError):
        bad.check()


def test_json_round_trip():
    R = RealStructure("circular", O(0), [[I]])
    assert RealStructure.from_json(R.to_json()) == R
