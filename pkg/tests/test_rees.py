import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twistorkit.bundles import O
from twistorkit.errors import InputError
from twistorkit.exactalg import matrix as mx
from twistorkit.mts import validate_mts
from twistorkit.rees import (
    FilteredSpace,
    Filtration,
    equivalence_check,
    is_complex_mhs,
    jet_mts_example,
    random_filtered_space,
    rees_bundle,
    rees_inverse,
    rees_mts,
)
from twistorkit.suites import rees_case

e = [[1 if i == j else 0 for j in range(4)] for i in range(4)]
E1, E2 = [1, 0], [0, 1]


def _same(F: Filtration, G: Filtration):
    lo = min(min(F.jumps, default=0), min(G.jumps, default=0)) - 1
    hi = max(max(F.jumps, default=0), max(G.jumps, default=0)) + 1
    for p in range(lo, hi + 1):
        a, b = F(p), G(p)
        if len(a) != len(b) or mx.span_rank(a + b) != len(a):
            return False
    return True


def pure_weight1():
    return FilteredSpace.build(2, {1: [E1, E2]}, {0: [E1, E2], 1: [E1]}, {0: [E1, E2], 1: [E2]})


def non_opposed():
    return FilteredSpace.build(2, {1: [E1, E2]}, {0: [E1, E2], 1: [E1]}, {0: [E1, E2], 1: [E1]})


def weights_0_and_2():
    return FilteredSpace.build(2, {0: [E1], 2: [E1, E2]}, {0: [E1, E2], 1: [E2]}, {0: [E1, E2], 1: [E2]})


def three_weights():
    v = e
    W = {0: [v[0]], 1: [v[0], v[1], v[2]], 2: v}
    F = {0: v, 1: [[1, 1, 0, 0], v[3]]}
    Fp = {0: v, 1: [v[2], v[3]]}
    return FilteredSpace.build(4, W, F, Fp)


def test_trivial_filtrations_give_trivial_bundle():
    F = Filtration.trivial(3, True)
    assert rees_bundle(F, Filtration.trivial(3, True, name="Fprime")).split == O(0, 0, 0)


def test_rees_bundle_examples():
    V = pure_weight1()
    assert rees_bundle(V.F, V.Fp).split == O(1, 1)
    V = non_opposed()
    assert rees_bundle(V.F, V.Fp).split == O(2, 0)


def test_rees_mts_examples():
    rep = validate_mts(rees_mts(pure_weight1()))
    assert rep.valid and rep.graded[1]["degrees"] == (1, 1)
    assert not validate_mts(rees_mts(non_opposed())).valid
    rep = validate_mts(rees_mts(weights_0_and_2()))
    assert rep.valid
    graded = {i: g["degrees"] for i, g in rep.graded.items() if g["degrees"]}
    assert graded == {0: (0,), 2: (2,)}


def test_is_complex_mhs_examples():
    assert is_complex_mhs(pure_weight1())
    assert not is_complex_mhs(non_opposed())
    assert is_complex_mhs(three_weights())
    assert validate_mts(rees_mts(three_weights())).valid


def test_equivalence_examples():
    a = equivalence_check(pure_weight1())
    b = equivalence_check(non_opposed())
    assert (a["complex_mhs"], a["mts_valid"]) == (True, True)
    assert (b["complex_mhs"], b["mts_valid"]) == (False, False)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_equivalence_on_random_spaces(seed):
    assert rees_case(seed)["ok"]


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.booleans())
def test_pure_case_reduces_to_opposedness(seed, mhs):
    rng = random.Random(seed)
    V = random_filtered_space(rng, max_dim=4, mhs=mhs)
    # collapse W to a single jump at the total Hodge weight of the top piece
    lo, hi = V.W.range()
    Vp = FilteredSpace(V.dim, Filtration(V.dim, {hi: V.W(hi)}, False, "W"), V.F, V.Fp)
    out = equivalence_check(Vp)
    assert out["complex_mhs"] == out["mts_valid"]


def test_rees_inverse_examples():
    V = pure_weight1()
    F, Fp = rees_inverse(rees_bundle(V.F, V.Fp))
    assert _same(F, V.F) and _same(Fp, V.Fp)
    T = Filtration.trivial(3, True)
    F, Fp = rees_inverse(rees_bundle(T, T))
    assert _same(F, T) and _same(Fp, T)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_rees_inverse_on_random_spaces(seed):
    V = random_filtered_space(random.Random(seed), max_dim=4)
    F, Fp = rees_inverse(rees_bundle(V.F, V.Fp))
    assert _same(F, V.F) and _same(Fp, V.Fp)


@pytest.mark.parametrize("r, n, ranks", [(1, 2, {0: 1, 1: 1, 2: 1}), (2, 2, {0: 1, 1: 2, 2: 3})])
def test_jet_examples(r, n, ranks):
    M = jet_mts_example(r, n)
    rep = validate_mts(M)
    assert rep.valid
    assert {i: len(g["degrees"]) for i, g in rep.graded.items()} == ranks


def test_jet_total_rank():
    assert jet_mts_example(2, 3).total.rank == 10
    with pytest.raises(InputError):
        jet_mts_example(0, 1)


def test_filtration_must_be_monotone():
    with pytest.raises(InputError):
        Filtration(2, {0: [E1, E2], 1: [E1], 2: [E2]}, True)


def test_filtered_space_json_round_trip():
    V = three_weights()
    V2 = FilteredSpace.from_json(V.to_json())
    assert _same(V.W, V2.W) and _same(V.F, V2.F) and _same(V.Fp, V2.Fp)
