import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twistorkit import serialize
from twistorkit.bundles import O, BundleMap, SplitBundle, birkhoff_split
from twistorkit.errors import InputError
from twistorkit.exactalg import LAMBDA, LAURENT, ONE, POLY_S, POLY_T, ZERO, BinaryForm, mono
from twistorkit.exactalg import matrix as mx
from twistorkit.complexes import (
    ChartComplex,
    FilteredComplex,
    FilteredMap,
    chart_cohomology,
    cohomology_sheaves,
    cone,
    degeneration_check,
    direct_sum,
    koszul,
    mts_in_degree,
    patch,
    patch_chain,
    pure_shift,
    random_mtc,
    shift,
    simplicial_total,
    spectral_sequence,
    validate_mtc,
)
from twistorkit.mts import random_mts
from twistorkit.suites import degen_case, random_transition

ONE0 = BinaryForm(0, [1])
LAM = BundleMap.from_forms(O(0), O(1), [[LAMBDA]])


def lam_complex(levels=(0, 0)):
    return FilteredComplex.split({0: O(0), 1: O(1)}, {0: LAM}, {0: [levels[0]], 1: [levels[1]]})


def _h(C):
    return {i: (h.bundle.degrees, h.torsion_length) for i, h in cohomology_sheaves(C).items()}


def _acyclic(C):
    return all(h.bundle.rank == 0 and not h.torsion_divisors for h in cohomology_sheaves(C).values())


# ---------------------------------------------------------------------------
# cohomology and validity


def test_cohomology_examples():
    assert _h(pure_shift(3, 1, 0)) == {0: ((3,), 0)}
    h = _h(lam_complex())
    assert h[0] == ((), 0) and h[1] == ((), 1)
    assert _acyclic(koszul(2, 0, 0))


def test_validate_mtc_examples():
    assert validate_mtc(pure_shift(3, 1, 0)).valid
    assert validate_mtc(pure_shift(2, 1, 1)).valid
    rep = validate_mtc(lam_complex())
    assert not rep.valid and rep.failures == [(0, 1)]


def test_not_a_complex_is_rejected():
    d0 = BundleMap.from_forms(O(0), O(1), [[LAMBDA]])
    d1 = BundleMap.from_forms(O(1), O(2), [[LAMBDA]])
    with pytest.raises(InputError, match="not a complex"):
        FilteredComplex.split({0: O(0), 1: O(1), 2: O(2)}, {0: d0, 1: d1}, {})


def test_non_monotone_preweight_is_rejected():
    # d sends level 1 into level 0 of the target but level 0 source maps to level 1 target
    d = BundleMap.from_forms(O(0), O(0), [[ONE0]])
    with pytest.raises(InputError):
        FilteredComplex.split({0: O(0), 1: O(0)}, {0: d}, {0: [0], 1: [1]})


# ---------------------------------------------------------------------------
# cones, shifts, sums


def test_cone_of_identity_is_acyclic():
    C = random_mtc(4)
    assert _acyclic(cone(FilteredMap(C, C, {k: BundleMap.identity(C.obj(k)) for k in C.degrees()})))


def test_cone_of_zero_splits():
    A, B = pure_shift(1, 2, 0), pure_shift(3, 1, 0)
    Cz = cone(FilteredMap(A, B, {}))
    assert _h(Cz) == _h(direct_sum([shift(A, 1), B]))


def test_cone_of_lambda_matches_two_term_complex():
    A = FilteredComplex.split({0: O(0)}, {}, {0: [0]})
    B = FilteredComplex.split({0: O(1)}, {}, {0: [0]})
    Cl = cone(FilteredMap(A, B, {0: LAM}))
    h = _h(Cl)
    assert h[-1] == ((), 0) and h[0] == ((), 1)
    two = _h(lam_complex())
    assert (h[-1], h[0]) == (two[0], two[1])


def test_mixed_cone_keeps_graded_purity():
    rng = random.Random(3)
    M = random_mts(rng, max_rank=2, weights=(0, 1))
    A = mts_in_degree(M, 0)
    C = cone(FilteredMap(A, A, {0: BundleMap.identity(M.total)}), mixed=True)
    assert validate_mtc(C).valid and _acyclic(C)


def test_shift_moves_cohomology():
    C = random_mtc(2)
    H, Hs = _h(C), _h(shift(C, 1))
    assert {i - 1: v for i, v in H.items()} == {i: v for i, v in Hs.items() if i + 1 in H}


# ---------------------------------------------------------------------------
# spectral sequence


def test_one_step_filtration_degenerates():
    ss = spectral_sequence(koszul(1, 0, 0))
    assert ss.converges and ss.first_nonzero_differential() is None


def test_two_step_with_zero_differentials():
    C = direct_sum([pure_shift(1, 1, 0), pure_shift(2, 2, 1)])
    ss = spectral_sequence(C)
    assert ss.first_nonzero_differential() is None
    assert ss.page(1).entries == ss.pages[-1].entries
    assert sum(e.rank for e in ss.page(1).entries.values()) == 3


def test_connecting_d1_shrinks_e2():
    # O(0) at level 1 in degree 0 maps isomorphically to O(0) at level 0 in degree 1
    d = BundleMap.from_forms(O(0), O(0), [[ONE0]])
    C = FilteredComplex.split({0: O(0), 1: O(0)}, {0: d}, {0: [1], 1: [0]})
    ss = spectral_sequence(C)
    e1 = sum(e.rank for e in ss.page(1).entries.values())
    e2 = sum(e.rank for e in ss.page(2).entries.values())
    assert (e1, e2) == (2, 0)
    assert ss.first_nonzero_differential() == 1
    # long exact sequence of 0 -> W_0 -> C -> Gr_1 -> 0: the total complex is acyclic
    assert _acyclic(C)


def test_degeneration_on_pure_shifts():
    C = direct_sum([pure_shift(0, 1, 0), pure_shift(3, 2, 1), pure_shift(1, 1, 1)])
    res = degeneration_check(C)
    assert res["valid_mtc"] and res["first_nonzero_d"] is None
    assert {i: M.total.degrees for i, M in res["structures"].items() if M.total.rank} == {0: (0,), 1: (3, 3, 1)}


def test_degeneration_rejects_invalid_complex():
    with pytest.raises(InputError, match="not a mixed twistor complex"):
        degeneration_check(lam_complex())


@settings(max_examples=8, deadline=None)
@given(st.integers(0, 10**4))
def test_degeneration_on_generated_complexes(seed):
    assert degen_case(seed)["ok"]


# ---------------------------------------------------------------------------
# generator


def test_generator_shapes_and_determinism():
    C0 = random_mtc(0, degrees=0)
    assert len(list(C0.degrees())) == 1 and validate_mtc(C0).valid
    C1 = random_mtc(1)
    assert validate_mtc(C1).valid
    assert serialize.dumps(random_mtc(7)) == serialize.dumps(random_mtc(7))


# ---------------------------------------------------------------------------
# simplicial total complex


def test_single_level_family_is_the_complex():
    C = random_mtc(5)
    T = simplicial_total([C], [])
    assert serialize.complex_to_json(T) == serialize.complex_to_json(C)


def test_two_levels_with_zero_cofaces():
    M0, M1 = pure_shift(1, 1, 0), pure_shift(2, 1, 0)
    T = simplicial_total([M0, M1], [[FilteredMap(M0, M1, {})]])
    # Gr_n N^j = (+)_k Gr_{n+k} M_k^{j-k}
    for n in range(-2, 3):
        got = {i: h.bundle.degrees for i, h in cohomology_sheaves(T.graded(n)).items() if h.bundle.rank}
        want = {}
        for k, M in enumerate((M0, M1)):
            for i, h in cohomology_sheaves(M.graded(n + k)).items():
                if h.bundle.rank:
                    want[i + k] = tuple(sorted(want.get(i + k, ()) + h.bundle.degrees, reverse=True))
        assert got == want


def test_two_levels_with_identity_coface_is_an_mtc():
    M = pure_shift(1, 1, 0)
    T = simplicial_total([M, M], [[FilteredMap(M, M, {0: BundleMap.identity(O(1))})]])
    assert validate_mtc(T).valid and _acyclic(T)


# ---------------------------------------------------------------------------
# gluing chart complexes


def _rank1(ring):
    return ChartComplex(ring, {0: 1}, {}, {0: [0]})


@pytest.mark.parametrize("n", range(-3, 4))
def test_patch_recovers_line_bundles(n):
    res = patch(_rank1(POLY_T), _rank1(LAURENT), _rank1(POLY_S), {0: [[ONE]]}, {0: [[mono(-n)]]})
    assert res.degrees() == {(0, 0): (n,)}


def test_identity_gluing_is_trivial():
    r = 3
    M, P, N = (ChartComplex(R, {0: r}, {}, {0: [0] * r}) for R in (POLY_T, LAURENT, POLY_S))
    res = patch(M, P, N, {0: mx.peye(r)}, {0: mx.peye(r)})
    assert res.degrees() == {(0, 0): (0, 0, 0)}


@pytest.mark.parametrize("n", range(-3, 4))
def test_five_term_route_agrees(n):
    P = _rank1(LAURENT)
    direct = patch(_rank1(POLY_T), P, _rank1(POLY_S), {0: [[ONE]]}, {0: [[mono(-n)]]})
    chain = patch_chain(
        _rank1(POLY_T), P, P, P, _rank1(POLY_S),
        {0: [[ONE]]}, {0: [[ONE]]}, {0: [[ONE]]}, {0: [[mono(-n)]]},
    )
    assert chain.degrees() == direct.degrees()


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_patch_is_local_on_charts(seed):
    rng = random.Random(seed)
    T, _ = random_transition(rng, n=2)
    M, P, N = (ChartComplex(R, {0: 2}, {}, {0: [0, 0]}) for R in (POLY_T, LAURENT, POLY_S))
    base = patch(M, P, N, {0: mx.peye(2)}, {0: T}).degrees()
    assert sorted(base[(0, 0)]) == sorted(birkhoff_split(T).degrees)
    # an automorphism of the chart-0 module does not change the glued sheaf
    c = rng.randint(-2, 2)
    A0 = [[ONE, mono(1, c) + c], [ZERO, ONE]]
    assert patch(M, P, N, {0: A0}, {0: T}).degrees() == base


def test_patch_rejects_non_quasi_isomorphism():
    with pytest.raises(InputError, match="not a filtered quasiisomorphism"):
        patch(_rank1(POLY_T), _rank1(LAURENT), _rank1(POLY_S), {0: [[mono(1) + 1]]}, {0: [[ONE]]})


def test_chart_cohomology_of_two_term_complex():
    # K[t] --t--> K[t]: H^0 = 0, H^1 = torsion K[t]/(t)
    C = ChartComplex(POLY_T, {0: 1, 1: 1}, {0: [[mono(1)]]}, {0: [0], 1: [0]})
    assert chart_cohomology(C, 0).rank == 0
    h1 = chart_cohomology(C, 1)
    assert h1.rank == 0 and len(h1.torsion) == 1
