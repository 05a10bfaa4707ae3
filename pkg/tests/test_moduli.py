import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from twistorkit.bundles import O
from twistorkit.errors import InputError
from twistorkit.moduli import (
    WeightVector,
    extension_basis,
    formula_crosscheck,
    framed_dim,
    framed_dim_direct,
    stack_dim,
)

vectors = st.lists(st.integers(0, 3), min_size=1, max_size=5).filter(any)


def wv(*entries, start=0):
    return WeightVector(start=start, entries=list(entries))


@pytest.mark.parametrize("b, framed", [((1, 1), 0), ((1, 0, 1), 1), ((1,), 0)])
def test_framed_examples(b, framed):
    assert framed_dim(wv(*b)) == framed


@pytest.mark.parametrize("b, stack", [((1, 1), -2), ((1, 0, 1), -1), ((2,), -4), ((2, 3), -13)])
def test_stack_examples(b, stack):
    assert stack_dim(wv(*b)) == stack


@pytest.mark.parametrize("b, closed", [((1, 1), -2), ((1, 0, 1), -1), ((2, 3), -13)])
def test_crosscheck_examples(b, closed):
    rep = formula_crosscheck(wv(*b))
    assert rep.closed_formula == closed and rep.agree


def test_recursion_equals_pairwise_ext_exhaustive():
    count = 0
    for length in range(1, 6):
        for entries in itertools.product(range(4), repeat=length):
            if not any(entries):
                continue
            b = wv(*entries)
            assert framed_dim(b) == framed_dim_direct(b)
            assert formula_crosscheck(b).agree
            count += 1
    assert count == sum(4**k - 1 for k in range(1, 6))


@given(vectors, st.integers(0, 3), st.integers(-3, 3))
def test_stack_invariant_under_padding_with_zeros(entries, pad, start):
    b = wv(*entries, start=start)
    padded = wv(*([0] * pad + entries + [0] * pad), start=start - pad)
    assert stack_dim(padded) == stack_dim(b)
    assert framed_dim(padded) == framed_dim(b)


@given(vectors, st.integers(-3, 3))
def test_shift_invariance(entries, start):
    assert stack_dim(wv(*entries, start=start)) == stack_dim(wv(*entries))


@pytest.mark.parametrize("tail, n, bn, dim", [(O(1), 0, 1, 0), (O(2), 0, 1, 1), (O(2, 2), 0, 3, 6)])
def test_extension_basis_examples(tail, n, bn, dim):
    assert len(extension_basis(tail, n, bn)) == dim


def test_extension_basis_needs_higher_tail():
    with pytest.raises(InputError):
        extension_basis(O(0), 0, 1)


def test_weight_vector_validation_and_json():
    with pytest.raises(InputError):
        wv(0, 0)
    with pytest.raises(InputError):
        wv(1, -1)
    b = wv(1, 0, 2, start=-1)
    assert WeightVector.from_json(b.to_json()).b == b.b
