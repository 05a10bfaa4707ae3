"""Random mixed twistor complexes for property tests."""
from __future__ import annotations

import random

from ..bundles import O, BundleMap
from ..exactalg.forms import LAMBDA, MU
from ..mts import MixedTwistorStructure, random_morphism, random_mts
from .filtered import FilteredComplex, FilteredMap, cone, direct_sum

__all__ = ["mts_in_degree", "koszul", "pure_shift", "random_mtc"]


def mts_in_degree(M: MixedTwistorStructure, k: int) -> FilteredComplex:
    """An MTS placed in degree k: preweight level ``w - k`` for weight w."""
    if not M.total.rank:
        return FilteredComplex({}, {}, {})
    levels = {w - k: {k: M.W(w)[1]} for w in M.weights}
    return FilteredComplex({k: M.total}, {}, levels)


def pure_shift(w: int, rank: int, k: int) -> FilteredComplex:
    """``O(w)^rank`` in degree k at level ``w - k``."""
    return FilteredComplex.split({k: O(*([w] * rank))}, {}, {k: [w - k] * rank})


def koszul(a: int, k: int, n: int) -> FilteredComplex:
    """The exact complex ``O(a-1) -> O(a)^2 -> O(a+1)`` in degrees k..k+2, all at level n."""
    d0 = BundleMap.from_forms(O(a - 1), O(a, a), [[LAMBDA], [MU]])
    d1 = BundleMap.from_forms(O(a, a), O(a + 1), [[MU, -LAMBDA]])
    objs = {k: O(a - 1), k + 1: O(a, a), k + 2: O(a + 1)}
    return FilteredComplex.split(objs, {k: d0, k + 1: d1}, {k: [n], k + 1: [n, n], k + 2: [n]})


def random_mtc(seed: int, degrees: int = 2, max_rank: int = 3, weights=(0, 3), acyclic: bool = True) -> FilteredComplex:
    """A mixed twistor complex built from a mixed cone of MTS morphisms.

    ``A`` (degrees 1..D) and ``B`` (degrees 0..D-1) carry random mixed twistor
    structures with zero differential; a random morphism ``f: A -> B`` is drawn
    degreewise and ``Cone(f)`` with the shifted filtration is summed with an
    optional exact Koszul block. ``degrees=0`` gives a single pure object.
    """
    rng = random.Random(seed)
    if degrees <= 0:
        w = rng.randint(*weights)
        return pure_shift(w, rng.randint(1, max_rank), 0)
    A = {k: random_mts(rng, max_rank, weights) for k in range(1, degrees + 1)}
    B = {k: random_mts(rng, max_rank, weights) for k in range(0, degrees)}
    Ac = direct_sum([mts_in_degree(M, k) for k, M in A.items()])
    Bc = direct_sum([mts_in_degree(M, k) for k, M in B.items()])
    maps = {}
    for k in range(1, degrees):
        phi = random_morphism(rng, A[k], B[k]).f
        maps[k] = _embed(phi, Ac, Bc, k)
    C = cone(FilteredMap(Ac, Bc, maps), mixed=True)
    parts = [C]
    if acyclic and rng.random() < 0.5:
        parts.append(koszul(rng.randint(-1, 2), rng.randint(0, max(degrees - 2, 0)), rng.randint(weights[0], weights[1])))
    return direct_sum(parts)


def _embed(phi: BundleMap, Ac: FilteredComplex, Bc: FilteredComplex, k: int) -> BundleMap:
    # single-part direct sums keep the bundle order, so phi is already in place
    if phi.source != Ac.obj(k) or phi.target != Bc.obj(k):
        raise AssertionError("unexpected reordering in a one-part direct sum")
    return phi
