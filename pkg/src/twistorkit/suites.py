"""Randomized self-check cases, one seed per case.

Each case returns a small JSON-ready dict with an ``ok`` flag. The command line
``selfcheck`` runs them (optionally in worker processes) and the test suite
reuses them, so results depend only on the seed.
"""
from __future__ import annotations

import random
from fractions import Fraction

from .bundles import birkhoff_split
from .errors import TwistorError
from .exactalg import matrix as mx
from .exactalg.poly import Laurent, mono
from .mts import mts_cokernel, mts_image_coimage, mts_kernel, random_morphism, random_mts, validate_mts
from .rees import equivalence_check, random_filtered_space

__all__ = ["SUITES", "abelian_case", "rees_case", "birkhoff_case", "degen_case", "random_transition", "run_suite"]


def abelian_case(seed: int) -> dict:
    rng = random.Random(seed)
    M = random_mts(rng, max_rank=4, weights=(0, 3))
    N = random_mts(rng, max_rank=4, weights=(0, 3))
    phi = random_morphism(rng, M, N)
    try:
        kv = validate_mts(mts_kernel(phi)).valid
        cv = validate_mts(mts_cokernel(phi)).valid
        mts_image_coimage(phi)
    except TwistorError as exc:
        return {"seed": seed, "ok": False, "error": str(exc)}
    return {"seed": seed, "ok": kv and cv, "kernel_valid": kv, "cokernel_valid": cv}


def rees_case(seed: int) -> dict:
    rng = random.Random(seed)
    V = random_filtered_space(rng, max_dim=5, mhs=rng.random() < 0.5)
    try:
        out = equivalence_check(V)
    except TwistorError as exc:
        return {"seed": seed, "ok": False, "error": str(exc)}
    return {"seed": seed, "ok": True, "dim": V.dim, "complex_mhs": out["complex_mhs"]}


def _poly(rng, var_sign, max_deg=2):
    return Laurent.from_dict({var_sign * e: Fraction(rng.randint(-2, 2)) for e in range(max_deg + 1)})


def _unimodular(rng, n, var_sign, steps=4):
    """Product of elementary matrices over K[t] (``var_sign=1``) or K[1/t] (``-1``)."""
    M = mx.peye(n)
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        E = mx.peye(n)
        E[i][j] = _poly(rng, var_sign)
        M = mx.pmul(E, M)
    c = rng.choice((1, -1, 2))
    return mx.pmul(mx.pdiag([mono(0, c)] + [mono(0)] * (n - 1)), M)


def random_transition(rng: random.Random, n: int = 3):
    """``L diag(t^-d) R`` with L, R products of Laurent elementary matrices.

    Returns the matrix and its degree ``sum(d)``; the splitting type itself is
    usually different from ``d``.
    """
    degs = [rng.randint(-3, 3) for _ in range(n)]
    L = mx.peye(n)
    R = mx.peye(n)
    for _ in range(3):
        L, R = mx.pmul(L, _elem(rng, n)), mx.pmul(_elem(rng, n), R)
    return mx.pmul(L, mx.pmul(mx.pdiag([mono(-d) for d in degs]), R)), sum(degs)


def _elem(rng, n):
    E = mx.peye(n)
    i, j = rng.sample(range(n), 2)
    E[i][j] = Laurent.from_dict({rng.randint(-2, 2): Fraction(rng.randint(-2, 2))})
    return E


def birkhoff_case(seed: int) -> dict:
    rng = random.Random(seed)
    T, degree = random_transition(rng)
    A0 = _unimodular(rng, 3, 1)
    Binf = _unimodular(rng, 3, -1)
    T2 = mx.pmul(Binf, mx.pmul(T, A0))
    out = {"seed": seed}
    types = []
    for M in (T, T2):
        sp = birkhoff_split(M)
        ok = mx.pmul(sp.B, mx.pmul(sp.diagonal(), sp.A)) == M
        types.append(sorted(sp.degrees))
        out.setdefault("identity", []).append(ok)
    out["types"] = types
    out["ok"] = all(out["identity"]) and types[0] == types[1] and sum(types[0]) == degree
    return out


def degen_case(seed: int) -> dict:
    from .complexes import degeneration_check, random_mtc

    C = random_mtc(seed, degrees=2 + seed % 2)
    try:
        res = degeneration_check(C)
    except TwistorError as exc:
        return {"seed": seed, "ok": False, "error": str(exc)}
    return {"seed": seed, "ok": True, "first_nonzero_d": res["first_nonzero_d"]}


SUITES = {"abelian": abelian_case, "rees": rees_case, "birkhoff": birkhoff_case, "degen": degen_case}


def run_suite(name: str, seeds, jobs: int = 1) -> list:
    """Results in seed order regardless of ``jobs``."""
    fn = SUITES[name]
    seeds = list(seeds)
    if jobs <= 1:
        return [fn(s) for s in seeds]
    from concurrent.futures import ProcessPoolExecutor

    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, seeds))
