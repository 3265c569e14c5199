"""Tests for finitary permutations and the symmetric-quotient operations.

Permutations are trimmed image tuples over {1..N}, composed apply-first:
``(a * b)(i) == b(a(i))``. Generalized shifted conjugacy at shift p is
``x * y = ∂^p(x⁻¹) · a · ∂^p(y) · x``; the tau-word image is independent of
its sign vector.
"""
from __future__ import annotations

import itertools
import random

import pytest

from ldkex import (
    Perm,
    build_sym_partial_mld,
    check_left_distributivity,
    gsc_perm,
    make_perm_gsc_op,
    perm_mul,
    perm_tau,
    perm_tau_eps,
    random_perm,
    sym_platform,
)
from ldkex.perms import block_tau_image, decode_perm, encode_perm


def test_perm_construction_and_trimming():
    assert Perm((2, 1, 3)) == Perm((2, 1))  # trailing fixed points trimmed
    assert Perm(()) == Perm((1, 2, 3))  # identity in any degree
    assert Perm((3, 1, 2)).degree == 3
    with pytest.raises(ValueError):
        Perm((1, 1, 2))
    with pytest.raises(ValueError):
        Perm((0, 1))


def test_apply_first_composition():
    a = Perm((2, 1))  # swaps 1,2
    b = Perm((1, 3, 2))  # swaps 2,3
    assert (a * b) == Perm((3, 1, 2))
    assert (a * b)(1) == b(a(1)) == 3
    assert perm_mul(a, b, (a * b).inv()) == Perm()
    # beyond the stored degree everything is fixed
    assert a(17) == 17


def test_inverse_shift_unshift():
    rng = random.Random(2)
    for _ in range(30):
        pi = random_perm(7, rng)
        assert pi * pi.inv() == Perm()
        assert pi.shift(3).unshift(3) == pi
        assert pi.shift(3)(2) == 2  # shifted copies fix the low block
    with pytest.raises(ValueError):
        Perm((2, 1)).unshift(1)
    with pytest.raises(ValueError):
        Perm((2, 1)).shift(-1)


def test_tau_block_exchange():
    assert perm_tau(2, 3) == Perm((4, 5, 1, 2, 3))
    assert perm_tau(3, 3) * perm_tau(3, 3) == Perm()
    with pytest.raises(ValueError):
        perm_tau(0, 2)


def test_tau_word_image_is_sign_independent():
    for p in (1, 2, 3):
        for k in (1, 2, 3):
            expected = block_tau_image(p, k)
            for eps in itertools.product((1, -1), repeat=k):
                assert perm_tau_eps(p, eps) == expected
    assert perm_tau_eps(2, [1, 1]) == Perm((5, 6, 1, 2, 3, 4))
    with pytest.raises(ValueError):
        perm_tau_eps(2, [])


def test_encode_decode_roundtrip():
    rng = random.Random(8)
    for _ in range(25):
        pi = random_perm(9, rng)
        buf = encode_perm(pi)
        out, off = decode_perm(buf)
        assert out == pi and off == len(buf)
    # decoding resumes at the returned offset
    two = encode_perm(Perm((2, 1))) + encode_perm(Perm((3, 1, 2)))
    first, off = decode_perm(two)
    second, end = decode_perm(two, off)
    assert (first, second) == (Perm((2, 1)), Perm((3, 1, 2))) and end == len(two)


def test_gsc_op_is_left_self_distributive():
    plat = sym_platform(8)
    op = make_perm_gsc_op(plat, 2, perm_tau(2, 2))
    rng = random.Random(4)
    triples = [tuple(random_perm(8, rng) for _ in range(3)) for _ in range(200)]
    rep = check_left_distributivity(op, op, triples)
    assert rep.ok


def test_gsc_op_validation():
    plat = sym_platform(8)
    with pytest.raises(ValueError, match="supported"):
        make_perm_gsc_op(plat, 2, Perm((1, 2, 3, 4, 6, 5)))
    with pytest.raises(ValueError, match="braid-relation"):
        make_perm_gsc_op(plat, 2, Perm((2, 1)))


def test_gsc_formula_frozen_sample():
    a = perm_tau(2, 2)
    x = Perm((2, 1))
    y = Perm((3, 1, 2))
    assert gsc_perm(2, a, x, y) == perm_mul(x.inv().shift(2), a, y.shift(2), x)


def test_partial_pools_cross_distribute_but_not_within():
    plat = sym_platform(24)
    rng = random.Random(6)
    pool_a, pool_b = build_sym_partial_mld(plat, 8, 3, 5, (2, 2), rng)
    assert len(pool_a) == 2 and len(pool_b) == 2
    triples = [tuple(random_perm(16, rng) for _ in range(3)) for _ in range(40)]
    for op_a in pool_a:
        for op_b in pool_b:
            assert check_left_distributivity(op_a, op_b, triples).ok
            assert check_left_distributivity(op_b, op_a, triples).ok
    meta = pool_a[0].meta
    assert meta["side"] == "A" and meta["q1"] == 3 and meta["q2"] == 5


def test_partial_pool_parameter_validation():
    plat = sym_platform(12)
    rng = random.Random(1)
    with pytest.raises(ValueError):
        build_sym_partial_mld(plat, 4, 1, 2, (1, 1), rng)
    with pytest.raises(ValueError):
        build_sym_partial_mld(plat, 5, 2, 3, (1, 1), rng)  # q1 < 3 floor
    pool_a, pool_b = build_sym_partial_mld(
        plat, 5, 2, 3, (1, 1), rng, enforce_min_blocks=False
    )
    assert len(pool_a) == len(pool_b) == 1
