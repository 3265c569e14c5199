"""Tests for the group-based self-distributive operations.

Conjugation ``x * y = x^-1 y x`` and symmetric conjugation ``x o y = x y^-1 x``
are both left self-distributive; on a group they also satisfy the unit facts
frozen here. Exhaustive checks run on S_3/S_4 where that stays instant.
"""
from __future__ import annotations

import itertools
import random

import pytest

from ldkex import (
    check_left_distributivity,
    conj,
    group_platform,
    perm_group_ctx,
    symm_conj,
)


def test_ctx_enumerates_group():
    ctx = perm_group_ctx(4)
    els = list(ctx.elements())
    assert len(els) == 24
    assert len(set(els)) == 24
    assert ctx.identity in els
    for x in els[:6]:
        assert ctx.multiply(x, ctx.invert(x)) == ctx.identity


@pytest.mark.parametrize("kind", ["conj", "symm"])
def test_left_distributivity_exhaustive_s3(kind):
    ctx = perm_group_ctx(3)
    plat, op = group_platform(ctx, kind)
    triples = itertools.product(ctx.elements(), repeat=3)
    rep = check_left_distributivity(op, op, triples)
    assert rep.ok and rep.samples_tested == 216


def test_unit_facts():
    ctx = perm_group_ctx(4)
    e = ctx.identity
    for x in list(ctx.elements())[:10]:
        assert conj(ctx, e, x) == x  # identity conjugates trivially
        assert conj(ctx, x, x) == x
        assert symm_conj(ctx, x, x) == x  # idempotent
        assert symm_conj(ctx, e, x) == ctx.invert(x)


def test_conj_matches_direct_formula():
    ctx = perm_group_ctx(4)
    rng = random.Random(3)
    els = list(ctx.elements())
    for _ in range(50):
        x, y = rng.choice(els), rng.choice(els)
        assert conj(ctx, x, y) == ctx.multiply(ctx.multiply(ctx.invert(x), y), x)
        assert symm_conj(ctx, x, y) == ctx.multiply(ctx.multiply(x, ctx.invert(y)), x)


def test_platform_encode_roundtrip_and_sampling():
    ctx = perm_group_ctx(5)
    plat, op = group_platform(ctx, "symm")
    assert op.label == "o"
    rng = random.Random(11)
    seen = set()
    for _ in range(60):
        x = plat.rand_element(rng)
        seen.add(x)
        assert plat.decode(plat.encode(x))[0] == x
    assert len(seen) > 30  # sampler is not stuck on a few elements


def test_group_platform_rejects_unknown_kind():
    ctx = perm_group_ctx(3)
    with pytest.raises(ValueError):
        group_platform(ctx, "twisted")
