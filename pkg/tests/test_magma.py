"""Tests for the platform/tree layer: operation registries, tree words,
iterated left multiplication, law checkers, and tree sampling.
"""
from __future__ import annotations

import random
from collections import Counter

import pytest

from ldkex import (
    IterHom,
    LawReport,
    Leaf,
    Node,
    Platform,
    check_endomorphism,
    check_left_distributivity,
    eval_tree,
    internal_nodes,
    iter_apply,
    laver_platform,
    leaf_count,
    parse_tree,
    random_tree,
    render_tree,
    tree_leaves,
)


def _mod_platform(n: int) -> Platform:
    plat = Platform(f"mod-{n}", encode=lambda x: bytes([x]))
    plat.register(lambda x, y: (x + y) % n, label="+")
    plat.register(lambda x, y: (x * y) % n, label=".")
    return plat


def test_register_and_opid():
    plat = _mod_platform(7)
    add = plat.op(0)
    mul = plat.op(1)
    assert add.label == "+" and mul.label == "."
    assert add(3, 5) == 1
    assert mul(3, 5) == 1
    assert plat.apply(1, 2, 3) == 6
    with pytest.raises(IndexError):
        plat.op(2)


def test_tree_shapes_and_eval():
    plat = laver_platform(2)
    op = plat.op(0)
    t = Node(op, Node(op, Leaf(0), Leaf(1)), Leaf(0))
    assert internal_nodes(t) == 2
    assert leaf_count(t) == 3
    assert tree_leaves(t) == [0, 1, 0]
    # ((g0 * g1) * g0) over generators (1, 2) in the 4-element table.
    lt_val = op(op(1, 2), 1)
    assert eval_tree(t, [1, 2]) == lt_val
    with pytest.raises(IndexError):
        eval_tree(t, [1])


def test_render_parse_roundtrip():
    plat = laver_platform(2)
    op = plat.op(0)
    t = Node(op, Leaf(1), Node(op, Leaf(0), Leaf(2)))
    text = render_tree(t)
    assert text == "(* g1 (* g0 g2))"
    assert parse_tree(text, plat) == t
    with pytest.raises(ValueError):
        parse_tree("(* g0", plat)
    with pytest.raises(ValueError):
        parse_tree("(? g0 g1)", plat)


def test_iter_hom_applies_innermost_first():
    plat = _mod_platform(11)
    add = plat.op(0)
    mul = plat.op(1)
    h = IterHom(xs=(3, 5), ops=(add, mul))
    # y ↦ 5 . (3 + y)
    assert iter_apply(h, 2) == (5 * (3 + 2)) % 11
    assert h.depth == 2
    with pytest.raises(ValueError):
        IterHom(xs=(1,), ops=(add, mul))
    with pytest.raises(ValueError):
        IterHom(xs=(), ops=())


def test_law_checkers_pass_and_fail():
    plat = laver_platform(3)
    op = plat.op(0)
    triples = [(a, b, c) for a in range(1, 9) for b in range(1, 9) for c in range(1, 9)]
    rep = check_left_distributivity(op, op, triples)
    assert isinstance(rep, LawReport)
    assert rep.ok and rep.samples_tested == 512 and not rep.failures

    bad = _mod_platform(5).op(0)  # addition is not left self-distributive mod 5
    rep_bad = check_left_distributivity(bad, bad, [(1, 1, 1), (2, 3, 4)])
    assert not rep_bad.ok and len(rep_bad.failures) == 2
    assert rep_bad.failures[0][:3] == (1, 1, 1)


def test_endomorphism_checker():
    plat = laver_platform(3)
    op = plat.op(0)
    h = IterHom(xs=(3,), ops=(op,))
    pairs = [(a, b) for a in range(1, 9) for b in range(1, 9)]
    rep = check_endomorphism(h, [op], pairs)
    assert rep.ok and rep.samples_tested == 64

    # Against a foreign operation the fold is generally not a homomorphism.
    other = _mod_platform(8).op(0)
    mixed = check_endomorphism(IterHom(xs=(3,), ops=(other,)), [other], pairs[:16])
    assert not mixed.ok


def test_random_tree_distribution_and_bounds():
    plat = laver_platform(2)
    op = plat.op(0)
    rng = random.Random(5)
    sizes = Counter()
    for _ in range(300):
        t = random_tree(3, 4, [op], rng)
        assert internal_nodes(t) == 3
        assert all(0 <= i < 4 for i in tree_leaves(t))
        sizes[render_tree(t)] += 1
    # 5 Catalan shapes x 4^4 leaf labelings: plenty of distinct samples.
    assert len(sizes) > 50
    assert isinstance(random_tree(0, 2, [op], rng), Leaf)
    with pytest.raises(ValueError):
        random_tree(2, 2, [], rng)
    with pytest.raises(ValueError):
        random_tree(-1, 2, [op], rng)


def test_eval_tree_commutes_with_fold_endomorphism():
    plat = laver_platform(3)
    op = plat.op(0)
    rng = random.Random(9)
    h = IterHom(xs=(2, 5), ops=(op, op))
    for _ in range(40):
        t = random_tree(4, 3, [op], rng)
        vals = [plat.rand_element(rng) for _ in range(3)]
        assert iter_apply(h, eval_tree(t, vals)) == eval_tree(
            t, [iter_apply(h, v) for v in vals]
        )
