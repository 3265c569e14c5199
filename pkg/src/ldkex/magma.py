"""Platform-agnostic magma machinery.

A *platform* bundles the element semantics of one carrier set (equality,
canonical byte encoding, random sampling) with a registered pool of binary
operations. Operations are referred to by `OpId` — a (platform, index) pair —
so that secrets, tree-words and wire payloads can name operations stably.

The three central evaluators:

* `eval_tree` folds a planar rooted binary tree whose leaves are generator
  indices and whose internal nodes carry operations;
* `iter_apply` applies an iterated left-multiplication map
  ``y ↦ x_k ∘_k ( … (x_2 ∘_2 (x_1 ∘_1 y)) … )``, innermost first;
* `check_left_distributivity` / `check_endomorphism` sample the
  distributivity and homomorphism laws and report every failing witness.

All values are treated as immutable; operations must be pure functions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Sequence


class Platform:
    """Element semantics plus a registered operation pool for one carrier set.

    Equality defaults to ``==``; platforms whose elements have no canonical
    representation (braid words) supply their own `eq`. `encode` must be a
    canonical injection into bytes: equal elements encode equally.
    """

    def __init__(
        self,
        name: str,
        *,
        encode: Callable[[Any], bytes],
        decode: Callable[[bytes, int], tuple[Any, int]] | None = None,
        eq: Callable[[Any, Any], bool] | None = None,
        rand_element: Callable[[Any], Any] | None = None,
    ):
        self.name = name
        self.ops: list[Callable[[Any, Any], Any]] = []
        self.labels: list[str] = []
        self.meta: list[dict] = []
        self._encode = encode
        self._decode = decode
        self._eq = eq
        self._rand = rand_element

    def register(self, fn: Callable[[Any, Any], Any], label: str = "*", **meta) -> "OpId":
        self.ops.append(fn)
        self.labels.append(label)
        self.meta.append(meta)
        return OpId(self, len(self.ops) - 1)

    def op(self, index: int) -> "OpId":
        if not 0 <= index < len(self.ops):
            raise IndexError(f"operation {index} not registered on platform {self.name!r}")
        return OpId(self, index)

    def apply(self, index: int, x, y):
        return self.ops[index](x, y)

    def eq(self, x, y) -> bool:
        return self._eq(x, y) if self._eq is not None else x == y

    def encode(self, x) -> bytes:
        return self._encode(x)

    def decode(self, buf: bytes, offset: int = 0):
        if self._decode is None:
            raise NotImplementedError(f"platform {self.name!r} has no decoder")
        return self._decode(buf, offset)

    def rand_element(self, rng):
        if self._rand is None:
            raise NotImplementedError(f"platform {self.name!r} has no element sampler")
        return self._rand(rng)

    def __repr__(self):
        return f"<Platform {self.name} ({len(self.ops)} ops)>"


@dataclass(frozen=True)
class OpId:
    """Names one binary operation within a platform's registered pool."""

    platform: Platform
    index: int

    def __call__(self, x, y):
        return self.platform.ops[self.index](x, y)

    @property
    def label(self) -> str:
        return self.platform.labels[self.index]

    @property
    def meta(self) -> dict:
        return self.platform.meta[self.index]

    def __repr__(self):
        return f"<op {self.label}@{self.platform.name}[{self.index}]>"


@dataclass(frozen=True)
class Leaf:
    """Tree leaf: a 0-based index into a generator list."""

    index: int


@dataclass(frozen=True)
class Node:
    op: OpId
    left: "TreeWord"
    right: "TreeWord"


TreeWord = Leaf | Node


def internal_nodes(tree: TreeWord) -> int:
    if isinstance(tree, Leaf):
        return 0
    return 1 + internal_nodes(tree.left) + internal_nodes(tree.right)


def leaf_count(tree: TreeWord) -> int:
    return internal_nodes(tree) + 1


def tree_leaves(tree: TreeWord) -> list[int]:
    """Leaf indices in left-to-right order."""
    if isinstance(tree, Leaf):
        return [tree.index]
    return tree_leaves(tree.left) + tree_leaves(tree.right)


def eval_tree(tree: TreeWord, leaf_values: Sequence) -> Any:
    """Bottom-up fold: Leaf i ↦ leaf_values[i], Node(op, L, R) ↦ op(eval L, eval R).

    Applying a magma homomorphism h to a tree value commutes with evaluation:
    ``h(eval_tree(t, vals)) == eval_tree(t, [h(v) for v in vals])`` whenever h
    is an endomorphism for every operation appearing in the tree.
    """
    if isinstance(tree, Leaf):
        if not 0 <= tree.index < len(leaf_values):
            raise IndexError(f"leaf index {tree.index} out of range for {len(leaf_values)} generators")
        return leaf_values[tree.index]
    return tree.op(eval_tree(tree.left, leaf_values), eval_tree(tree.right, leaf_values))


@dataclass(frozen=True)
class IterHom:
    """Iterated left multiplication ``y ↦ xs[k-1] ∘ ( … (xs[0] ∘ y))``.

    `xs` and `ops` are parallel; xs[0]/ops[0] is applied first (innermost).
    """

    xs: tuple
    ops: tuple[OpId, ...]

    def __post_init__(self):
        if len(self.xs) != len(self.ops) or len(self.xs) < 1:
            raise ValueError("IterHom needs parallel xs/ops of length >= 1")

    @property
    def depth(self) -> int:
        return len(self.xs)


def iter_apply(h: IterHom, y):
    for x, op in zip(h.xs, h.ops):
        y = op(x, y)
    return y


@dataclass
class LawReport:
    """Outcome of a sampled law check; empty `failures` means the law held."""

    samples_tested: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def check_left_distributivity(op_outer: OpId, op_inner: OpId, triples: Iterable) -> LawReport:
    """Check ``x ∘out (y ∘in z) == (x ∘out y) ∘in (x ∘out z)`` on each triple.

    With op_outer == op_inner this is the plain left self-distributivity law;
    over a pair of pools in both orders it is the mutual-distributivity law set.
    """
    if op_outer.platform is not op_inner.platform:
        raise ValueError("operations come from different platforms")
    plat = op_outer.platform
    report = LawReport()
    for x, y, z in triples:
        report.samples_tested += 1
        lhs = op_outer(x, op_inner(y, z))
        rhs = op_inner(op_outer(x, y), op_outer(x, z))
        if not plat.eq(lhs, rhs):
            report.failures.append((x, y, z, (op_outer, op_inner)))
    return report


def check_endomorphism(h: IterHom, op_pool: Iterable[OpId], pairs: Iterable) -> LawReport:
    """Check ``φ_h(y1 ⋄ y2) == φ_h(y1) ⋄ φ_h(y2)`` for every ⋄ in op_pool."""
    pool = list(op_pool)
    pairs = list(pairs)
    if not pool:
        raise ValueError("empty op pool")
    plat = pool[0].platform
    report = LawReport()
    for y1, y2 in pairs:
        hy1, hy2 = iter_apply(h, y1), iter_apply(h, y2)
        for op in pool:
            report.samples_tested += 1
            if not plat.eq(iter_apply(h, op(y1, y2)), op(hy1, hy2)):
                report.failures.append((y1, y2, op))
    return report


def _catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


def random_tree(l: int, num_generators: int, op_pool: Sequence[OpId], rng) -> TreeWord:
    """Uniform tree with exactly `l` internal nodes (so l+1 leaves).

    Shape is uniform over the Catalan family via a size-weighted left/right
    split; leaf indices and node operations are i.i.d. uniform.
    """
    if not op_pool:
        raise ValueError("empty op pool")
    if num_generators < 1 or l < 0:
        raise ValueError("need num_generators >= 1 and l >= 0")
    if l == 0:
        return Leaf(rng.randrange(num_generators))
    op = op_pool[rng.randrange(len(op_pool))]
    r = rng.randrange(_catalan(l))
    acc = 0
    left_size = 0
    for i in range(l):
        acc += _catalan(i) * _catalan(l - 1 - i)
        if r < acc:
            left_size = i
            break
    left = random_tree(left_size, num_generators, op_pool, rng)
    right = random_tree(l - 1 - left_size, num_generators, op_pool, rng)
    return Node(op, left, right)


def render_tree(tree: TreeWord) -> str:
    """S-expression text form: ``(op left right)`` with leaves ``gK``."""
    if isinstance(tree, Leaf):
        return f"g{tree.index}"
    return f"({tree.op.label} {render_tree(tree.left)} {render_tree(tree.right)})"


def parse_tree(text: str, op_pool: Sequence[OpId] | Platform) -> TreeWord:
    """Inverse of `render_tree`, resolving op labels within `op_pool`."""
    if isinstance(op_pool, Platform):
        op_pool = [op_pool.op(i) for i in range(len(op_pool.ops))]
    by_label = {op.label: op for op in op_pool}
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    pos = 0

    def parse() -> TreeWord:
        nonlocal pos
        if pos >= len(tokens):
            raise ValueError("truncated tree text")
        tok = tokens[pos]
        pos += 1
        if tok == "(":
            if pos >= len(tokens):
                raise ValueError("truncated tree text")
            label = tokens[pos]
            pos += 1
            left = parse()
            right = parse()
            if pos >= len(tokens):
                raise ValueError("truncated tree text")
            if tokens[pos] != ")":
                raise ValueError("malformed tree text")
            pos += 1
            if label not in by_label:
                raise ValueError(f"unknown operation label {label!r}")
            return Node(by_label[label], left, right)
        if not tok.startswith("g"):
            raise ValueError(f"unexpected token {tok!r}")
        return Leaf(int(tok[1:]))

    out = parse()
    if pos != len(tokens):
        raise ValueError("trailing tokens in tree text")
    return out
