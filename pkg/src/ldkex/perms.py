"""Finitely supported permutations of {1, 2, 3, ...} and the symmetric-group
quotient of generalized shifted conjugacy.

A `Perm` stores the tuple of images (π(1), ..., π(n)) with trailing fixed
points trimmed, so two equal permutations are equal tuples and the identity
is the empty tuple — this is the working model of the direct limit S_∞.

Composition is apply-first: ``(a * b)(i) == b(a(i))``. This makes evaluating
the permutation image of a braid word a left-to-right fold over its letters.
"""
from __future__ import annotations

from typing import Iterable

from .magma import OpId, Platform


class Perm(tuple):
    __slots__ = ()

    def __new__(cls, images: Iterable[int] = ()):
        t = list(images)
        if sorted(t) != list(range(1, len(t) + 1)):
            raise ValueError(f"not a permutation of 1..{len(t)}: {t!r}")
        while t and t[-1] == len(t):
            t.pop()
        return tuple.__new__(cls, t)

    @classmethod
    def _raw(cls, images: list[int]) -> "Perm":
        # internal fast path: caller guarantees bijectivity
        while images and images[-1] == len(images):
            images.pop()
        return tuple.__new__(cls, images)

    def __call__(self, i: int) -> int:
        return self[i - 1] if i <= len(self) else i

    def __mul__(self, other: "Perm") -> "Perm":  # type: ignore[override]
        n = max(len(self), len(other))
        return Perm._raw([other(self(i)) for i in range(1, n + 1)])

    def inv(self) -> "Perm":
        r = [0] * len(self)
        for i, im in enumerate(self):
            r[im - 1] = i + 1
        return Perm._raw(r)

    def shift(self, p: int) -> "Perm":
        """∂^p: fix 1..p, map p+i ↦ π(i)+p."""
        if p < 0:
            raise ValueError("shift amount must be >= 0")
        return Perm._raw(list(range(1, p + 1)) + [im + p for im in self])

    def unshift(self, p: int) -> "Perm":
        """Inverse of shift(p); requires 1..p to be fixed points."""
        if any(self(i) != i for i in range(1, p + 1)):
            raise ValueError(f"permutation does not fix 1..{p}")
        return Perm._raw([self(p + i) - p for i in range(1, max(len(self) - p, 0) + 1)])

    def support(self) -> frozenset[int]:
        return frozenset(i for i in range(1, len(self) + 1) if self[i - 1] != i)

    @property
    def degree(self) -> int:
        """Smallest N with the permutation supported on {1..N}."""
        return len(self)

    def __repr__(self):
        return f"Perm{tuple(self)}"


IDENTITY = Perm()


def perm_mul(*ps: Perm) -> Perm:
    out: Perm = IDENTITY
    for p in ps:
        out = out * p
    return out


def perm_shift(pi: Perm, p: int) -> Perm:
    return pi.shift(p)


def perm_tau(p: int, q: int) -> Perm:
    """Block permutation exchanging {1..p} with {p+1..p+q}: i ↦ i+q, p+j ↦ j."""
    if p < 1 or q < 1:
        raise ValueError("perm_tau needs p, q >= 1")
    return Perm._raw(list(range(q + 1, q + p + 1)) + list(range(1, q + 1)))


def perm_tau_eps(p: int, eps: Iterable[int]) -> Perm:
    """Image of the word τ^{ε_k} ∂^p(τ^{ε_{k-1}}) ⋯ ∂^{(k-1)p}(τ^{ε_1}) with τ = τ_{p,p}.

    Evaluated literally as the stated product; the result is independent of
    the sign vector and equals the block permutation
    1..p ↦ kp+1..(k+1)p, p+1..(k+1)p ↦ 1..kp.
    """
    eps = list(eps)
    k = len(eps)
    if k < 1:
        raise ValueError("sign vector must be nonempty")
    tau = perm_tau(p, p)
    out = IDENTITY
    for idx in range(k):
        e = eps[k - 1 - idx]
        out = out * (tau if e == 1 else tau.inv()).shift(idx * p)
    return out


def block_tau_image(p: int, k: int) -> Perm:
    """The fixed quotient image of every length-k sign pattern in perm_tau_eps."""
    kp = k * p
    return Perm._raw([i + kp for i in range(1, p + 1)] + list(range(1, kp + 1)))


def random_perm(N: int, rng, shift: int = 0) -> Perm:
    """Uniform permutation of {1..N} via Fisher–Yates, optionally shifted."""
    images = list(range(1, N + 1))
    rng.shuffle(images)
    out = Perm._raw(images)
    return out.shift(shift) if shift else out


def encode_perm(pi: Perm) -> bytes:
    n = len(pi)
    return n.to_bytes(2, "big") + b"".join(im.to_bytes(2, "big") for im in pi)


def decode_perm(buf: bytes, offset: int = 0) -> tuple[Perm, int]:
    n = int.from_bytes(buf[offset : offset + 2], "big")
    offset += 2
    images = [int.from_bytes(buf[offset + 2 * i : offset + 2 * i + 2], "big") for i in range(n)]
    return Perm(images), offset + 2 * n


def sym_platform(N: int | None = None) -> Platform:
    """Fresh permutation platform; `N` sizes the default element sampler."""
    return Platform(
        f"sym-{N}" if N else "sym",
        encode=encode_perm,
        decode=decode_perm,
        rand_element=(lambda rng: random_perm(N, rng)) if N else None,
    )


def gsc_perm(p: int, a: Perm, x: Perm, y: Perm) -> Perm:
    """x * y = ∂^p(x⁻¹) · a · ∂^p(y) · x in the symmetric quotient."""
    return perm_mul(x.inv().shift(p), a, y.shift(p), x)


def make_perm_gsc_op(platform: Platform, p: int, a: Perm, label: str = "*", **extra) -> OpId:
    """Register generalized shifted conjugacy by `a` at shift `p`.

    Preconditions: a is supported on {1..2p} and satisfies the image relation
    a · ∂^p(a) · a == ∂^p(a) · a · ∂^p(a).
    """
    if a.degree > 2 * p:
        raise ValueError(f"op element must be supported on 1..{2 * p}")
    ap = a.shift(p)
    if perm_mul(a, ap, a) != perm_mul(ap, a, ap):
        raise ValueError("op element fails the shifted braid-relation image check")
    return platform.register(
        lambda x, y: gsc_perm(p, a, x, y), label=label, kind="gsc-perm", p=p, a=a, **extra
    )


def _sample_mutual_ld(platform: Platform, op_a: OpId, op_b: OpId, p: int, rng, samples: int = 6):
    from .magma import check_left_distributivity

    triples = [tuple(random_perm(2 * p, rng) for _ in range(3)) for _ in range(samples)]
    for outer, inner in ((op_a, op_b), (op_b, op_a)):
        rep = check_left_distributivity(outer, inner, triples)
        if not rep.ok:
            raise AssertionError(
                f"mutual distributivity violated for {outer!r}/{inner!r}: {rep.failures[0]}"
            )


def build_sym_partial_mld(
    platform: Platform,
    p: int,
    q1: int,
    q2: int,
    sizes: tuple[int, int],
    rng,
    *,
    enforce_min_blocks: bool = True,
) -> tuple[list[OpId], list[OpId]]:
    """Build the two operation pools of the partial multi-LD system on S_∞.

    Pool A ops use a = α₁ · τ_{p,p}^{±1} · α₂ with α₁ ∈ S_{q1}, α₂ ∈ S_{q2};
    pool B ops use a = β₁ · τ_{p,p}^{±1} · β₂ with β₁ ∈ ∂^{q2}(S_{p-q2}),
    β₂ ∈ ∂^{q1}(S_{p-q1}). Cross-distributivity of every (A, B) pair follows
    from block disjointness of the parts and is spot-checked on samples here.

    `enforce_min_blocks=False` drops the q1 >= 3 and p-q2 >= 3 size floor
    (used by deliberately tiny cryptanalysis fixtures).
    """
    if not (1 < q1 <= q2 < p):
        raise ValueError("need 1 < q1 <= q2 < p")
    if enforce_min_blocks and (q1 < 3 or p - q2 < 3):
        raise ValueError("need q1 >= 3 and p - q2 >= 3 (pass enforce_min_blocks=False to relax)")
    tau = perm_tau(p, p)

    def one(side: str, i: int) -> OpId:
        eps = rng.choice((1, -1))
        if side == "A":
            part1 = random_perm(q1, rng)
            part2 = random_perm(q2, rng)
        else:
            part1 = random_perm(p - q2, rng, shift=q2)
            part2 = random_perm(p - q1, rng, shift=q1)
        a = perm_mul(part1, tau if eps == 1 else tau.inv(), part2)
        # Pool ops may violate the single-op braid relation (the parts of one
        # side need not commute); only cross-pair distributivity is required,
        # so register directly instead of via make_perm_gsc_op.
        return platform.register(
            lambda x, y: gsc_perm(p, a, x, y), label=f"*{side.lower()}{i}",
            kind="gsc-perm", p=p, a=a,
            side=side, part1=part1, eps=eps, part2=part2, q1=q1, q2=q2,
        )

    pool_a = [one("A", i) for i in range(sizes[0])]
    pool_b = [one("B", i) for i in range(sizes[1])]
    for op_a in pool_a:
        for op_b in pool_b:
            _sample_mutual_ld(platform, op_a, op_b, p, rng)
    return pool_a, pool_b
