"""Shifted and generalized shifted conjugacy on B_∞, and the two-pool
partial multi-LD system built from parabolic-subgroup parts.

The operation x *_a y = ∂^p(x⁻¹) · a · ∂^p(y) · x is left distributive
whenever a ∈ B_{2p} satisfies a·∂^p(a)·a = ∂^p(a)·a·∂^p(a); p=1, a=σ₁ is
classical shifted conjugacy. Operations build words only — normal forms are
computed lazily at equality/serialization time.
"""
from __future__ import annotations

from ..magma import OpId, Platform
from .nf import braid_eq, encode_braid, decode_braid
from .words import Word, braid_tau, strand_bound


def max_index(w: Word) -> int:
    return max((abs(x) for x in w), default=0)


def validate_gsc_element(p: int, a) -> bool:
    """True iff a ∈ B_{2p} and a·∂^p(a)·a == ∂^p(a)·a·∂^p(a)."""
    a = Word(a)
    if max_index(a) >= 2 * p:
        return False
    ap = a.shift(p)
    return braid_eq(a * ap * a, ap * a * ap)


def braid_gsc(p: int, a: Word, x: Word, y: Word) -> Word:
    """x * y = ∂^p(x⁻¹) · a · ∂^p(y) · x (word concatenation, no NF)."""
    return x.inv().shift(p) * a * y.shift(p) * x


def make_braid_gsc_op(platform: Platform, p: int, a, label: str = "*", **extra) -> OpId:
    """Register generalized shifted conjugacy by word `a` at shift `p`."""
    a = Word(a)
    if not validate_gsc_element(p, a):
        raise ValueError("op element fails the B_{2p} shifted braid-relation check")
    return platform.register(
        lambda x, y: braid_gsc(p, a, x, y), label=label, kind="gsc-braid", p=p, a=a, **extra
    )


def _commutes(u: Word, v: Word) -> bool:
    return braid_eq(u * v, v * u)


def check_prop_abc(variant: str, p: int, parts) -> bool:
    """Commutator criteria for LD/multi-LD/bi-LD/mutual-LD of GSC operations.

    `parts` is a list of (a′_i, a″_i) word pairs with all indices < p; the
    i-th operation uses a_i = a′_i · τ_{p,p}^{±1} · a″_i (signs: variant "a"
    and "b" take all +1; "c" and "d" take the pair (+1, −1)).

      a: single op; LD            iff [a′,a″] = 1
      b: op family; multi-LD      iff [a′_i,a′_j] = [a′_i,a″_j] = 1 for all i,j
      c: op pair (+,−); bi-LD     iff the five commutators [a′₁,a″₁], [a′₂,a″₂],
         [a′₁,a″₂], [a′₂,a″₁], [a′₁,a′₂] are trivial
      d: op pair (+,−); mutual LD iff [a′₁,a″₂] = [a′₂,a″₁] = [a′₁,a′₂] = 1
    """
    pairs = [(Word(a1), Word(a2)) for a1, a2 in parts]
    for a1, a2 in pairs:
        if max_index(a1) >= p or max_index(a2) >= p:
            raise ValueError(f"part uses index >= p={p}")
    if variant == "a":
        if len(pairs) != 1:
            raise ValueError("variant 'a' takes one (a′, a″) pair")
        a1, a2 = pairs[0]
        return _commutes(a1, a2)
    if variant == "b":
        return all(
            _commutes(pairs[i][0], pairs[j][0]) and _commutes(pairs[i][0], pairs[j][1])
            for i in range(len(pairs))
            for j in range(len(pairs))
        )
    if variant in ("c", "d"):
        if len(pairs) != 2:
            raise ValueError(f"variant {variant!r} takes exactly two part pairs")
        (a1p, a1pp), (a2p, a2pp) = pairs
        cross = _commutes(a1p, a2pp) and _commutes(a2p, a1pp) and _commutes(a1p, a2p)
        if variant == "d":
            return cross
        return cross and _commutes(a1p, a1pp) and _commutes(a2p, a2pp)
    raise ValueError(f"unknown variant {variant!r}")


def _rand_range_word(rng, lo: int, hi: int, L: int) -> Word:
    """Random word of length L on generators σ_lo..σ_hi (empty if the range is)."""
    if hi < lo:
        return Word()
    return Word(rng.choice((1, -1)) * rng.randint(lo, hi) for _ in range(L))


def _sample_mutual_ld(platform: Platform, op_a: OpId, op_b: OpId, p: int, rng, samples: int = 4):
    from ..magma import check_left_distributivity

    triples = [
        tuple(_rand_range_word(rng, 1, 2 * p - 1, 3) for _ in range(3)) for _ in range(samples)
    ]
    for outer, inner in ((op_a, op_b), (op_b, op_a)):
        rep = check_left_distributivity(outer, inner, triples)
        if not rep.ok:
            raise AssertionError(
                f"mutual distributivity violated for {outer!r}/{inner!r}: {rep.failures[0]}"
            )


def build_braid_partial_mld(
    platform: Platform,
    p: int,
    q1: int,
    q2: int,
    L_ops: int,
    rng,
    sizes: tuple[int, int] = (1, 1),
    *,
    enforce_min_blocks: bool = True,
) -> tuple[list[OpId], list[OpId]]:
    """Build the two operation pools of the partial multi-LD system on B_∞.

    Pool A ops use a = α₁ · τ_{p,p}^{±1} · α₂ with α₁ ∈ B_{q1}, α₂ ∈ B_{q2};
    pool B ops use a = β₁ · τ_{p,p}^{±1} · β₂ with β₁ ∈ ∂^{q2}(B_{p-q2}),
    β₂ ∈ ∂^{q1}(B_{p-q1}); part words have length L_ops. Cross-distributivity
    of every (A, B) pair follows from index-disjointness of the parts and is
    spot-checked on samples here.

    `enforce_min_blocks=False` drops the q1 >= 3 and p-q2 >= 3 size floor
    (used by deliberately tiny cryptanalysis fixtures).
    """
    if not (1 < q1 <= q2 < p):
        raise ValueError("need 1 < q1 <= q2 < p")
    if enforce_min_blocks and (q1 < 3 or p - q2 < 3):
        raise ValueError("need q1 >= 3 and p - q2 >= 3 (pass enforce_min_blocks=False to relax)")
    tau = braid_tau(p, p)

    def one(side: str, i: int) -> OpId:
        eps = rng.choice((1, -1))
        if side == "A":
            part1 = _rand_range_word(rng, 1, q1 - 1, L_ops)
            part2 = _rand_range_word(rng, 1, q2 - 1, L_ops)
        else:
            part1 = _rand_range_word(rng, q2 + 1, p - 1, L_ops)
            part2 = _rand_range_word(rng, q1 + 1, p - 1, L_ops)
        a = part1 * (tau if eps == 1 else tau.inv()) * part2
        # Pool ops may violate the single-op braid relation (the parts of one
        # side need not commute); only cross-pair distributivity is required,
        # so register directly instead of via make_braid_gsc_op.
        return platform.register(
            lambda x, y: braid_gsc(p, a, x, y), label=f"*{side.lower()}{i}",
            kind="gsc-braid", p=p, a=a,
            side=side, part1=part1, eps=eps, part2=part2, q1=q1, q2=q2,
        )

    pool_a = [one("A", i) for i in range(sizes[0])]
    pool_b = [one("B", i) for i in range(sizes[1])]
    for op_a in pool_a:
        for op_b in pool_b:
            _sample_mutual_ld(platform, op_a, op_b, p, rng)
    return pool_a, pool_b


def braid_platform(N: int, L: int, n_enc: int | None = None) -> Platform:
    """Braid platform whose random elements are words of length L on σ_1..σ_{N−1}.

    `n_enc` fixes the strand bound used for canonical encodings so that
    independently computed representatives of equal braids serialize
    identically; both protocol parties must use the same bound. Defaults to
    per-element bounds (fine for local use, not for key derivation).
    """
    plat = Platform(
        f"braid-{N}",
        encode=lambda w: encode_braid(w, n_enc),
        decode=decode_braid,
        eq=braid_eq,
        rand_element=lambda rng: _rand_range_word(rng, 1, N - 1, L),
    )
    plat.N = N
    plat.word_length = L
    plat.n_enc = n_enc
    return plat
