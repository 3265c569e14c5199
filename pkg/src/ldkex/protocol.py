"""Two-round key establishment over pools of mutually left-distributive ops.

One engine covers both protocol variants: the single-operation protocol is
the special case of singleton pools. Roles:

* Public: generators s_1..s_m and t_1..t_n, operation pools O_A and O_B.
* Alice: tree a0 over the s's with O_A ops, plus an iterated homomorphism
  α = (a, o_A) with arbitrary platform elements a and ops from O_A.
* Bob: k_B trees over the t's with O_B ops (their values are b_1..b_{k_B}),
  plus op vector o_B from O_B; β is the iterated homomorphism built on them.
* Round 1 (Alice→Bob): (α(t_i))_i and p0 = α(a0).
* Round 2 (Bob→Alice): (β(s_j))_j.
* Keys: K_A = α(eval of a0's tree over the β(s_j) values) — β commutes with
  O_A ops; K_B = α(b_{k_B}) *_{o_B[k_B]} (… (α(b_1) *_{o_B[1]} p0) …) where
  Bob reads each α(b_j) off his trees evaluated over the α(t_i) values.

Cross-distributivity of every (O_A, O_B) op pair makes K_A = K_B; nothing
requires ops within one pool to be self-distributive.
"""
from __future__ import annotations

import hashlib
import json
import random
import struct
import time
from dataclasses import dataclass, field

from .magma import IterHom, Leaf, OpId, Platform, TreeWord, eval_tree, iter_apply, random_tree, render_tree
from .matrices import OpRejected

KEYGEN_RETRIES = 100


def child_rng(seed: int, label: str) -> random.Random:
    """Independent deterministic stream for one role of a seeded session."""
    h = hashlib.sha256(int(seed).to_bytes(8, "big") + label.encode()).digest()
    return random.Random(int.from_bytes(h[:8], "big"))


# ---------------------------------------------------------------------------
# public parameters and secrets
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PublicParams:
    platform: Platform
    pool_a: tuple[OpId, ...]
    pool_b: tuple[OpId, ...]
    s_gens: tuple  # Alice's submagma generators (Bob maps these through β)
    t_gens: tuple  # Bob's submagma generators (Alice maps these through α)
    meta: dict = field(default_factory=dict)
    preset: str | None = None
    seed: int | None = None

    @property
    def m(self) -> int:
        return len(self.s_gens)

    @property
    def n(self) -> int:
        return len(self.t_gens)


def setup(platform: Platform, pool_a, pool_b, m: int, n: int, rng, *, meta=None,
          preset: str | None = None, seed: int | None = None,
          s_sampler=None, t_sampler=None) -> PublicParams:
    """Draw public generators from the platform's element distribution.

    `s_sampler`/`t_sampler` override the distribution for one side (used by
    presets whose attacks assume generators of bounded support).
    """
    if m < 1 or n < 1:
        raise ValueError("need m >= 1 and n >= 1")
    kinds = {op.meta.get("kind") for op in tuple(pool_a) + tuple(pool_b)}
    if kinds & {"fconj", "fsymm"} and (m < 2 or n < 2):
        raise ValueError("matrix conjugacy platforms require m >= 2 and n >= 2")
    s_gens = tuple((s_sampler or platform.rand_element)(rng) for _ in range(m))
    t_gens = tuple((t_sampler or platform.rand_element)(rng) for _ in range(n))
    return PublicParams(
        platform, tuple(pool_a), tuple(pool_b), s_gens, t_gens,
        dict(meta or {}), preset, seed,
    )


@dataclass(frozen=True)
class AliceSecret:
    a0_tree: TreeWord
    hom: IterHom  # xs: arbitrary platform elements, ops ⊆ O_A

    @property
    def k_A(self) -> int:
        return self.hom.depth


@dataclass(frozen=True)
class BobSecret:
    b_trees: tuple[TreeWord, ...]
    o_B: tuple[OpId, ...]  # fold ops, one per tree

    @property
    def k_B(self) -> int:
        return len(self.b_trees)

    def b_values(self, params: PublicParams) -> tuple:
        return tuple(eval_tree(t, params.t_gens) for t in self.b_trees)


def _pool_can_reject(*pools) -> bool:
    """Only eval-type endomorphism images can be singular mid-protocol."""
    for pool in pools:
        for op in pool:
            f = op.meta.get("f")
            if f is not None and f.kind in ("eval-at", "eval-var-at"):
                return True
    return False


def alice_keygen(params: PublicParams, k_A: int, l_A: int, rng) -> AliceSecret:
    """Secret (a0, a, o_A): tree with l_A internal nodes, iteration depth k_A."""
    if k_A < 1 or l_A < 0:
        raise ValueError("need k_A >= 1 and l_A >= 0")
    validate = _pool_can_reject(params.pool_a, params.pool_b)
    for attempt in range(KEYGEN_RETRIES):
        tree = random_tree(l_A, params.m, params.pool_a, rng)
        xs = tuple(params.platform.rand_element(rng) for _ in range(k_A))
        ops = tuple(rng.choice(params.pool_a) for _ in range(k_A))
        sk = AliceSecret(tree, IterHom(xs, ops))
        if validate:
            try:
                alice_message(params, sk)
            except OpRejected:
                continue
        return sk
    raise RuntimeError("alice_keygen: rejection budget exhausted")


def bob_keygen(params: PublicParams, k_B: int, l_B, rng) -> BobSecret:
    """Secret (b, o_B): k_B trees over the t generators, fold ops from O_B.

    `l_B` is one internal-node count for every tree, or a length-k_B list of
    per-tree counts.
    """
    if k_B < 1:
        raise ValueError("need k_B >= 1")
    sizes = list(l_B) if isinstance(l_B, (list, tuple)) else [l_B] * k_B
    if len(sizes) != k_B or any(s < 0 for s in sizes):
        raise ValueError("per-tree size list must have k_B nonnegative entries")
    validate = _pool_can_reject(params.pool_a, params.pool_b)
    for attempt in range(KEYGEN_RETRIES):
        trees = tuple(random_tree(s, params.n, params.pool_b, rng) for s in sizes)
        ops = tuple(rng.choice(params.pool_b) for _ in range(k_B))
        sk = BobSecret(trees, ops)
        if validate:
            try:
                bob_message(params, sk)
            except OpRejected:
                continue
        return sk
    raise RuntimeError("bob_keygen: rejection budget exhausted")


# ---------------------------------------------------------------------------
# messages and shared keys
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MsgA:
    t_imgs: tuple  # α(t_1) .. α(t_n)
    p0: object  # α(a0)


@dataclass(frozen=True)
class MsgB:
    s_imgs: tuple  # β(s_1) .. β(s_m)


def alice_message(params: PublicParams, sk: AliceSecret) -> MsgA:
    a0 = eval_tree(sk.a0_tree, params.s_gens)
    return MsgA(
        t_imgs=tuple(iter_apply(sk.hom, t) for t in params.t_gens),
        p0=iter_apply(sk.hom, a0),
    )


def bob_message(params: PublicParams, sk: BobSecret) -> MsgB:
    beta = IterHom(sk.b_values(params), sk.o_B)
    return MsgB(s_imgs=tuple(iter_apply(beta, s) for s in params.s_gens))


def alice_shared(params: PublicParams, sk: AliceSecret, msg_b: MsgB):
    """K_A = α(β(a0)), reading β(a0) off the tree over Bob's message."""
    if len(msg_b.s_imgs) != params.m:
        raise ValueError("message length does not match params")
    beta_a0 = eval_tree(sk.a0_tree, msg_b.s_imgs)
    return iter_apply(sk.hom, beta_a0)


def bob_shared(params: PublicParams, sk: BobSecret, msg_a: MsgA):
    """K_B = α(b_{k_B}) *_(o_B[k_B]) ( … (α(b_1) *_(o_B[1]) p0) … )."""
    if len(msg_a.t_imgs) != params.n:
        raise ValueError("message length does not match params")
    alpha_b = tuple(eval_tree(t, msg_a.t_imgs) for t in sk.b_trees)
    return iter_apply(IterHom(alpha_b, sk.o_B), msg_a.p0)


def derive_key_bytes(platform: Platform, K) -> bytes:
    """SHA-256 over the platform's canonical encoding of the shared element."""
    return hashlib.sha256(platform.encode(K)).digest()


# ---------------------------------------------------------------------------
# closed forms for Bob's public values
# ---------------------------------------------------------------------------


def closed_form_bob_public(params: PublicParams, sk: BobSecret, s):
    """Bob's β(s) evaluated by the platform's closed formula instead of the fold.

    Supported op kinds: gsc-braid / gsc-perm (the ∂-shift formula with
    τ(p,ε)), fconj (f(b̃⁻¹)·f^k(s)·b̃ — the sign resolved against the
    step-by-step oracle), fsymm (the alternating-exponent two-sided formula).
    """
    kind = sk.o_B[0].meta.get("kind")
    b = sk.b_values(params)
    k = len(b)
    if kind == "gsc-braid":
        from .braid import Word, braid_tau_eps

        p = sk.o_B[0].meta["p"]
        parts = [(op.meta["part1"], op.meta["eps"], op.meta["part2"]) for op in sk.o_B]
        btilde = Word()
        for j, bj in enumerate(b):
            btilde = btilde * bj.shift((k - 1 - j) * p)
        beta1 = Word()
        for i in range(k - 1, -1, -1):
            beta1 = beta1 * parts[i][0]
        beta2 = Word()
        for i in range(k):
            beta2 = beta2 * parts[i][2].shift((k - 1 - i) * p)
        eps = [parts[i][1] for i in range(k)]
        return (
            btilde.inv().shift(p)
            * beta1
            * beta2.shift(p)
            * braid_tau_eps(p, eps)
            * s.shift(k * p)
            * btilde
        )
    if kind == "gsc-perm":
        from .perms import Perm, perm_mul, perm_tau_eps

        p = sk.o_B[0].meta["p"]
        parts = [(op.meta["part1"], op.meta["eps"], op.meta["part2"]) for op in sk.o_B]
        btilde = perm_mul(*[b[j].shift((k - 1 - j) * p) for j in range(k)]) if k else Perm(())
        beta1 = perm_mul(*[parts[i][0] for i in range(k - 1, -1, -1)])
        beta2 = perm_mul(*[parts[i][2].shift((k - 1 - i) * p) for i in range(k)])
        eps = [parts[i][1] for i in range(k)]
        return perm_mul(
            btilde.inv().shift(p),
            beta1,
            beta2.shift(p),
            perm_tau_eps(p, eps),
            s.shift(k * p),
            btilde,
        )
    if kind in ("fconj", "fsymm"):
        from .matrices import apply_endo, mat_inv, mat_mul

        ring = params.platform.ring
        f = sk.o_B[0].meta["f"]
        if kind == "fconj":
            btilde = fconj_btilde(ring, f, b)
            fk_s = s
            for _ in range(k):
                fk_s = apply_endo(ring, f, fk_s)
            return mat_mul(
                ring, mat_mul(ring, apply_endo(ring, f, mat_inv(ring, btilde)), fk_s), btilde
            )
        BL, BR = fsymm_aggregates(ring, f, b)
        mid = apply_endo(ring, f, s)
        if k % 2 == 1:
            mid = mat_inv(ring, mid)
        return mat_mul(ring, mat_mul(ring, BL, mid), BR)
    raise ValueError(f"no closed form for op kind {kind!r}")


def fconj_btilde(ring, f, b_values):
    """b̃ = f^{k-1}(b_1)·f^{k-2}(b_2) ⋯ f(b_{k-1})·b_k for the f-conjugacy fold."""
    from .matrices import apply_endo, mat_mul

    k = len(b_values)

    def fpow(M, e):
        for _ in range(e):
            M = apply_endo(ring, f, M)
        return M

    out = fpow(b_values[0], k - 1)
    for j in range(1, k):
        out = mat_mul(ring, out, fpow(b_values[j], k - 1 - j))
    return out


def fsymm_aggregates(ring, f, b_values):
    """(B_L, B_R) with fold(y) = B_L · f(y)^{(−1)^k} · B_R for f-symmetric folds.

    B_L = f(∏_{j=k..1} b_j^{(−1)^{k−j}});  B_R = f(∏_{j=1..k−1} b_j^{(−1)^{k+j}})·b_k.
    """
    from .matrices import apply_endo, mat_inv, mat_mul

    k = len(b_values)

    def alt(M, e):
        return M if e == 1 else mat_inv(ring, M)

    BL = None
    for j in range(k, 0, -1):
        term = alt(b_values[j - 1], (-1) ** (k - j))
        BL = term if BL is None else mat_mul(ring, BL, term)
    BL = apply_endo(ring, f, BL)
    BR = None
    for j in range(1, k):
        term = alt(b_values[j - 1], (-1) ** (k + j))
        BR = term if BR is None else mat_mul(ring, BR, term)
    BR = apply_endo(ring, f, BR) if BR is not None else None
    BR = mat_mul(ring, BR, b_values[k - 1]) if BR is not None else b_values[k - 1]
    return BL, BR


# ---------------------------------------------------------------------------
# sessions
# ---------------------------------------------------------------------------


@dataclass
class Transcript:
    params: PublicParams
    msg_a: MsgA
    msg_b: MsgB
    key_a: object
    key_b: object
    key_bytes: bytes
    seed: int | None
    timings_ms: dict

    def to_json(self, *, timings: bool = True) -> dict:
        """Transcript as a JSON-ready dict.

        `timings=False` nulls the timing block so that replaying the same
        seed yields a byte-identical artifact.
        """
        return {
            "platform": self.params.platform.name,
            "preset": self.params.preset,
            "seed": self.seed,
            "params-summary": {
                "fingerprint": params_fingerprint(self.params).hex(),
                "m": self.params.m,
                "n": self.params.n,
                **{k: v for k, v in self.params.meta.items() if isinstance(v, (int, str, float))},
            },
            "msgA": encode_msg_a(self.params, self.msg_a).hex(),
            "msgB": encode_msg_b(self.params, self.msg_b).hex(),
            "keyBytes": self.key_bytes.hex(),
            "timings-ms": self.timings_ms if timings else None,
        }


def run_session(params: PublicParams, *, k_A: int, k_B: int, l_A: int, l_B,
                seed: int | None = None) -> Transcript:
    """Full two-round exchange with both roles played locally.

    Role randomness comes from per-role child streams of `seed` (defaulting
    to the params seed) so that a networked run of the same session is
    byte-identical.
    """
    if seed is None:
        seed = params.seed
    if seed is None:
        raise ValueError("session needs a seed (explicit or from params)")
    timings: dict[str, float] = {}

    def clock(label, fn, *args, **kw):
        t0 = time.perf_counter()
        out = fn(*args, **kw)
        timings[label] = round((time.perf_counter() - t0) * 1000, 3)
        return out

    rng_a = child_rng(seed, "alice")
    rng_b = child_rng(seed, "bob")
    sk_a = clock("alice_keygen", alice_keygen, params, k_A, l_A, rng_a)
    sk_b = clock("bob_keygen", bob_keygen, params, k_B, l_B, rng_b)
    msg_a = clock("alice_message", alice_message, params, sk_a)
    msg_b = clock("bob_message", bob_message, params, sk_b)
    key_a = clock("alice_shared", alice_shared, params, sk_a, msg_b)
    key_b = clock("bob_shared", bob_shared, params, sk_b, msg_a)
    if not params.platform.eq(key_a, key_b):
        raise AssertionError("shared keys disagree — distributivity defect")
    key_bytes = derive_key_bytes(params.platform, key_a)
    return Transcript(params, msg_a, msg_b, key_a, key_b, key_bytes, seed, timings)


# ---------------------------------------------------------------------------
# wire frames (peer mode)
# ---------------------------------------------------------------------------

FRAME_PARAMS_HASH = 0x01
FRAME_MSG_A = 0x02
FRAME_MSG_B = 0x03
FRAME_KEY_CONFIRM = 0x04


def pack_frame(ftype: int, payload: bytes) -> bytes:
    return struct.pack(">IB", len(payload), ftype) + payload


def read_frame(sock_file) -> tuple[int, bytes]:
    head = sock_file.read(5)
    if len(head) < 5:
        raise ConnectionError("peer closed the connection mid-frame")
    length, ftype = struct.unpack(">IB", head)
    payload = sock_file.read(length)
    if len(payload) < length:
        raise ConnectionError("peer closed the connection mid-frame")
    return ftype, payload


def params_fingerprint(params: PublicParams) -> bytes:
    """Digest both peers must agree on before exchanging messages."""
    h = hashlib.sha256()
    h.update(params.platform.name.encode())
    h.update((params.preset or "").encode())
    h.update(struct.pack(">QHH", (params.seed or 0) & (2**64 - 1), params.m, params.n))
    meta = {k: v for k, v in params.meta.items() if isinstance(v, (int, str, float, bool))}
    h.update(json.dumps(meta, sort_keys=True).encode())
    for g in params.s_gens + params.t_gens:
        h.update(params.platform.encode(g))
    for op in params.pool_a + params.pool_b:
        h.update(op.label.encode())
        h.update(op.meta.get("kind", "").encode())
        a = op.meta.get("a")
        if a is not None:
            h.update(params.platform.encode(a))
        f = op.meta.get("f")
        if f is not None:
            h.update(f"{f.kind}:{f.power}:{f.point}".encode())
    return h.digest()


def encode_msg_a(params: PublicParams, msg: MsgA) -> bytes:
    enc = params.platform.encode
    return b"".join(enc(t) for t in msg.t_imgs) + enc(msg.p0)


def decode_msg_a(params: PublicParams, payload: bytes) -> MsgA:
    dec = params.platform.decode
    off = 0
    vals = []
    for _ in range(params.n + 1):
        v, off = dec(payload, off)
        vals.append(v)
    if off != len(payload):
        raise ValueError("trailing bytes in first-round message")
    return MsgA(t_imgs=tuple(vals[:-1]), p0=vals[-1])


def encode_msg_b(params: PublicParams, msg: MsgB) -> bytes:
    enc = params.platform.encode
    return b"".join(enc(s) for s in msg.s_imgs)


def decode_msg_b(params: PublicParams, payload: bytes) -> MsgB:
    dec = params.platform.decode
    off = 0
    vals = []
    for _ in range(params.m):
        v, off = dec(payload, off)
        vals.append(v)
    if off != len(payload):
        raise ValueError("trailing bytes in second-round message")
    return MsgB(s_imgs=tuple(vals))
