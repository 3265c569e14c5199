"""Named parameter presets: one seeded, deterministic builder per platform shape.

Each builder makes every random draw from a single "params" child stream in a
fixed order (session shape, then op pools, then public generators), so two
peers given the same name and seed construct byte-identical public data.

`make_params(name, seed)` returns `(params, session_kwargs)` where the kwargs
carry the iteration depths and tree sizes expected by `run_session`.

The desk-scale fixtures (`laver-3`, `s4-conj`, `sym-sccp`, `sym-sdp24`) keep
every search space within constructive-attack reach. The two braid challenge
presets also ship `-scaled` variants with reduced depth/tree sizes, since
transcript and attack cost grows quickly with the number of internal nodes;
the full-size variants generate fine but are not sized for test budgets.
"""
from __future__ import annotations

from .braid import Word, braid_platform, build_braid_partial_mld, make_braid_gsc_op
from .groups import group_platform, perm_group_ctx
from .laver import laver_platform
from .matrices import (
    EndoSpec,
    FFRing,
    RatFuncField,
    TPolyRing,
    make_fconj_op,
    make_fsymmconj_op,
    matrix_platform,
)
from .perms import build_sym_partial_mld, random_perm, sym_platform
from .protocol import PublicParams, child_rng, setup


def _laver3(name, seed, rng):
    plat = laver_platform(3)
    op = plat.op(0)
    params = setup(plat, [op], [op], 2, 2, rng, meta={"table_n": 3},
                   preset=name, seed=seed)
    return params, {"k_A": 2, "k_B": 2, "l_A": 2, "l_B": 2}


def _s4_conj(name, seed, rng):
    plat, op = group_platform(perm_group_ctx(4), "conj")
    params = setup(plat, [op], [op], 2, 2, rng, meta={"degree": 4},
                   preset=name, seed=seed)
    return params, {"k_A": 1, "k_B": 1, "l_A": 1, "l_B": 1}


def _sym3(name, seed, rng):
    N, p, q = 200, 20, 10
    kw = {
        "k_A": rng.randint(2, 30),
        "k_B": rng.randint(2, 30),
        "l_A": rng.randint(10, 20),
        "l_B": rng.randint(10, 20),
    }
    plat = sym_platform(N)
    pool_a, pool_b = build_sym_partial_mld(plat, p, q, q, (4, 4), rng)
    params = setup(plat, pool_a, pool_b, 1, 1, rng,
                   meta={"N": N, "p": p, "q1": q, "q2": q},
                   preset=name, seed=seed)
    return params, kw


def _sym_sccp(name, seed, rng):
    # N = 2p and depth k = 1: generators and the iteration vector all live in
    # S_p = S_{N-p}, the shape the shifted-pattern reduction assumes.
    N, p, q1, q2, k = 8, 4, 2, 2, 1
    plat = sym_platform(N - p)
    pool_a, pool_b = build_sym_partial_mld(plat, p, q1, q2, (2, 2), rng,
                                           enforce_min_blocks=False)
    in_sp = lambda r: random_perm(p, r)
    params = setup(plat, pool_a, pool_b, 1, 1, rng,
                   meta={"N": N, "p": p, "q1": q1, "q2": q2},
                   preset=name, seed=seed, s_sampler=in_sp, t_sampler=in_sp)
    return params, {"k_A": k, "k_B": k, "l_A": 1, "l_B": [0]}


def _sym_sdp24(name, seed, rng):
    # Depth-2 shape for the shifted-pattern reduction: b_j must stay inside
    # S_{jp}, so Bob's j-th tree gets at most j-1 internal nodes and the t
    # generators are drawn from S_p.
    N, p, q1, q2, k = 24, 8, 3, 5, 2
    plat = sym_platform(N - p)
    pool_a, pool_b = build_sym_partial_mld(plat, p, q1, q2, (2, 2), rng)
    params = setup(plat, pool_a, pool_b, 1, 1, rng,
                   meta={"N": N, "p": p, "q1": q1, "q2": q2},
                   preset=name, seed=seed,
                   s_sampler=lambda r: random_perm(N - k * p, r),
                   t_sampler=lambda r: random_perm(p, r))
    return params, {"k_A": 1, "k_B": k, "l_A": 1, "l_B": [0, 1]}


def _braid1(name, seed, rng, *, k=3, l=4):
    N, L, p, q1, q2, L_ops = 10, 15, 6, 3, 3, 5
    n_enc = max(N, 2 * p) + p * (2 * k + 2 * l) + 1
    plat = braid_platform(N, L, n_enc=n_enc)
    pool_a, pool_b = build_braid_partial_mld(plat, p, q1, q2, L_ops, rng,
                                             sizes=(3, 3))
    params = setup(plat, pool_a, pool_b, 1, 1, rng,
                   meta={"N": N, "L": L, "p": p, "q1": q1, "q2": q2,
                         "L_ops": L_ops, "n_enc": n_enc},
                   preset=name, seed=seed)
    return params, {"k_A": k, "k_B": k, "l_A": l, "l_B": l}


def _braid2(name, seed, rng, *, k=5, l=5):
    # Shifted conjugacy and its mirror: x * y = ∂(x⁻¹)·σ1^{±1}·∂(y)·x. Both
    # ops sit in both pools; every cross pair is distributive.
    N, L, p = 4, 25, 1
    n_enc = max(N, 2 * p) + p * (2 * k + 2 * l) + 1
    plat = braid_platform(N, L, n_enc=n_enc)
    op_pos = make_braid_gsc_op(plat, p, Word((1,)), label="*")
    op_neg = make_braid_gsc_op(plat, p, Word((-1,)), label="*~")
    pool = [op_pos, op_neg]
    params = setup(plat, pool, pool, 1, 1, rng,
                   meta={"N": N, "L": L, "p": p, "n_enc": n_enc},
                   preset=name, seed=seed)
    return params, {"k_A": k, "k_B": k, "l_A": l, "l_B": l}


def _frob(name, seed, rng):
    d, char, N, m, k, l = 6, 2, 40, 8, 25, 10
    ring = FFRing(char, N)
    f = EndoSpec("frobenius", power=1)
    plat = matrix_platform(ring, d)
    op = make_fconj_op(plat, f)
    params = setup(plat, [op], [op], m, m, rng,
                   meta={"d": d, "char": char, "ext_degree": N, "endo": "frobenius"},
                   preset=name, seed=seed)
    return params, {"k_A": k, "k_B": k, "l_A": l, "l_B": l}


def _ntru_like(name, seed, rng):
    d, char, N, m, k, l = 4, 17, 16, 8, 10, 10
    ring = TPolyRing(char, N)
    r = rng.randrange(1, char)  # any unit: r^(char-1) = 1 = r^N
    f = EndoSpec("eval-at", point=r)
    plat = matrix_platform(ring, d, endo=f)
    op = make_fsymmconj_op(plat, f)
    params = setup(plat, [op], [op], m, m, rng,
                   meta={"d": d, "char": char, "poly_mod_degree": N, "eval_point": r},
                   preset=name, seed=seed)
    return params, {"k_A": k, "k_B": k, "l_A": l, "l_B": l}


def _ratfunc(name, seed, rng):
    d, q, m, k, l = 4, 37, 6, 5, 5
    ring = RatFuncField(q)
    c = rng.randrange(1, q)
    f = EndoSpec("eval-var-at", point=c)
    plat = matrix_platform(ring, d, endo=f)
    op = make_fsymmconj_op(plat, f)
    params = setup(plat, [op], [op], m, m, rng,
                   meta={"d": d, "q": q, "eval_point": c},
                   preset=name, seed=seed)
    return params, {"k_A": k, "k_B": k, "l_A": l, "l_B": l}


PRESETS = {
    "laver-3": _laver3,
    "s4-conj": _s4_conj,
    "sym-3": _sym3,
    "sym-sccp": _sym_sccp,
    "sym-sdp24": _sym_sdp24,
    "braid-1": _braid1,
    "braid-1-scaled": lambda name, seed, rng: _braid1(name, seed, rng, k=2, l=2),
    "braid-2": _braid2,
    "braid-2-scaled": lambda name, seed, rng: _braid2(name, seed, rng, k=5, l=3),
    "frob": _frob,
    "ntru-like": _ntru_like,
    "ratfunc": _ratfunc,
}


def make_params(name: str, seed: int) -> tuple[PublicParams, dict]:
    """Build a preset's public parameters and its run_session shape kwargs."""
    try:
        builder = PRESETS[name]
    except KeyError:
        raise ValueError(f"unknown preset {name!r}; known: {', '.join(sorted(PRESETS))}") from None
    return builder(name, seed, child_rng(seed, "params"))
