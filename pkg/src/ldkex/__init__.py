"""Key establishment over left self-distributive systems.

Platforms (Laver tables, permutation and matrix groups, braid groups) expose
pools of mutually left-distributive binary operations; the protocol layer
runs iterated-application key exchange over any of them, and the attacks
layer provides constructive small-scale solvers for the underlying search
problems.
"""
from __future__ import annotations

from .magma import (
    IterHom,
    LawReport,
    Leaf,
    Node,
    OpId,
    Platform,
    TreeWord,
    check_endomorphism,
    check_left_distributivity,
    eval_tree,
    internal_nodes,
    iter_apply,
    leaf_count,
    parse_tree,
    random_tree,
    render_tree,
    tree_leaves,
)
from .laver import LaverTable, laver_platform, laver_table
from .groups import GroupOpsCtx, conj, group_platform, perm_group_ctx, symm_conj
from .perms import (
    Perm,
    build_sym_partial_mld,
    gsc_perm,
    make_perm_gsc_op,
    perm_mul,
    perm_shift,
    perm_tau,
    perm_tau_eps,
    random_perm,
    sym_platform,
)
from .matrices import (
    EndoSpec,
    FFRing,
    OpRejected,
    RatFuncField,
    TPolyRing,
    apply_endo,
    make_fconj_op,
    make_fsymmconj_op,
    mat_inv,
    mat_mul,
    matrix_platform,
    random_invertible,
)
from .braid import (
    Word,
    braid_eq,
    braid_gsc,
    braid_platform,
    build_braid_partial_mld,
    make_braid_gsc_op,
    normal_form,
)
from .protocol import (
    AliceSecret,
    BobSecret,
    MsgA,
    MsgB,
    PublicParams,
    Transcript,
    alice_keygen,
    alice_message,
    alice_shared,
    bob_keygen,
    bob_message,
    bob_shared,
    child_rng,
    closed_form_bob_public,
    derive_key_bytes,
    params_fingerprint,
    run_session,
    setup,
)
from .presets import PRESETS, make_params

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # magma core
    "Platform", "OpId", "TreeWord", "Leaf", "Node", "IterHom", "LawReport",
    "eval_tree", "iter_apply", "random_tree", "parse_tree", "render_tree",
    "internal_nodes", "leaf_count", "tree_leaves",
    "check_left_distributivity", "check_endomorphism",
    # platforms
    "LaverTable", "laver_table", "laver_platform",
    "GroupOpsCtx", "conj", "symm_conj", "group_platform", "perm_group_ctx",
    "Perm", "perm_mul", "perm_shift", "perm_tau", "perm_tau_eps", "random_perm",
    "sym_platform", "gsc_perm", "make_perm_gsc_op", "build_sym_partial_mld",
    "EndoSpec", "FFRing", "TPolyRing", "RatFuncField", "OpRejected",
    "apply_endo", "mat_mul", "mat_inv", "matrix_platform", "random_invertible",
    "make_fconj_op", "make_fsymmconj_op",
    "Word", "braid_eq", "braid_gsc", "braid_platform", "normal_form",
    "make_braid_gsc_op", "build_braid_partial_mld",
    # protocol
    "PublicParams", "AliceSecret", "BobSecret", "MsgA", "MsgB", "Transcript",
    "setup", "alice_keygen", "bob_keygen", "alice_message", "bob_message",
    "alice_shared", "bob_shared", "run_session", "derive_key_bytes",
    "child_rng", "params_fingerprint", "closed_form_bob_public",
    "PRESETS", "make_params",
]
