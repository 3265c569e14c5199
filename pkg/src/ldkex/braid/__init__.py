"""Braid group B_∞ platform: words, Garside normal form, shifted conjugacy."""
from .words import (
    EMPTY,
    Word,
    braid_delta,
    braid_shift,
    braid_tau,
    braid_tau_eps,
    perm_image,
    strand_bound,
)
from .nf import (
    KERNEL,
    GarsideNF,
    braid_eq,
    decode_braid,
    decode_nf,
    encode_braid,
    encode_nf,
    nf_to_word,
    normal_form,
    word_to_nf,
)
from .gsc import (
    braid_gsc,
    braid_platform,
    build_braid_partial_mld,
    check_prop_abc,
    make_braid_gsc_op,
    validate_gsc_element,
)

__all__ = [
    "EMPTY",
    "Word",
    "braid_delta",
    "braid_shift",
    "braid_tau",
    "braid_tau_eps",
    "perm_image",
    "strand_bound",
    "KERNEL",
    "GarsideNF",
    "braid_eq",
    "decode_braid",
    "decode_nf",
    "encode_braid",
    "encode_nf",
    "nf_to_word",
    "normal_form",
    "word_to_nf",
    "braid_gsc",
    "braid_platform",
    "build_braid_partial_mld",
    "check_prop_abc",
    "make_braid_gsc_op",
    "validate_gsc_element",
]
