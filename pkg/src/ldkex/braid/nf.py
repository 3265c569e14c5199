"""Garside left normal forms: canonical braid values, equality, encoding.

The heavy factorization loop lives in a kernel module with two
interchangeable implementations: a compiled extension (``_nf_cy``) and a
pure-Python fallback (``_nf_py``). The compiled kernel is used when it built
successfully; set the environment variable ``LDKEX_PURE_PY=1`` to force the
fallback. ``KERNEL`` names the active one.
"""
from __future__ import annotations

import os
import struct
from dataclasses import dataclass

from ..perms import Perm, decode_perm, encode_perm
from .words import Word, strand_bound

if os.environ.get("LDKEX_PURE_PY"):
    from . import _nf_py as _kernel
else:
    try:
        from . import _nf_cy as _kernel  # type: ignore[attr-defined]
    except ImportError:
        from . import _nf_py as _kernel

KERNEL: str = _kernel.KERNEL
word_to_nf = _kernel.word_to_nf


@dataclass(frozen=True)
class GarsideNF:
    """Δ_n^inf followed by left-weighted permutation-braid factors.

    Two words are equal in B_n iff their normal forms at the same strand
    bound n are component-wise identical. Factors are stored as Perms
    (trailing fixed points trimmed; n restores the padding).
    """

    n: int
    inf: int
    factors: tuple[Perm, ...]


def normal_form(w, n: int | None = None) -> GarsideNF:
    """Left normal form of a word at strand bound n (default: 1 + max index)."""
    if isinstance(w, GarsideNF):
        if n is None or n == w.n:
            return w
        w = nf_to_word(w)
    word = Word(w)
    if n is None:
        n = strand_bound(word)
    inf, factors = word_to_nf(word, n)
    return GarsideNF(n, inf, tuple(Perm(f) for f in factors))


def braid_eq(u, v) -> bool:
    """Word-problem equality: identical normal forms at a common strand bound."""
    u = u if isinstance(u, Word) else Word(u)
    v = v if isinstance(v, Word) else Word(v)
    n = strand_bound(u, v)
    return word_to_nf(u, n) == word_to_nf(v, n)


def perm_factor_word(P) -> list[int]:
    """Reduced word for a permutation-braid factor (apply-first images)."""
    P = list(P)
    out: list[int] = []
    while True:
        for s in range(1, len(P)):
            if P[s - 1] > P[s]:
                out.append(s)
                P[s - 1], P[s] = P[s], P[s - 1]
                break
        else:
            return out


def nf_to_word(nf: GarsideNF) -> Word:
    """A braid word representing the normal form."""
    n = nf.n
    delta = perm_factor_word(range(n, 0, -1))
    out: list[int] = []
    if nf.inf >= 0:
        out += delta * nf.inf
    else:
        out += [-x for x in reversed(delta)] * (-nf.inf)
    for f in nf.factors:
        images = [f(i) for i in range(1, n + 1)]
        out += perm_factor_word(images)
    return Word(out)


def encode_nf(nf: GarsideNF) -> bytes:
    """2-byte n, 4-byte signed inf, 2-byte factor count, then Perm encodings."""
    head = struct.pack(">HiH", nf.n, nf.inf, len(nf.factors))
    return head + b"".join(encode_perm(f) for f in nf.factors)


def decode_nf(data: bytes, offset: int = 0) -> tuple[GarsideNF, int]:
    n, inf, count = struct.unpack_from(">HiH", data, offset)
    off = offset + 8
    factors = []
    for _ in range(count):
        f, off = decode_perm(data, off)
        factors.append(f)
    return GarsideNF(n, inf, tuple(factors)), off


def encode_braid(w, n: int | None = None) -> bytes:
    return encode_nf(normal_form(w, n))


def decode_braid(data: bytes, offset: int = 0) -> tuple[Word, int]:
    nf, off = decode_nf(data, offset)
    return nf_to_word(nf), off
