"""Braid words over the infinite-strand presentation.

A word is a tuple of nonzero signed generator indices: ``i`` for σ_i and
``-i`` for σ_i⁻¹. No strand bound is attached to a word; bounds are computed
lazily where normal forms are taken.
"""
from __future__ import annotations

from typing import Iterable

from ..perms import Perm


class Word(tuple):
    __slots__ = ()

    def __new__(cls, letters: Iterable[int] = ()):
        t = tuple(int(x) for x in letters)
        if any(x == 0 for x in t):
            raise ValueError("generator indices are nonzero signed integers")
        return tuple.__new__(cls, t)

    def __mul__(self, other) -> "Word":  # type: ignore[override]
        return Word(tuple.__add__(self, tuple(other)))

    def inv(self) -> "Word":
        return Word(-x for x in reversed(self))

    def shift(self, p: int) -> "Word":
        """∂^p: σ_i ↦ σ_{i+p} on every letter."""
        if p < 0:
            raise ValueError("shift amount must be >= 0")
        return Word(x + p if x > 0 else x - p for x in self)

    def free_reduce(self) -> "Word":
        out: list[int] = []
        for x in self:
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
        return Word(out)

    def __repr__(self):
        return f"Word{tuple(self)}"


EMPTY = Word()


def braid_shift(w: Word, p: int) -> Word:
    return w.shift(p)


def braid_delta(n: int) -> Word:
    """δ_n = σ_{n-1} ⋯ σ_2 σ_1."""
    if n < 2:
        raise ValueError("braid_delta needs n >= 2")
    return Word(range(n - 1, 0, -1))


def braid_tau(p: int, q: int) -> Word:
    """τ_{p,q} = δ_{p+1} ∂(δ_{p+1}) ⋯ ∂^{q-1}(δ_{p+1})."""
    if p < 1 or q < 1:
        raise ValueError("braid_tau needs p, q >= 1")
    out: Word = EMPTY
    for j in range(q):
        out = out * braid_delta(p + 1).shift(j)
    return out


def braid_tau_eps(p: int, eps: Iterable[int]) -> Word:
    """τ(p,ε) = τ_{p,p}^{ε_k} ∂^p(τ_{p,p}^{ε_{k-1}}) ⋯ ∂^{(k-1)p}(τ_{p,p}^{ε_1})."""
    eps = list(eps)
    k = len(eps)
    if k < 1:
        raise ValueError("sign vector must be nonempty")
    tau = braid_tau(p, p)
    out: Word = EMPTY
    for idx in range(k):
        e = eps[k - 1 - idx]
        out = out * (tau if e == 1 else tau.inv()).shift(idx * p)
    return out


def perm_image(w: Word) -> Perm:
    """Image under σ_i ↦ (i, i+1); a monoid homomorphism to S_∞."""
    n = 1 + max((abs(x) for x in w), default=1)
    images = list(range(1, n + 1))
    for x in reversed(w):
        i = abs(x)
        images[i - 1], images[i] = images[i], images[i - 1]
    return Perm(images)


def strand_bound(*words: Word) -> int:
    """1 + largest generator index appearing in any of the words (min 2)."""
    m = 1
    for w in words:
        for x in w:
            if abs(x) > m:
                m = abs(x)
    return m + 1
