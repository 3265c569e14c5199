"""Pure-Python Garside left-normal-form kernel.

Computes the left-greedy normal form of a braid word at a fixed strand bound
``n``: a power ``inf`` of the half-twist Δ_n followed by a left-weighted
sequence of permutation-braid factors. Each factor is its permutation, stored
as a list of 1-based images under apply-first composition
``(A·B)(x) = B(A(x))``.

Negative letters are eliminated up front: σ_i⁻¹ = Δ⁻¹·(Δσ_i⁻¹), and each
Δ⁻¹ is slid to the far left, twisting every factor it passes by
τ(P) = Δ⁻¹PΔ. Since the image of Δ is an involution, only the parity of the
number of negative letters to the right of a position matters.

This module is the fallback twin of the compiled kernel ``_nf_cy``; both
export ``word_to_nf`` with identical semantics.
"""
from __future__ import annotations

KERNEL = "python"


def _id(n):
    return list(range(1, n + 1))


def _is_id(P):
    for i, v in enumerate(P):
        if v != i + 1:
            return False
    return True


def _is_delta(P):
    n = len(P)
    for i, v in enumerate(P):
        if v != n - i:
            return False
    return True


def _inv(P):
    r = [0] * len(P)
    for i, p in enumerate(P):
        r[p - 1] = i + 1
    return r


def _tau(P):
    n = len(P)
    return [n + 1 - P[n - 1 - i] for i in range(n)]


def _make_left_weighted(A, Ainv, B):
    """Left-weight the adjacent factor pair (A, B) in place.

    Moves every generator that can start B across to the tail of A.
    Returns True if A changed.
    """
    n = len(A)
    changed = False
    s = 1
    while s < n:
        if B[s - 1] > B[s] and Ainv[s - 1] < Ainv[s]:
            pa, pb = Ainv[s - 1], Ainv[s]
            A[pa - 1], A[pb - 1] = s + 1, s
            Ainv[s - 1], Ainv[s] = pb, pa
            B[s - 1], B[s] = B[s], B[s - 1]
            changed = True
            if s > 1:
                s -= 1
                continue
        s += 1
    return changed


def _push_factor(factors, X):
    """Append factor X and restore left-weightedness by bubbling leftwards.

    May leave a leading Δ or trailing identity for the caller to strip.
    """
    factors.append(X)
    j = len(factors) - 2
    while j >= 0:
        A = factors[j]
        Ainv = _inv(A)
        if not _make_left_weighted(A, Ainv, factors[j + 1]):
            break
        if _is_id(factors[j + 1]):
            factors.pop(j + 1)
        j -= 1


def word_to_nf(word, n):
    """Left normal form of ``word`` at strand bound ``n``.

    Returns ``(inf, factors)`` with factors a list of 1-based image tuples,
    none equal to the identity or to Δ_n.
    """
    m = len(word)
    neg_suffix = [0] * (m + 1)
    for i in range(m - 1, -1, -1):
        neg_suffix[i] = neg_suffix[i + 1] + (1 if word[i] < 0 else 0)
    inf = -neg_suffix[0]
    factors: list[list[int]] = []
    cur = None  # running factor, greedily extended by positive letters
    cur_inv = None

    def flush():
        nonlocal cur, cur_inv
        if cur is not None and not _is_id(cur):
            _push_factor(factors, cur)
        cur = cur_inv = None

    for pos, x in enumerate(word):
        if not -n < x < n or x == 0:
            raise ValueError(f"letter {x} out of range for strand bound {n}")
        par = neg_suffix[pos + 1] & 1  # Δ-twists crossing this letter
        if x > 0:
            s = x if par == 0 else n - x
            if cur is None:
                cur = _id(n)
                cur_inv = _id(n)
            if cur_inv[s - 1] < cur_inv[s]:
                pa, pb = cur_inv[s - 1], cur_inv[s]
                cur[pa - 1], cur[pb - 1] = s + 1, s
                cur_inv[s - 1], cur_inv[s] = pb, pa
            else:
                flush()
                cur = _id(n)
                cur_inv = _id(n)
                cur[s - 1], cur[s] = s + 1, s
                cur_inv[s - 1], cur_inv[s] = s + 1, s
        else:
            i = -x
            # C = Δ·σ_i⁻¹ as a permutation: C(t) = swap_i(n+1-t)
            C = [0] * n
            for t in range(1, n + 1):
                v = n + 1 - t
                if v == i:
                    v = i + 1
                elif v == i + 1:
                    v = i
                C[t - 1] = v
            if par == 1:
                C = _tau(C)
            flush()
            cur = C
            cur_inv = _inv(C)
    flush()
    while factors and _is_delta(factors[0]):
        inf += 1
        factors.pop(0)
    while factors and _is_id(factors[-1]):
        factors.pop()
    return inf, [tuple(f) for f in factors]
