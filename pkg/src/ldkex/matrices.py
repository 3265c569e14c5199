"""Matrix-group platforms for f-conjugacy and f-symmetric conjugacy.

Three ring contexts share one duck-typed interface (``zero``/``one``/``add``/
``sub``/``neg``/``mul``/``is_unit``/``inv``/``rand``/``encode``/``decode``):

* ``FFRing(p, N)`` — GF(p^N) with the lexicographically-least monic
  irreducible modulus (deterministic, so fixtures reproduce anywhere).
  p = 2 packs coefficients into ints; odd p uses fixed-length tuples.
* ``TPolyRing(p, N)`` — F_p[X]/(X^N − 1), fixed-length coefficient tuples.
* ``RatFuncField(q)`` — univariate F_q(t), normalized (num, den) pairs with
  monic denominator and coprime parts.

Matrices are plain d×d nested tuples of ring elements; the ring context is
passed explicitly (platform closures carry it). The group operations are

    x *_f y = f(x⁻¹y)·x = f(x)⁻¹·f(y)·x      (f-conjugacy, any ring endo f)
    x ∘_f y = f(xy⁻¹)·x = f(x)·f(y)⁻¹·x      (f-symmetric conjugacy, f a projector)

computed in the factored form on the right: for evaluation-kind f the images
f(x), f(y) have constant entries, so the only inversions ever needed are of
constant matrices over the base field — no polynomial or rational-function
Gaussian elimination occurs inside protocol operations, and entry degrees
stay bounded by the generators' degrees.

Matrix inversion strategy is ring-dependent: ordinary Gaussian elimination
for fields; evaluation/interpolation through the N roots of X^N − 1 for
truncated polynomials when X^N − 1 splits (N | p−1); adjugate over a
memoized-Laplace determinant otherwise (the quotient ring has zero divisors,
so fraction-free elimination is not available).
"""
from __future__ import annotations

import itertools
import math
import struct
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Sequence

from .groups import GroupOpsCtx
from .magma import LawReport, OpId, Platform

Mat = tuple  # d×d nested tuples of ring elements


class OpRejected(ValueError):
    """An operand's image under the platform endomorphism is singular/undefined."""


# ---------------------------------------------------------------------------
# small number theory and dense polynomials over F_p (little-endian tuples)
# ---------------------------------------------------------------------------


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _ptrim(a: Sequence[int]) -> tuple[int, ...]:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def _padd(a, b, p) -> tuple[int, ...]:
    n = max(len(a), len(b))
    return _ptrim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)])


def _psub(a, b, p) -> tuple[int, ...]:
    n = max(len(a), len(b))
    return _ptrim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def _pmul(a, b, p) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _ptrim(out)


def _pdivmod(a, b, p) -> tuple[tuple[int, ...], tuple[int, ...]]:
    a, b = list(_ptrim(a)), _ptrim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], p - 2, p)
    q = [0] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b):
        c = (a[-1] * inv_lead) % p
        k = len(a) - len(b)
        q[k] = c
        for i, bi in enumerate(b):
            a[k + i] = (a[k + i] - c * bi) % p
        while a and a[-1] == 0:
            a.pop()
    return _ptrim(q), _ptrim(a)


def _pmonic(a, p) -> tuple[int, ...]:
    a = _ptrim(a)
    if not a:
        return ()
    c = pow(a[-1], p - 2, p)
    return tuple((x * c) % p for x in a)


def _pgcd(a, b, p) -> tuple[int, ...]:
    a, b = _ptrim(a), _ptrim(b)
    while b:
        a, b = b, _pdivmod(a, b, p)[1]
    return _pmonic(a, p)


def _pxgcd(a, b, p):
    """(g, u, v) with u·a + v·b = g, g monic."""
    r0, r1 = _ptrim(a), _ptrim(b)
    u0, u1 = (1,), ()
    v0, v1 = (), (1,)
    while r1:
        q, r = _pdivmod(r0, r1, p)
        r0, r1 = r1, r
        u0, u1 = u1, _psub(u0, _pmul(q, u1, p), p)
        v0, v1 = v1, _psub(v0, _pmul(q, v1, p), p)
    if not r0:
        return (), u0, v0
    c = pow(r0[-1], p - 2, p)
    scale = lambda t: tuple((x * c) % p for x in t)
    return scale(r0), scale(u0), scale(v0)


def _ppowmod(base, e: int, mod, p) -> tuple[int, ...]:
    result = (1,)
    base = _pdivmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = _pdivmod(_pmul(result, base, p), mod, p)[1]
        base = _pdivmod(_pmul(base, base, p), mod, p)[1]
        e >>= 1
    return result


# ---- packed GF(2) polynomials (ints, bit i = coefficient of X^i) ----------


def _gf2_mul(a: int, b: int) -> int:
    out = 0
    while a:
        if a & 1:
            out ^= b
        a >>= 1
        b <<= 1
    return out


def _gf2_mod(a: int, f: int) -> int:
    df = f.bit_length() - 1
    da = a.bit_length() - 1
    while da >= df:
        a ^= f << (da - df)
        da = a.bit_length() - 1
    return a


def _gf2_mulmod(a: int, b: int, f: int) -> int:
    return _gf2_mod(_gf2_mul(a, b), f)


def _gf2_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _gf2_mod(a, b)
    return a


# ---------------------------------------------------------------------------
# modulus selection: lexicographically-least monic irreducible
# ---------------------------------------------------------------------------


def _poly_from_code(code: int, p: int) -> tuple[int, ...]:
    out = []
    while code:
        out.append(code % p)
        code //= p
    return tuple(out)


def _is_irreducible(f: tuple[int, ...], p: int) -> bool:
    n = len(f) - 1
    x = _pdivmod((0, 1), f, p)[1]  # X reduced mod f (matters for n = 1)
    t = x
    for _ in range(n):
        t = _ppowmod(t, p, f, p)
    if _psub(t, x, p):
        return False
    for ell in _prime_factors(n):
        t = x
        for _ in range(n // ell):
            t = _ppowmod(t, p, f, p)
        if _pgcd(_psub(t, x, p), f, p) != (1,):
            return False
    return True


@lru_cache(maxsize=None)
def least_irreducible(p: int, n: int) -> tuple[int, ...]:
    """Monic irreducible of degree n over F_p with least integer code Σ cᵢpⁱ."""
    for code in range(p**n, 2 * p**n):
        f = _poly_from_code(code, p)
        if _is_irreducible(f, p):
            return f
    raise RuntimeError("no irreducible polynomial found")  # pragma: no cover


# ---------------------------------------------------------------------------
# ring contexts
# ---------------------------------------------------------------------------


def _coeff_width(p: int) -> int:
    return max(1, ((p - 1).bit_length() + 7) // 8)


def _encode_coeffs(coeffs: Sequence[int], width: int) -> bytes:
    return b"".join(int(c).to_bytes(width, "little") for c in coeffs)


def _decode_coeffs(buf: bytes, offset: int, count: int, width: int) -> tuple[list[int], int]:
    out = []
    for i in range(count):
        out.append(int.from_bytes(buf[offset : offset + width], "little"))
        offset += width
    return out, offset


class FFRing:
    """GF(p^N). Elements: packed ints for p=2, length-N coefficient tuples otherwise."""

    kind = "finite-field"

    def __init__(self, p: int, N: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        if N < 1:
            raise ValueError("N must be >= 1")
        self.p = p
        self.N = N
        self.order = p**N
        self.modulus = least_irreducible(p, N)
        self._packed = p == 2
        self._w = _coeff_width(p)
        if self._packed:
            self._fint = sum(c << i for i, c in enumerate(self.modulus))
            self.zero = 0
            self.one = 1
        else:
            self.zero = (0,) * N
            self.one = (1,) + (0,) * (N - 1)

    def _fix(self, coeffs) -> Any:
        """Canonicalize reduced coefficients to the element representation."""
        if self._packed:
            return sum((c & 1) << i for i, c in enumerate(coeffs))
        coeffs = list(coeffs)[: self.N]
        return tuple(coeffs + [0] * (self.N - len(coeffs)))

    def from_coeffs(self, coeffs: Sequence[int]) -> Any:
        reduced = _pdivmod([c % self.p for c in coeffs], self.modulus, self.p)[1]
        return self._fix(reduced)

    def coeffs(self, a) -> list[int]:
        if self._packed:
            return [(a >> i) & 1 for i in range(self.N)]
        return list(a)

    def add(self, a, b):
        if self._packed:
            return a ^ b
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def sub(self, a, b):
        if self._packed:
            return a ^ b
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        if self._packed:
            return a
        return tuple((-x) % self.p for x in a)

    def mul(self, a, b):
        if self._packed:
            return _gf2_mulmod(a, b, self._fint)
        return self._fix(_pdivmod(_pmul(a, b, self.p), self.modulus, self.p)[1])

    def is_unit(self, a) -> bool:
        return a != self.zero

    def inv(self, a):
        if a == self.zero:
            raise ZeroDivisionError("zero has no inverse")
        if self._packed:
            return self.pow_(a, self.order - 2)
        g, u, _ = _pxgcd(_ptrim(a), self.modulus, self.p)
        if g != (1,):  # pragma: no cover - modulus is irreducible
            raise ZeroDivisionError("non-invertible element")
        return self._fix(u)

    def pow_(self, a, e: int):
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def frob(self, a, power: int = 1):
        return self.pow_(a, self.p ** (power % self.N))

    def rand(self, rng):
        if self._packed:
            return rng.randrange(self.order)
        return tuple(rng.randrange(self.p) for _ in range(self.N))

    def elements(self):
        if self._packed:
            return list(range(self.order))
        return [self._fix(c) for c in itertools.product(range(self.p), repeat=self.N)]

    def encode(self, a) -> bytes:
        return _encode_coeffs(self.coeffs(a), self._w)

    def decode(self, buf: bytes, offset: int = 0):
        coeffs, offset = _decode_coeffs(buf, offset, self.N, self._w)
        return self._fix(coeffs), offset

    def __repr__(self):
        return f"<FFRing GF({self.p}^{self.N})>"


class TPolyRing:
    """F_p[X]/(X^N − 1). Elements are length-N coefficient tuples."""

    kind = "truncated-poly"

    def __init__(self, p: int, N: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        if N < 1:
            raise ValueError("N must be >= 1")
        self.p = p
        self.N = N
        self._w = _coeff_width(p)
        self.zero = (0,) * N
        self.one = (1,) + (0,) * (N - 1)
        self._mod = tuple([-1 % p] + [0] * (N - 1) + [1])  # X^N − 1
        # X^N − 1 splits into distinct linear factors iff N | p−1 (then the
        # N-th roots of unity lie in F_p and evaluation/interpolation applies)
        self.splits = (p - 1) % N == 0 and N % p != 0 if N > 1 else True
        self.roots: tuple[int, ...] = ()
        self._inv_vander: tuple[tuple[int, ...], ...] = ()
        if self.splits:
            roots = [r for r in range(1, p) if pow(r, N, p) == 1]
            if len(roots) == N:
                self.roots = tuple(roots)
                V = [[pow(r, j, p) for j in range(N)] for r in roots]
                self._inv_vander = tuple(tuple(row) for row in _int_mat_inv(V, p))
            else:  # pragma: no cover - N | p−1 guarantees N roots
                self.splits = False

    def _fix(self, coeffs) -> tuple[int, ...]:
        out = [0] * self.N
        for i, c in enumerate(coeffs):
            out[i % self.N] = (out[i % self.N] + c) % self.p
        return tuple(out)

    def from_coeffs(self, coeffs: Sequence[int]) -> tuple[int, ...]:
        return self._fix(coeffs)

    def coeffs(self, a) -> list[int]:
        return list(a)

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        return tuple((-x) % self.p for x in a)

    def mul(self, a, b):
        out = [0] * self.N
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    k = i + j
                    if k >= self.N:
                        k -= self.N
                    out[k] = (out[k] + ai * bj) % self.p
        return tuple(out)

    def is_unit(self, a) -> bool:
        return _pgcd(_ptrim(a), self._mod, self.p) == (1,)

    def inv(self, a):
        g, u, _ = _pxgcd(_ptrim(a), self._mod, self.p)
        if g != (1,):
            raise ZeroDivisionError("element is not a unit (shares a factor with X^N − 1)")
        return self._fix(u)

    def eval_at(self, a, r: int) -> int:
        out = 0
        for c in reversed(a):
            out = (out * r + c) % self.p
        return out

    def interpolate(self, values: Sequence[int]) -> tuple[int, ...]:
        """Coefficients of the element taking the given values at `self.roots`."""
        if not self.splits:
            raise ValueError("ring does not split; interpolation unavailable")
        return tuple(
            sum(self._inv_vander[i][j] * values[j] for j in range(self.N)) % self.p
            for i in range(self.N)
        )

    def rand(self, rng):
        return tuple(rng.randrange(self.p) for _ in range(self.N))

    def elements(self):
        return [tuple(c) for c in itertools.product(range(self.p), repeat=self.N)]

    def encode(self, a) -> bytes:
        return _encode_coeffs(a, self._w)

    def decode(self, buf: bytes, offset: int = 0):
        coeffs, offset = _decode_coeffs(buf, offset, self.N, self._w)
        return tuple(coeffs), offset

    def __repr__(self):
        return f"<TPolyRing F_{self.p}[X]/(X^{self.N}-1)>"


class RatFuncField:
    """Univariate rational functions over F_q: normalized (num, den) pairs.

    den is monic, gcd(num, den) = 1, and zero is ((), (1,)). Tuples are
    little-endian trimmed coefficient vectors.
    """

    kind = "rational-function"

    def __init__(self, q: int):
        if not _is_prime(q):
            raise ValueError(f"{q} is not prime")
        self.q = q
        self._w = _coeff_width(q)
        self.zero = ((), (1,))
        self.one = ((1,), (1,))

    def make(self, num, den=(1,)):
        return self._norm(_ptrim([c % self.q for c in num]), _ptrim([c % self.q for c in den]))

    def _norm(self, num, den):
        q = self.q
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            return ((), (1,))
        g = _pgcd(num, den, q)
        if len(g) > 1:
            num = _pdivmod(num, g, q)[0]
            den = _pdivmod(den, g, q)[0]
        c = pow(den[-1], q - 2, q)
        num = tuple(x * c % q for x in num)
        den = tuple(x * c % q for x in den)
        return (num, den)

    def add(self, a, b):
        q = self.q
        return self._norm(
            _padd(_pmul(a[0], b[1], q), _pmul(b[0], a[1], q), q), _pmul(a[1], b[1], q)
        )

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def neg(self, a):
        return (tuple((-x) % self.q for x in a[0]), a[1])

    def mul(self, a, b):
        q = self.q
        return self._norm(_pmul(a[0], b[0], q), _pmul(a[1], b[1], q))

    def is_unit(self, a) -> bool:
        return bool(a[0])

    def inv(self, a):
        if not a[0]:
            raise ZeroDivisionError("zero has no inverse")
        return self._norm(a[1], a[0])

    def eval_at(self, a, c: int) -> int:
        q = self.q
        horner = lambda poly: _eval_poly(poly, c, q)
        dv = horner(a[1])
        if dv == 0:
            raise OpRejected(f"denominator vanishes at t={c}")
        return horner(a[0]) * pow(dv, q - 2, q) % q

    def rand(self, rng, degree: int = 1):
        """Random polynomial element of degree <= `degree` (denominator 1)."""
        return self.make([rng.randrange(self.q) for _ in range(degree + 1)])

    def encode(self, a) -> bytes:
        num, den = a
        return (
            struct.pack(">HH", len(num), len(den))
            + _encode_coeffs(num, self._w)
            + _encode_coeffs(den, self._w)
        )

    def decode(self, buf: bytes, offset: int = 0):
        ln, ld = struct.unpack_from(">HH", buf, offset)
        offset += 4
        num, offset = _decode_coeffs(buf, offset, ln, self._w)
        den, offset = _decode_coeffs(buf, offset, ld, self._w)
        return (tuple(num), tuple(den)), offset

    def __repr__(self):
        return f"<RatFuncField F_{self.q}(t)>"


def _eval_poly(poly, c, q):
    out = 0
    for co in reversed(poly):
        out = (out * c + co) % q
    return out


def make_ring(kind: str, **params):
    """Ring context factory: finite-field(p,N) | truncated-poly(p,N) | rational-function(q)."""
    if kind == "finite-field":
        return FFRing(params["p"], params["N"])
    if kind == "truncated-poly":
        return TPolyRing(params["p"], params["N"])
    if kind == "rational-function":
        return RatFuncField(params["q"])
    raise ValueError(f"unknown ring kind {kind!r}")


# ---------------------------------------------------------------------------
# integer matrices mod p (used by the CRT path and constant-image inverses)
# ---------------------------------------------------------------------------


def _int_mat_inv(M, p: int):
    d = len(M)
    A = [list(row) + [1 if i == j else 0 for j in range(d)] for i, row in enumerate(M)]
    for col in range(d):
        piv = next((r for r in range(col, d) if A[r][col] % p), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix over F_p")
        A[col], A[piv] = A[piv], A[col]
        c = pow(A[col][col], p - 2, p)
        A[col] = [x * c % p for x in A[col]]
        for r in range(d):
            if r != col and A[r][col]:
                f = A[r][col]
                A[r] = [(x - f * y) % p for x, y in zip(A[r], A[col])]
    return [row[d:] for row in A]


def _int_mat_det(M, p: int) -> int:
    d = len(M)
    A = [list(row) for row in M]
    det = 1
    for col in range(d):
        piv = next((r for r in range(col, d) if A[r][col] % p), None)
        if piv is None:
            return 0
        if piv != col:
            A[col], A[piv] = A[piv], A[col]
            det = -det % p
        det = det * A[col][col] % p
        c = pow(A[col][col], p - 2, p)
        for r in range(col + 1, d):
            if A[r][col]:
                f = A[r][col] * c % p
                A[r] = [(x - f * y) % p for x, y in zip(A[r], A[col])]
    return det % p


# ---------------------------------------------------------------------------
# matrices over a ring context
# ---------------------------------------------------------------------------


def mat_identity(ring, d: int) -> Mat:
    return tuple(
        tuple(ring.one if i == j else ring.zero for j in range(d)) for i in range(d)
    )


def mat_mul(ring, A: Mat, B: Mat) -> Mat:
    d = len(A)
    Bt = tuple(zip(*B))
    out = []
    for i in range(d):
        row = []
        for j in range(d):
            acc = ring.zero
            for a, b in zip(A[i], Bt[j]):
                acc = ring.add(acc, ring.mul(a, b))
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def _mat_inv_field(ring, A: Mat) -> Mat:
    d = len(A)
    M = [list(row) + [ring.one if i == j else ring.zero for j in range(d)] for i, row in enumerate(A)]
    for col in range(d):
        piv = next((r for r in range(col, d) if M[r][col] != ring.zero), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        M[col], M[piv] = M[piv], M[col]
        c = ring.inv(M[col][col])
        M[col] = [ring.mul(x, c) for x in M[col]]
        for r in range(d):
            if r != col and M[r][col] != ring.zero:
                f = M[r][col]
                M[r] = [ring.sub(x, ring.mul(f, y)) for x, y in zip(M[r], M[col])]
    return tuple(tuple(row[d:]) for row in M)


def _mat_det_field(ring, A: Mat):
    d = len(A)
    M = [list(row) for row in A]
    det = ring.one
    neg = False
    for col in range(d):
        piv = next((r for r in range(col, d) if M[r][col] != ring.zero), None)
        if piv is None:
            return ring.zero
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            neg = not neg
        det = ring.mul(det, M[col][col])
        c = ring.inv(M[col][col])
        for r in range(col + 1, d):
            if M[r][col] != ring.zero:
                f = ring.mul(M[r][col], c)
                M[r] = [ring.sub(x, ring.mul(f, y)) for x, y in zip(M[r], M[col])]
    return ring.neg(det) if neg else det


def _dp_det(ring, A: Mat):
    """Determinant by memoized Laplace expansion (no divisions; any commutative ring)."""
    d = len(A)
    cache: dict[tuple[int, ...], Any] = {(): ring.one}

    def minor(cols: tuple[int, ...]):
        if cols in cache:
            return cache[cols]
        row = d - len(cols)
        acc = ring.zero
        for idx, c in enumerate(cols):
            sub = minor(cols[:idx] + cols[idx + 1 :])
            term = ring.mul(A[row][c], sub)
            acc = ring.add(acc, term) if idx % 2 == 0 else ring.sub(acc, term)
        cache[cols] = acc
        return acc

    return minor(tuple(range(d)))


def _tpoly_mat_inv(ring: TPolyRing, A: Mat) -> Mat:
    d = len(A)
    if ring.splits:
        p = ring.p
        inverses = []
        for r in ring.roots:
            Mint = [[ring.eval_at(A[i][j], r) for j in range(d)] for i in range(d)]
            try:
                inverses.append(_int_mat_inv(Mint, p))
            except ZeroDivisionError:
                raise ZeroDivisionError(
                    "matrix determinant is not a unit (singular at a root of X^N − 1)"
                ) from None
        return tuple(
            tuple(
                ring.interpolate([inverses[t][i][j] for t in range(ring.N)])
                for j in range(d)
            )
            for i in range(d)
        )
    det = _dp_det(ring, A)
    det_inv = ring.inv(det)  # raises ZeroDivisionError if not a unit
    out = [[ring.zero] * d for _ in range(d)]
    for i in range(d):
        for j in range(d):
            sub = tuple(
                tuple(A[r][c] for c in range(d) if c != i)
                for r in range(d)
                if r != j
            )
            cof = _dp_det(ring, sub) if sub else ring.one
            if (i + j) % 2:
                cof = ring.neg(cof)
            out[i][j] = ring.mul(det_inv, cof)
    return tuple(tuple(row) for row in out)


def mat_inv(ring, A: Mat) -> Mat:
    if isinstance(ring, TPolyRing):
        return _tpoly_mat_inv(ring, A)
    return _mat_inv_field(ring, A)


def mat_det(ring, A: Mat):
    if isinstance(ring, TPolyRing):
        if ring.splits:
            vals = [
                _int_mat_det([[ring.eval_at(e, r) for e in row] for row in A], ring.p)
                for r in ring.roots
            ]
            return ring.from_coeffs(ring.interpolate(vals))
        return _dp_det(ring, A)
    return _mat_det_field(ring, A)


def mat_is_invertible(ring, A: Mat) -> bool:
    if isinstance(ring, TPolyRing):
        if ring.splits:
            return all(
                _int_mat_det([[ring.eval_at(e, r) for e in row] for row in A], ring.p) != 0
                for r in ring.roots
            )
        return ring.is_unit(mat_det(ring, A))
    try:
        return ring.is_unit(_mat_det_field(ring, A))
    except ZeroDivisionError:  # pragma: no cover
        return False


# ---------------------------------------------------------------------------
# endomorphisms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EndoSpec:
    """Entrywise ring endomorphism: frobenius | eval-at | eval-var-at | identity.

    frobenius: x ↦ x^(p^power) on finite-field entries.
    eval-at(point): X ↦ point on truncated polynomials (requires point^N = 1).
    eval-var-at(point): t ↦ point on rational functions (undefined where the
    denominator vanishes — operations reject such operands).
    identity: fixes everything (the trivial projector; any ring).
    """

    kind: str
    power: int = 1
    point: int = 0


def endo_order(ring, f: EndoSpec) -> int:
    """Multiplicative order of f where finite (Frobenius: N/gcd; eval kinds: 1)."""
    if f.kind == "frobenius":
        N = ring.N
        return N // math.gcd(N, f.power % N or N)
    return 1


def is_projector_spec(ring, f: EndoSpec) -> bool:
    """Structural projector test: f∘f = f as maps."""
    if f.kind in ("identity", "eval-at", "eval-var-at"):
        return True
    if f.kind == "frobenius":
        return f.power % ring.N == 0  # only the identity power is idempotent
    raise ValueError(f"unknown endomorphism kind {f.kind!r}")


def _endo_entry(ring, f: EndoSpec, e):
    if f.kind == "identity":
        return e
    if f.kind == "frobenius":
        if not isinstance(ring, FFRing):
            raise ValueError("frobenius endomorphism requires a finite-field ring")
        return ring.frob(e, f.power)
    if f.kind == "eval-at":
        if not isinstance(ring, TPolyRing):
            raise ValueError("eval-at endomorphism requires a truncated-poly ring")
        v = ring.eval_at(e, f.point)
        return ring.from_coeffs((v,))
    if f.kind == "eval-var-at":
        if not isinstance(ring, RatFuncField):
            raise ValueError("eval-var-at endomorphism requires a rational-function field")
        v = ring.eval_at(e, f.point)  # may raise OpRejected
        return ring.make((v,))
    raise ValueError(f"unknown endomorphism kind {f.kind!r}")


def apply_endo(ring, f: EndoSpec, M: Mat) -> Mat:
    """Entrywise application; a ring homomorphism, so f(AB) = f(A)f(B)."""
    if f.kind == "eval-at" and pow(f.point % ring.p, ring.N, ring.p) != 1:
        raise OpRejected(f"evaluation point {f.point} is not an N-th root of unity")
    return tuple(tuple(_endo_entry(ring, f, e) for e in row) for row in M)


def _const_of(ring, e) -> int:
    """The base-field value of a constant entry produced by an eval-kind endo."""
    if isinstance(ring, TPolyRing):
        return e[0]
    return e[0][0] if e[0] else 0


def _embed_const(ring, v: int):
    if isinstance(ring, TPolyRing):
        return ring.from_coeffs((v,))
    return ring.make((v,))


def _inv_eval_image(ring, M: Mat) -> Mat:
    """Inverse of a constant-entried matrix via one base-field Gaussian pass."""
    p = ring.p if isinstance(ring, TPolyRing) else ring.q
    Mint = [[_const_of(ring, e) for e in row] for row in M]
    try:
        inv = _int_mat_inv(Mint, p)
    except ZeroDivisionError:
        raise OpRejected("operand image under the endomorphism is singular") from None
    return tuple(tuple(_embed_const(ring, v) for v in row) for row in inv)


# ---------------------------------------------------------------------------
# platform construction
# ---------------------------------------------------------------------------


def check_projector(ring, f: EndoSpec, samples: Sequence[Mat]) -> LawReport:
    """f(f(M)) = f(M) on the given sample matrices."""
    failures = []
    for M in samples:
        if apply_endo(ring, f, apply_endo(ring, f, M)) != apply_endo(ring, f, M):
            failures.append((M,))
    return LawReport(samples_tested=len(samples), failures=failures)


def random_invertible(d: int, ring, rng, *, endo: EndoSpec | None = None, budget: int = 1000) -> Mat:
    """Rejection-sample a uniform-entry matrix with unit determinant.

    With `endo` given, additionally require the image under it to be
    invertible (eval-kind platforms constrain generators this way).
    """
    for _ in range(budget):
        M = tuple(tuple(ring.rand(rng) for _ in range(d)) for _ in range(d))
        if not mat_is_invertible(ring, M):
            continue
        if endo is not None:
            try:
                img = apply_endo(ring, endo, M)
            except OpRejected:
                continue
            if endo.kind in ("eval-at", "eval-var-at"):
                p = ring.p if isinstance(ring, TPolyRing) else ring.q
                Mint = [[_const_of(ring, e) for e in row] for row in img]
                if _int_mat_det(Mint, p) == 0:
                    continue
            elif not mat_is_invertible(ring, img):  # pragma: no cover - Frobenius preserves units
                continue
        return M
    raise RuntimeError(f"no invertible matrix found within {budget} attempts")


def _mat_encode(ring, M: Mat) -> bytes:
    d = len(M)
    return struct.pack(">H", d) + b"".join(ring.encode(e) for row in M for e in row)


def _mat_decode(ring, buf: bytes, offset: int = 0):
    (d,) = struct.unpack_from(">H", buf, offset)
    offset += 2
    rows = []
    for _ in range(d):
        row = []
        for _ in range(d):
            e, offset = ring.decode(buf, offset)
            row.append(e)
        rows.append(tuple(row))
    return tuple(rows), offset


def matrix_platform(ring, d: int, *, endo: EndoSpec | None = None, name: str | None = None) -> Platform:
    """GL(d, ring) as a platform; random elements respect the endo constraint."""
    plat = Platform(
        name or f"gl{d}-{ring.kind}",
        encode=lambda M: _mat_encode(ring, M),
        decode=lambda buf, off=0: _mat_decode(ring, buf, off),
        rand_element=lambda rng: random_invertible(d, ring, rng, endo=endo),
    )
    plat.ring = ring
    plat.d = d
    plat.endo = endo
    return plat


def _image_inverter(ring, f: EndoSpec):
    if f.kind in ("eval-at", "eval-var-at"):
        return lambda M: _inv_eval_image(ring, M)
    return lambda M: mat_inv(ring, M)


def make_fconj_op(platform: Platform, f: EndoSpec, label: str = "*", **extra) -> OpId:
    """Register f-conjugacy x*y = f(x⁻¹y)·x, computed as f(x)⁻¹·f(y)·x."""
    ring, d = platform.ring, platform.d
    inv_img = _image_inverter(ring, f)

    def op(x, y):
        fx = apply_endo(ring, f, x)
        fy = apply_endo(ring, f, y)
        return mat_mul(ring, mat_mul(ring, inv_img(fx), fy), x)

    return platform.register(op, label=label, kind="fconj", f=f, d=d, **extra)


def make_fsymmconj_op(platform: Platform, f: EndoSpec, label: str = "o", **extra) -> OpId:
    """Register f-symmetric conjugacy x∘y = f(xy⁻¹)·x = f(x)·f(y)⁻¹·x (f a projector)."""
    ring, d = platform.ring, platform.d
    if not is_projector_spec(ring, f):
        raise ValueError("f-symmetric conjugacy requires a projector endomorphism")
    inv_img = _image_inverter(ring, f)

    def op(x, y):
        fx = apply_endo(ring, f, x)
        fy = apply_endo(ring, f, y)
        return mat_mul(ring, mat_mul(ring, fx, inv_img(fy)), x)

    return platform.register(op, label=label, kind="fsymm", f=f, d=d, **extra)


def matrix_group_ctx(ring, d: int, *, with_elements: bool = False, max_enum: int = 10**6) -> GroupOpsCtx:
    """GL(d, ring) as a group context (for conjugacy ops and reachability checks)."""
    elements = None
    if with_elements:
        base = ring.elements()
        if len(base) ** (d * d) > max_enum:
            raise ValueError("group too large to enumerate")
        elements = [
            M
            for M in (
                tuple(tuple(row) for row in _chunks(combo, d))
                for combo in itertools.product(base, repeat=d * d)
            )
            if mat_is_invertible(ring, M)
        ]
    return GroupOpsCtx(
        name=f"GL({d},{ring!r})",
        multiply=lambda A, B: mat_mul(ring, A, B),
        invert=lambda A: mat_inv(ring, A),
        identity=mat_identity(ring, d),
        encode=lambda M: _mat_encode(ring, M),
        decode=lambda buf, off=0: _mat_decode(ring, buf, off),
        rand=lambda rng: random_invertible(d, ring, rng),
        elements=elements,
    )


def _chunks(seq, size):
    it = iter(seq)
    return iter(lambda: tuple(itertools.islice(it, size)), ())
