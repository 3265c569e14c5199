"""Laver tables: the unique left self-distributive structures on {1..2^n}
with k*1 = k+1 (cyclically).

Rows are computed downward from row 2^n using k*(l+1) = (k*l)*(k+1) after
prefilling the first column, since row k only depends on row k+1 (wrapping
2^n + 1 back to 1, which is what makes the bottom row the identity).
"""
from __future__ import annotations

import functools
from dataclasses import dataclass

from .magma import Platform


@dataclass(frozen=True)
class LaverTable:
    n: int
    table: tuple[tuple[int, ...], ...]  # table[k-1][l-1] = k * l

    @property
    def size(self) -> int:
        return 2**self.n

    def apply(self, k: int, l: int) -> int:
        return self.table[k - 1][l - 1]

    def row(self, k: int) -> tuple[int, ...]:
        return self.table[k - 1]


@functools.lru_cache(maxsize=None)
def laver_table(n: int) -> LaverTable:
    if not 1 <= n <= 10:
        raise ValueError("laver_table supports 1 <= n <= 10")
    size = 2**n
    t = [[0] * size for _ in range(size)]
    for k in range(1, size + 1):
        t[k - 1][0] = k % size + 1
    for k in range(size, 0, -1):
        for l in range(1, size):
            # k*(l+1) = (k*l)*(k+1); column k % size is the prefilled k+1 wrap
            t[k - 1][l] = t[t[k - 1][l - 1] - 1][k % size]
    return LaverTable(n, tuple(tuple(row) for row in t))


def laver_platform(n: int) -> Platform:
    """Platform over {1..2^n} with the single Laver operation registered."""
    lt = laver_table(n)
    plat = Platform(
        f"laver-{n}",
        encode=lambda k: int(k).to_bytes(2, "big"),
        decode=lambda buf, off: (int.from_bytes(buf[off : off + 2], "big"), off + 2),
        rand_element=lambda rng: rng.randint(1, lt.size),
    )
    plat.register(lt.apply, label="*", kind="laver", n=n)
    return plat
