"""Tests for the finite self-distributive tables on {1, .., 2**n}.

The small tables are frozen bit-for-bit; structural properties (left
distributivity, the cyclic successor column, the final identity row, period
doubling of the first row) are checked exhaustively where cheap.
"""
from __future__ import annotations

import pytest

from ldkex import laver_platform, laver_table

L1_ROWS = ((2, 2), (1, 2))

L2_ROWS = (
    (2, 4, 2, 4),
    (3, 4, 3, 4),
    (4, 4, 4, 4),
    (1, 2, 3, 4),
)

L3_ROWS = (
    (2, 4, 6, 8, 2, 4, 6, 8),
    (3, 4, 7, 8, 3, 4, 7, 8),
    (4, 8, 4, 8, 4, 8, 4, 8),
    (5, 6, 7, 8, 5, 6, 7, 8),
    (6, 8, 6, 8, 6, 8, 6, 8),
    (7, 8, 7, 8, 7, 8, 7, 8),
    (8, 8, 8, 8, 8, 8, 8, 8),
    (1, 2, 3, 4, 5, 6, 7, 8),
)


def test_frozen_tables():
    assert laver_table(1).table == L1_ROWS
    assert laver_table(2).table == L2_ROWS
    assert laver_table(3).table == L3_ROWS


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_left_distributivity_exhaustive(n):
    lt = laver_table(n)
    size = lt.size
    assert size == 2**n
    for a in range(1, size + 1):
        for b in range(1, size + 1):
            ab = lt.apply(a, b)
            for c in range(1, size + 1):
                assert lt.apply(a, lt.apply(b, c)) == lt.apply(ab, lt.apply(a, c))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_successor_column_and_identity_row(n):
    lt = laver_table(n)
    size = lt.size
    # x * 1 walks the carrier cyclically; the top element acts as identity.
    for k in range(1, size):
        assert lt.apply(k, 1) == k + 1
    assert lt.apply(size, 1) == 1
    assert lt.row(size) == tuple(range(1, size + 1))


def test_first_row_periods_double():
    periods = []
    for n in range(1, 7):
        row = laver_table(n).row(1)
        for p in range(1, len(row) + 1):
            if len(row) % p == 0 and row == row[p:] + row[:p]:
                periods.append(p)
                break
    # Each period divides the next one (it doubles at n = 2, 3, 5 here).
    for small, big in zip(periods, periods[1:]):
        assert big % small == 0
    assert periods[0] == 1
    assert periods[-1] > periods[0]


def test_rejects_out_of_range_sizes():
    with pytest.raises(ValueError):
        laver_table(0)
    with pytest.raises(ValueError):
        laver_table(11)


def test_platform_roundtrip():
    plat = laver_platform(3)
    op = plat.op(0)
    assert op.label == "*"
    assert op(1, 1) == 2
    assert plat.apply(0, 1, 1) == 2
    for x in range(1, 9):
        assert plat.decode(plat.encode(x)) == (x, 2)
    import random

    rng = random.Random(7)
    for _ in range(50):
        x = plat.rand_element(rng)
        assert 1 <= x <= 8
