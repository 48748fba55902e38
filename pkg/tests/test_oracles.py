from __future__ import annotations

import itertools
import math

from polyfaces import oracles


def test_known_sequences():
    assert [oracles.super_catalan(k) for k in range(2, 8)] == [1, 3, 11, 45, 197, 903]
    assert [oracles.fubini(m) for m in range(6)] == [1, 1, 3, 13, 75, 541]
    assert [oracles.catalan(m) for m in range(6)] == [1, 1, 2, 5, 14, 42]


def test_cycle_tubings():
    assert [oracles.cycle_tubings(v) for v in range(1, 5)] == [(1, 1), (3, 2), (13, 6), (63, 20)]
    assert all(oracles.phi_maximal(n) == math.comb(2 * n, n) for n in range(6))


def test_ordered_partitions_brute():
    for m in range(5):
        assert oracles.ordered_partition_count_brute(m) == oracles.fubini(m)
    # cross-check by surjections onto k labelled blocks
    for m in range(5):
        total = sum(
            sum(1 for f in itertools.product(range(k), repeat=m) if len(set(f)) == k) for k in range(m + 1)
        )
        assert total == oracles.fubini(m)
