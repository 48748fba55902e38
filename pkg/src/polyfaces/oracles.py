"""Counting oracles that share no code with the tree generators."""
from __future__ import annotations

from functools import lru_cache
from math import comb


@lru_cache(maxsize=None)
def super_catalan(m: int) -> int:
    """Planar trees with m leaves and no unary vertices (1, 1, 3, 11, 45, ...)."""
    if m <= 2:
        return 1
    return (3 * (2 * m - 3) * super_catalan(m - 1) - (m - 3) * super_catalan(m - 2)) // m


def psi_count(n: int) -> int:
    return super_catalan(n + 2)


@lru_cache(maxsize=None)
def fubini(m: int) -> int:
    """Ordered set partitions of an m-element set."""
    if m == 0:
        return 1
    return sum(comb(m, k) * fubini(m - k) for k in range(1, m + 1))


def catalan(m: int) -> int:
    return comb(2 * m, m) // (m + 1)


def cycle_tubings(v: int) -> tuple[int, int]:
    """(all tubings, maximal tubings) of the cycle graph on v vertices.

    A tube is a proper nonempty arc; two tubes are compatible when nested, or
    disjoint with a disconnected union.
    """
    if v == 1:
        return 1, 1
    tubes = []
    for start in range(v):
        for length in range(1, v):
            tubes.append(frozenset((start + i) % v for i in range(length)))
    tubes = sorted(set(tubes), key=sorted)

    def connected(s: frozenset[int]) -> bool:
        if len(s) == v:
            return True
        # an arc on the cycle has exactly one element whose predecessor is missing
        return sum(1 for x in s if (x - 1) % v not in s) == 1

    def compatible(a: frozenset[int], b: frozenset[int]) -> bool:
        if a <= b or b <= a:
            return True
        return not (a & b) and not connected(a | b)

    k = len(tubes)
    ok = [[compatible(tubes[i], tubes[j]) for j in range(k)] for i in range(k)]
    total = 0
    sizes: list[int] = []

    def rec(start: int, chosen: list[int]) -> None:
        nonlocal total
        total += 1
        sizes.append(len(chosen))
        for j in range(start, k):
            if all(ok[i][j] for i in chosen):
                chosen.append(j)
                rec(j + 1, chosen)
                chosen.pop()

    rec(0, [])
    top = max(sizes)
    return total, sizes.count(top)


def phi_count(n: int) -> int:
    return cycle_tubings(n + 1)[0]


def phi_maximal(n: int) -> int:
    return comb(2 * n, n)


def ordered_partition_count_brute(m: int) -> int:
    """Surjections onto an initial segment of levels, by direct enumeration."""
    from itertools import product

    count = 0
    for f in product(range(m), repeat=m):
        if m == 0 or set(f) == set(range(max(f) + 1)):
            count += 1
    return count if m else 1

