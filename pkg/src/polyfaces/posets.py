"""Finite posets, poset maps, order complexes and the face posets of the three polytopes."""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable, Iterable, Iterator, Sequence

from .errors import PolyfacesError
from .trees import (
    LeveledTree,
    PlanarTree,
    Tree,
    all_contractions,
    enumerate_trees,
    iter_internal,
)


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class FinitePoset:
    """A finite poset stored as up-set and down-set bitmasks.

    ``elements`` are opaque string keys (canonical texts); ``items`` optionally
    carries the structured objects behind them.
    """

    def __init__(self, elements: Sequence[str], above: Sequence[int], items: Sequence[Any] | None = None):
        self.elements: tuple[str, ...] = tuple(elements)
        self.items: tuple[Any, ...] | None = tuple(items) if items is not None else None
        self.index = {e: i for i, e in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise PolyfacesError("duplicate poset elements")
        self._above = list(above)
        self._below = [0] * len(self.elements)
        for i, m in enumerate(self._above):
            for j in _bits(m):
                self._below[j] |= 1 << i
        self._covers: tuple[tuple[int, int], ...] | None = None

    @classmethod
    def from_geq_pairs(cls, elements: Sequence[str], pairs: Iterable[tuple[int, int]], items=None) -> FinitePoset:
        """Build from generating pairs (i, j) meaning element i >= element j."""
        n = len(elements)
        above = [1 << i for i in range(n)]
        for i, j in pairs:
            above[j] |= 1 << i
        # transitive closure: above[j] |= above[k] for every k above j
        changed = True
        while changed:
            changed = False
            for j in range(n):
                acc = above[j]
                for k in _bits(above[j] & ~(1 << j)):
                    acc |= above[k]
                if acc != above[j]:
                    above[j] = acc
                    changed = True
        poset = cls(elements, above, items)
        poset._check_antisymmetric()
        return poset

    @classmethod
    def from_leq(cls, elements: Sequence[str], leq: Callable[[int, int], bool], items=None) -> FinitePoset:
        n = len(elements)
        above = [sum(1 << j for j in range(n) if leq(i, j)) for i in range(n)]
        poset = cls(elements, above, items)
        poset._check_antisymmetric()
        return poset

    def _check_antisymmetric(self) -> None:
        for i in range(len(self)):
            if self._above[i] & self._below[i] != 1 << i:
                raise PolyfacesError("relation is not antisymmetric")

    # -- queries
    def __len__(self) -> int:
        return len(self.elements)

    def leq(self, i: int, j: int) -> bool:
        return bool(self._above[i] >> j & 1)

    def lt(self, i: int, j: int) -> bool:
        return i != j and self.leq(i, j)

    def above_mask(self, i: int) -> int:
        return self._above[i]

    def below_mask(self, i: int) -> int:
        return self._below[i]

    def up_set(self, i: int) -> list[int]:
        return list(_bits(self._above[i]))

    def down_set(self, i: int) -> list[int]:
        return list(_bits(self._below[i]))

    @property
    def covers(self) -> tuple[tuple[int, int], ...]:
        """Transitive reduction as pairs (i, j): element i covers element j."""
        if self._covers is None:
            out = []
            for i in range(len(self)):
                strict = self._below[i] & ~(1 << i)
                red = strict
                for k in _bits(strict):
                    red &= ~(self._below[k] & ~(1 << k))
                out.extend((i, j) for j in _bits(red))
            self._covers = tuple(sorted(out))
        return self._covers

    def minimal(self) -> list[int]:
        return [i for i in range(len(self)) if self._below[i] == 1 << i]

    def maximal(self) -> list[int]:
        return [i for i in range(len(self)) if self._above[i] == 1 << i]

    def height(self) -> int:
        """Length (number of steps) of the longest chain."""
        memo: dict[int, int] = {}

        def up(i: int) -> int:
            if i not in memo:
                memo[i] = max((1 + up(j) for j in _bits(self._above[i] & ~(1 << i))), default=0)
            return memo[i]

        return max((up(i) for i in range(len(self))), default=0)

    def subposet(self, indices: Iterable[int]) -> FinitePoset:
        idx = sorted(set(indices))
        pos = {old: new for new, old in enumerate(idx)}
        above = []
        for old in idx:
            m = 0
            for j in _bits(self._above[old]):
                if j in pos:
                    m |= 1 << pos[j]
            above.append(m)
        items = [self.items[i] for i in idx] if self.items is not None else None
        return FinitePoset([self.elements[i] for i in idx], above, items)

    def to_json(self) -> dict:
        return {"elements": list(self.elements), "covers": [list(c) for c in self.covers]}

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    def __repr__(self) -> str:
        return f"FinitePoset({len(self)} elements, {len(self.covers)} covers)"


def subposet_geq(P: FinitePoset, x: int | str) -> FinitePoset:
    """Induced subposet on all elements >= x."""
    i = _resolve(P, x)
    return P.subposet(P.up_set(i))


def _resolve(P: FinitePoset, x: int | str) -> int:
    if isinstance(x, str):
        if x not in P.index:
            raise PolyfacesError(f"{x!r} is not an element of the poset")
        return P.index[x]
    if not 0 <= x < len(P):
        raise PolyfacesError(f"index {x} out of range")
    return x


def product_poset(factors: Sequence[FinitePoset]) -> FinitePoset:
    """Cartesian product with componentwise order; keys are '|'-joined."""
    combos = list(itertools.product(*[range(len(F)) for F in factors]))
    keys = ["|".join(F.elements[c] for F, c in zip(factors, combo)) for combo in combos]

    def leq(a: int, b: int) -> bool:
        return all(F.leq(x, y) for F, x, y in zip(factors, combos[a], combos[b]))

    return FinitePoset.from_leq(keys, leq, items=combos)


# ---------------------------------------------------------------- maps


@dataclass
class PosetMap:
    source: FinitePoset
    target: FinitePoset
    assignment: tuple[int, ...]
    name: str = ""

    def __post_init__(self) -> None:
        self.assignment = tuple(self.assignment)
        if len(self.assignment) != len(self.source):
            raise PolyfacesError("assignment must cover every source element")

    def __call__(self, i: int) -> int:
        return self.assignment[i]

    def is_monotone(self) -> bool:
        F = self.assignment
        for i in range(len(self.source)):
            for j in _bits(self.source.above_mask(i)):
                if not self.target.leq(F[i], F[j]):
                    return False
        return True

    def preimage(self, y: int) -> list[int]:
        return [i for i, v in enumerate(self.assignment) if v == y]


def is_order_isomorphism(P: FinitePoset, Q: FinitePoset, mapping: Sequence[int]) -> bool:
    """Bijective, and x <= y iff mapping[x] <= mapping[y]."""
    if len(P) != len(Q) or sorted(mapping) != list(range(len(Q))):
        return False
    return all(
        P.leq(i, j) == Q.leq(mapping[i], mapping[j]) for i in range(len(P)) for j in range(len(P))
    )


def find_isomorphism(P: FinitePoset, Q: FinitePoset) -> list[int] | None:
    """Backtracking search for an order isomorphism P -> Q."""
    n = len(P)
    if n != len(Q) or len(P.covers) != len(Q.covers):
        return None

    def sig(R: FinitePoset, i: int) -> tuple[int, int]:
        return (bin(R.above_mask(i)).count("1"), bin(R.below_mask(i)).count("1"))

    sp = [sig(P, i) for i in range(n)]
    sq = [sig(Q, i) for i in range(n)]
    if sorted(sp) != sorted(sq):
        return None
    order = sorted(range(n), key=lambda i: (sp[i], i))
    image: dict[int, int] = {}
    used: set[int] = set()

    def ok(i: int, q: int) -> bool:
        return all(P.leq(i, j) == Q.leq(q, image[j]) and P.leq(j, i) == Q.leq(image[j], q) for j in image)

    def rec(k: int) -> bool:
        if k == n:
            return True
        i = order[k]
        for q in range(n):
            if q not in used and sq[q] == sp[i] and ok(i, q):
                image[i] = q
                used.add(q)
                if rec(k + 1):
                    return True
                del image[i]
                used.discard(q)
        return False

    return [image[i] for i in range(n)] if rec(0) else None


# ---------------------------------------------------------------- complexes


@dataclass
class SimplicialComplex:
    """Abstract complex; simplices are sorted tuples of vertex indices, grouped by dimension."""

    vertices: tuple[str, ...]
    simplices: list[list[tuple[int, ...]]] = field(default_factory=list)

    @classmethod
    def from_maximal(cls, vertices: Sequence[str], maximal: Iterable[Iterable[int]]) -> SimplicialComplex:
        faces: set[tuple[int, ...]] = set()
        for s in maximal:
            s = tuple(sorted(set(s)))
            for r in range(1, len(s) + 1):
                faces.update(itertools.combinations(s, r))
        return cls._from_faces(vertices, faces)

    @classmethod
    def _from_faces(cls, vertices: Sequence[str], faces: Iterable[tuple[int, ...]]) -> SimplicialComplex:
        by_dim: dict[int, list[tuple[int, ...]]] = {}
        for f in faces:
            by_dim.setdefault(len(f) - 1, []).append(f)
        top = max(by_dim, default=-1)
        return cls(tuple(vertices), [sorted(by_dim.get(d, [])) for d in range(top + 1)])

    @property
    def dimension(self) -> int:
        return len(self.simplices) - 1

    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.simplices)

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * c for d, c in enumerate(self.f_vector()))

    def all_simplices(self) -> Iterator[tuple[int, ...]]:
        for layer in self.simplices:
            yield from layer

    def is_closed(self) -> bool:
        present = set(self.all_simplices())
        return all(
            f in present for s in present if len(s) > 1 for f in itertools.combinations(s, len(s) - 1)
        )

    def __len__(self) -> int:
        return sum(self.f_vector())


def order_complex(P: FinitePoset) -> SimplicialComplex:
    """Simplices are the strict chains of P."""
    strict_above = [P.above_mask(i) & ~(1 << i) for i in range(len(P))]
    faces: list[tuple[int, ...]] = []

    def extend(chain: tuple[int, ...], allowed: int) -> None:
        faces.append(tuple(sorted(chain)))
        for j in _bits(allowed):
            extend(chain + (j,), allowed & strict_above[j])

    for i in range(len(P)):
        extend((i,), strict_above[i])
    return SimplicialComplex._from_faces(P.elements, faces)


def chains(P: FinitePoset) -> list[tuple[int, ...]]:
    """All nonempty strict chains, each listed bottom to top."""
    strict_above = [P.above_mask(i) & ~(1 << i) for i in range(len(P))]
    out: list[tuple[int, ...]] = []

    def extend(chain: tuple[int, ...], allowed: int) -> None:
        out.append(chain)
        for j in _bits(allowed):
            extend(chain + (j,), allowed & strict_above[j])

    for i in range(len(P)):
        extend((i,), strict_above[i])
    return out


# ---------------------------------------------------------------- face posets


@lru_cache(maxsize=None)
def face_poset(species: str, n: int, max_n: int | None = None) -> FinitePoset:
    items = enumerate_trees(species, n, max_n)
    keys = [str(t) for t in items]
    index = {k: i for i, k in enumerate(keys)}
    pairs = set()
    for i, t in enumerate(items):
        for c in all_contractions(t):
            pairs.add((i, index[str(c)]))
    above = [0] * len(items)
    for i, j in pairs:
        above[j] |= 1 << i
    # all_contractions already yields the full down-set, so this is closed
    poset = FinitePoset(keys, above, items)
    poset._check_antisymmetric()
    return poset


# ---------------------------------------------------------------- ordered partitions


OrderedPartition = tuple[frozenset[int], ...]


def falling_partition(lt: LeveledTree) -> OrderedPartition:
    """Drop each gap number g (between leaves g-1 and g) onto the nadir of those leaves."""
    base = lt.base
    if not isinstance(base, PlanarTree):
        raise PolyfacesError("the falling-numbers rule needs a Psi-tree base")
    lv = lt.level_map()
    blocks: list[set[int]] = [set() for _ in range(lt.height)]
    for g in range(1, base.n + 2):
        blocks[lv[base.nadir(g - 1, g)] - 1].add(g)
    return tuple(frozenset(b) for b in blocks)


def format_partition(p: OrderedPartition) -> str:
    return "(" + ", ".join("{" + ",".join(map(str, sorted(b))) + "}" for b in p) + ")"


def ordered_partitions(m: int) -> list[OrderedPartition]:
    """All ordered set partitions of {1..m}."""
    out: list[OrderedPartition] = []

    def rec(rest: frozenset[int], acc: tuple[frozenset[int], ...]) -> None:
        if not rest:
            out.append(acc)
            return
        items = sorted(rest)
        for r in range(1, len(items) + 1):
            for block in itertools.combinations(items, r):
                rec(rest - frozenset(block), acc + (frozenset(block),))

    rec(frozenset(range(1, m + 1)), ())
    return out


def partition_poset(m: int) -> FinitePoset:
    """Ordered partitions of {1..m}; P >= P' when P' merges adjacent blocks of P."""
    parts = ordered_partitions(m)
    keys = [format_partition(p) for p in parts]
    index = {k: i for i, k in enumerate(keys)}
    pairs = []
    for i, p in enumerate(parts):
        for k in range(len(p) - 1):
            merged = p[:k] + (p[k] | p[k + 1],) + p[k + 2:]
            pairs.append((i, index[format_partition(merged)]))
    return FinitePoset.from_geq_pairs(keys, pairs, items=parts)


# ---------------------------------------------------------------- DOT


def hasse_dot(P: FinitePoset, name: str = "hasse") -> str:
    lines = [f"digraph {name} {{"]
    for i, e in enumerate(P.elements):
        lines.append(f'  n{i} [label="{e}"];')
    for i, j in P.covers:
        lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def internal_vertex_count(t: Tree) -> int:
    base = t.base if isinstance(t, LeveledTree) else t
    return sum(1 for _ in iter_internal(base.root))
