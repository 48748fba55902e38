"""Word posets, their integer-cube model, level posets on a fixed tree, and product splittings."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import InvariantError, PreconditionError
from .functors import (
    Word,
    _cut,
    fiber_geq_poset,
    format_word,
    parse_word,
    pi,
    trunk_word,
)
from .posets import FinitePoset, is_order_isomorphism, product_poset
from .trees import (
    Fan,
    LeveledTree,
    Path,
    PlanarTree,
    clades,
    contract_with_map,
    level_groupings,
    levelings,
    is_geq,
)


# ---------------------------------------------------------------- X_{l,r}


def words(ell: int, r: int) -> list[Word]:
    """All words with ell a's and r b's, the letter (ab) counting once for each."""
    out: list[Word] = []

    def rec(a: int, b: int, acc: tuple[str, ...]) -> None:
        if a == 0 and b == 0:
            out.append(acc)
            return
        if a:
            rec(a - 1, b, acc + ("a",))
        if b:
            rec(a, b - 1, acc + ("b",))
        if a and b:
            rec(a - 1, b - 1, acc + ("(ab)",))

    rec(ell, r, ())
    return sorted(out, key=format_word)


def fusions(w: Word) -> list[Word]:
    """Words obtained by fusing one adjacent ab or ba pair into (ab)."""
    out = []
    for i in range(len(w) - 1):
        if {w[i], w[i + 1]} == {"a", "b"}:
            out.append(w[:i] + ("(ab)",) + w[i + 2:])
    return out


@lru_cache(maxsize=None)
def word_poset(ell: int, r: int) -> FinitePoset:
    ws = words(ell, r)
    keys = [format_word(w) for w in ws]
    index = {w: i for i, w in enumerate(ws)}
    pairs = [(index[w], index[v]) for w in ws for v in fusions(w)]
    return FinitePoset.from_geq_pairs(keys, pairs, items=ws)


def f_embed_doubled(w: Sequence[str]) -> tuple[int, ...]:
    """Twice the embedding: coordinate i counts the b's before the i-th a, +1/2 inside (ab)."""
    out: list[int] = []
    bs = 0
    for x in w:
        if x == "a":
            out.append(2 * bs)
        elif x == "b":
            bs += 1
        else:
            out.append(2 * bs + 1)
            bs += 1
    return tuple(out)


def f_embed(w: Sequence[str] | str) -> tuple[Fraction, ...]:
    if isinstance(w, str):
        w = parse_word(w)
    return tuple(Fraction(c, 2) for c in f_embed_doubled(w))


def format_halves(v: Sequence[Fraction]) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


# ---------------------------------------------------------------- cubes


def _interval(c: int) -> tuple[int, int]:
    return (c // 2, (c + 1) // 2)


def cube_in_domain(center2: Sequence[int], r: int) -> bool:
    """0 <= x_1 <= ... <= x_l <= r holds on the whole cube."""
    prev_hi = 0
    for c in center2:
        lo, hi = _interval(c)
        if lo < prev_hi or hi > r:
            return False
        prev_hi = hi
    return True


def is_cube_face(small: Sequence[int], big: Sequence[int]) -> bool:
    for a, b in zip(small, big):
        la, ha = _interval(a)
        lb, hb = _interval(b)
        if la < lb or ha > hb:
            return False
    return True


@dataclass(frozen=True)
class CubeComplex:
    ell: int
    r: int
    centers: tuple[tuple[int, ...], ...]  # doubled

    def dims(self) -> list[int]:
        return [sum(c % 2 for c in x) for x in self.centers]

    def f_vector(self) -> tuple[int, ...]:
        d = self.dims()
        return tuple(d.count(k) for k in range(max(d) + 1))

    def poset(self) -> FinitePoset:
        """Cubes ordered so that a face sits above the cubes containing it."""
        keys = [str(list(c)) for c in self.centers]
        cs = self.centers
        return FinitePoset.from_leq(keys, lambda i, j: is_cube_face(cs[j], cs[i]), items=cs)

    def to_json(self) -> list[list[int]]:
        return [list(c) for c in self.centers]


def cube_complex(ell: int, r: int) -> CubeComplex:
    centers = [c for c in itertools.product(range(2 * r + 1), repeat=ell) if cube_in_domain(c, r)]
    return CubeComplex(ell, r, tuple(sorted(centers)))


def word_cube_map(ell: int, r: int) -> list[int]:
    """Index of f(w) in the cube complex for each word of word_poset(ell, r)."""
    W = word_poset(ell, r)
    K = cube_complex(ell, r)
    pos = {c: i for i, c in enumerate(K.centers)}
    assert W.items is not None
    return [pos[f_embed_doubled(w)] for w in W.items]


# ---------------------------------------------------------------- X_T


def forest_level_poset(parents: dict, key=None) -> FinitePoset:
    """Levelings of an abstract forest; coarsening is allowed only between incomparable vertices."""
    lvs = levelings(parents)
    verts = list(parents)
    if key is None:
        def key(lv: dict) -> str:
            return ",".join(str(lv[v]) for v in verts)
    keys = [key(lv) for lv in lvs]
    index = {k: i for i, k in enumerate(keys)}
    pairs = []
    for i, lv in enumerate(lvs):
        m = max(lv.values(), default=0)
        for g in _groupings(m):
            new = {v: g[lv[v]] for v in verts}
            if any(parents[v] is not None and new[parents[v]] == new[v] for v in verts):
                continue
            pairs.append((i, index[key(new)]))
    return FinitePoset.from_geq_pairs(keys, pairs, items=lvs)


def _groupings(m: int):
    for g in level_groupings(m):
        yield {x: gi + 1 for gi, block in enumerate(g) for x in block}


def _internal_parents(T: PlanarTree | Fan) -> dict[Path, Path | None]:
    return {p: (p[:-1] if p else None) for p in T.internal_paths()}


@lru_cache(maxsize=None)
def levelization_poset(T: PlanarTree | Fan) -> FinitePoset:
    paths = T.internal_paths()

    def key(lv: dict) -> str:
        return str(LeveledTree(T, tuple(lv[p] for p in paths)))

    P = forest_level_poset(_internal_parents(T), key)
    assert P.items is not None
    items = [LeveledTree(T, tuple(lv[p] for p in paths)) for lv in P.items]
    return FinitePoset(P.elements, [P.above_mask(i) for i in range(len(P))], items)


# ---------------------------------------------------------------- products


@dataclass
class ProductDecomposition:
    factors: list[tuple]
    source: FinitePoset
    product: FinitePoset
    assignment: list[int]

    @property
    def verified(self) -> bool:
        return is_order_isomorphism(self.source, self.product, self.assignment)

    def to_json(self) -> dict:
        return {
            "factors": [list(f) if isinstance(f, tuple) else f for f in self.factors],
            "size": len(self.source),
            "isomorphism": {
                self.source.elements[i]: self.product.elements[j] for i, j in enumerate(self.assignment)
            },
            "verified": self.verified,
        }


def trunk_counts(Y: PlanarTree, That: Fan) -> list[tuple[int, int]]:
    """(l_i, r_i): how many left-most / right-most nodes of Y collapse onto trunk vertex i of That.

    Index 0 is the root, then the non-root trunk vertices from the root outward.
    """
    _, images = _cut(That)
    slot: dict[frozenset[int], int] = {images[()][0]: 0}
    for i, p in enumerate(That.trunk(), start=1):
        for c in images[p]:
            slot[c] = i
    counts = [[0, 0] for _ in range(len(That.trunk()) + 1)]
    yc = clades(Y.root)
    for side, path_list, anchor in ((0, Y.leftmost_path(), 0), (1, Y.rightmost_path(), Y.n + 1)):
        for p in path_list:
            c = yc[p]
            best = min((s for s in slot if c <= s and anchor in s), key=len)
            counts[slot[best]][side] += 1
    return [tuple(x) for x in counts]  # type: ignore[misc]


def split_word(w: Word, counts: Sequence[tuple[int, int]]) -> list[Word]:
    out: list[Word] = []
    pos = 0
    for ell, r in counts:
        a = b = 0
        start = pos
        while (a, b) != (ell, r):
            if pos >= len(w):
                raise InvariantError("trunk word splits along the trunk-vertex counts", format_word(w))
            x = w[pos]
            a += x != "b"
            b += x != "a"
            pos += 1
            if a > ell or b > r:
                raise InvariantError("trunk word splits along the trunk-vertex counts", format_word(w))
        out.append(w[start:pos])
    if pos != len(w):
        raise InvariantError("trunk word splits along the trunk-vertex counts", format_word(w))
    return out


def product_decompose(Y: PlanarTree, That: Fan, max_n: int | None = None) -> ProductDecomposition:
    """Split the fibre over Y above That into a product of word posets, one per trunk vertex."""
    if not is_geq(Y, pi(That)):
        raise PreconditionError(f"{Y} is not >= pi({That})")
    counts = trunk_counts(Y, That)
    source = fiber_geq_poset(Y, That, max_n)
    product = product_poset([word_poset(l, r) for l, r in counts])
    assert source.items is not None
    assignment = []
    for fan in source.items:
        parts = split_word(trunk_word(fan), counts)
        assignment.append(product.index["|".join(format_word(p) for p in parts)])
    return ProductDecomposition(list(counts), source, product, assignment)


def contraction_edges(big: PlanarTree | Fan, small: PlanarTree | Fan) -> tuple[Path, ...]:
    """An edge set whose contraction turns ``big`` into ``small``."""
    edges = big.internal_edges()
    k = len(edges) - len(small.internal_edges())
    if k >= 0:
        for sub in itertools.combinations(edges, k):
            if contract_with_map(big, sub)[0] == small:
                return sub
    raise PreconditionError(f"{small} is not a contraction of {big}")


def level_product_decompose(T: PlanarTree | Fan, low: LeveledTree) -> ProductDecomposition:
    """Levels L on T with (T, L) >= low, split by the level of low each vertex collapses onto."""
    edges = contraction_edges(T, low.base)
    _, mapping = contract_with_map(T, edges)
    low_lv = low.level_map()
    group = {p: low_lv[mapping[p]] for p in T.internal_paths()}
    parents = _internal_parents(T)
    factors_parents: list[dict] = []
    for i in range(1, low.height + 1):
        members = [p for p in T.internal_paths() if group[p] == i]
        fp = {}
        for p in members:
            q = parents[p]
            while q is not None and group[q] != i:
                q = parents[q]
            fp[p] = q
        factors_parents.append(fp)
    XT = levelization_poset(T)
    assert XT.items is not None
    keep = [k for k, lt in enumerate(XT.items) if is_geq(lt, low)]
    source = XT.subposet(keep)
    factor_posets = [forest_level_poset(fp) for fp in factors_parents]
    product = product_poset(factor_posets)
    assert source.items is not None
    assignment = []
    for lt in source.items:
        lv = lt.level_map()
        parts = []
        for fp in factors_parents:
            used = sorted({lv[p] for p in fp})
            rank = {v: j + 1 for j, v in enumerate(used)}
            parts.append(",".join(str(rank[lv[p]]) for p in fp))
        assignment.append(product.index["|".join(parts)])
    shapes = [tuple(sorted(str(p) for p in fp)) for fp in factors_parents]
    return ProductDecomposition(shapes, source, product, assignment)


def census_retraction(ell: int, r: int) -> bool:
    """Dropping the last coordinate maps cubes of (l, r) onto cubes of (l-1, r) with interval fibres."""
    if ell == 0:
        return True
    big = cube_complex(ell, r).centers
    small = cube_complex(ell - 1, r).centers
    fibres: dict[tuple[int, ...], list[int]] = {c: [] for c in small}
    for c in big:
        if c[:-1] not in fibres:
            return False
        fibres[c[:-1]].append(c[-1])
    for c, last in fibres.items():
        lo = _interval(c[-1])[1] if c else 0
        if sorted(last) != list(range(2 * lo, 2 * r + 1)):
            return False
    return True

