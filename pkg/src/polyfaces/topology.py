"""Reduced homology over Q and F2, collapse certificates, comma posets and prism fibers."""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence

from .errors import PolyfacesError, PreconditionError
from .posets import FinitePoset, PosetMap, SimplicialComplex, order_complex

COEFFS = ("Q", "F2")


# ---------------------------------------------------------------- chains


def _face_index(K: SimplicialComplex) -> list[dict[tuple[int, ...], int]]:
    return [{s: i for i, s in enumerate(layer)} for layer in K.simplices]


def boundary_matrix(K: SimplicialComplex, d: int) -> list[dict[int, int]]:
    """Integer boundary of every d-simplex as a sparse column {row: coefficient}."""
    if d <= 0 or d > K.dimension:
        return [{} for _ in (K.simplices[d] if 0 <= d <= K.dimension else [])]
    lower = {s: i for i, s in enumerate(K.simplices[d - 1])}
    cols = []
    for s in K.simplices[d]:
        col = {}
        for k in range(len(s)):
            col[lower[s[:k] + s[k + 1:]]] = -1 if k % 2 else 1
        cols.append(col)
    return cols


def boundary_squares_to_zero(K: SimplicialComplex) -> bool:
    for d in range(2, K.dimension + 1):
        top = boundary_matrix(K, d)
        mid = boundary_matrix(K, d - 1)
        for col in top:
            acc: dict[int, int] = {}
            for j, c in col.items():
                for i, e in mid[j].items():
                    acc[i] = acc.get(i, 0) + c * e
            if any(acc.values()):
                return False
    return True


def _rank_f2(cols: Iterable[int], skip: set[int]) -> tuple[int, set[int]]:
    pivots: dict[int, int] = {}
    for j, col in enumerate(cols):
        if j in skip:
            continue
        while col:
            low = col.bit_length() - 1
            p = pivots.get(low)
            if p is None:
                pivots[low] = col
                break
            col ^= p
    return len(pivots), set(pivots)


def _rank_q(cols: Iterable[dict[int, int]], skip: set[int]) -> tuple[int, set[int]]:
    pivots: dict[int, dict[int, int]] = {}
    for j, col in enumerate(cols):
        if j in skip:
            continue
        col = dict(col)
        while col:
            low = max(col)
            p = pivots.get(low)
            if p is None:
                pivots[low] = col
                break
            a, b = p[low], col[low]
            # fraction-free elimination of the low entry, then strip the content
            new: dict[int, int] = {}
            for i in col.keys() | p.keys():
                v = a * col.get(i, 0) - b * p.get(i, 0)
                if v:
                    new[i] = v
            g = 0
            for v in new.values():
                g = gcd(g, v)
            col = {i: v // g for i, v in new.items()} if g > 1 else new
    return len(pivots), set(pivots)


def homology_ranks(K: SimplicialComplex, coeffs: str = "Q") -> list[int]:
    """Reduced Betti numbers in dimensions 0..dim K."""
    if coeffs not in COEFFS:
        raise PolyfacesError(f"coefficients must be one of {COEFFS}")
    if not K.simplices or not K.simplices[0]:
        raise PreconditionError("homology of the empty complex is not defined here")
    top = K.dimension
    ranks = [0] * (top + 2)
    ranks[0] = 1  # augmentation onto the coefficients
    cleared: set[int] = set()
    for d in range(top, 0, -1):
        if coeffs == "F2":
            lower = {s: i for i, s in enumerate(K.simplices[d - 1])}
            cols = (
                sum(1 << lower[s[:k] + s[k + 1:]] for k in range(len(s))) for s in K.simplices[d]
            )
            rank, piv = _rank_f2(cols, cleared)
        else:
            rank, piv = _rank_q(boundary_matrix(K, d), cleared)
        ranks[d] = rank
        cleared = piv
    return [len(K.simplices[d]) - ranks[d] - ranks[d + 1] for d in range(top + 1)]


# ---------------------------------------------------------------- collapses


def _cofaces(K: SimplicialComplex) -> dict[tuple[int, ...], list[tuple[int, ...]]]:
    co: dict[tuple[int, ...], list[tuple[int, ...]]] = {s: [] for s in K.all_simplices()}
    for layer in K.simplices[1:]:
        for t in layer:
            for k in range(len(t)):
                co[t[:k] + t[k + 1:]].append(t)
    return co


def greedy_collapse(K: SimplicialComplex) -> list[tuple[tuple[int, ...], tuple[int, ...]]] | None:
    """Elementary collapses, always taking the lexicographically first free face.

    Returns the (free face, coface) pairs when the complex collapses to a vertex.
    """
    co = _cofaces(K)
    alive = set(co)
    count = {s: len(c) for s, c in co.items()}
    heap = [s for s, c in count.items() if c == 1]
    heapq.heapify(heap)
    pairs = []

    def faces(t: tuple[int, ...]) -> list[tuple[int, ...]]:
        return [t[:k] + t[k + 1:] for k in range(len(t))] if len(t) > 1 else []

    while heap:
        s = heapq.heappop(heap)
        if s not in alive or count[s] != 1:
            continue
        t = next(c for c in co[s] if c in alive)
        if count[t] != 0:
            continue  # re-pushed once t becomes maximal
        pairs.append((s, t))
        alive.discard(s)
        alive.discard(t)
        for f in faces(t):
            if f in alive:
                count[f] -= 1
                if count[f] == 1:
                    heapq.heappush(heap, f)
                elif count[f] == 0:
                    for g in faces(f):
                        if g in alive and count[g] == 1:
                            heapq.heappush(heap, g)
        for f in faces(s):
            if f in alive:
                count[f] -= 1
                if count[f] == 1:
                    heapq.heappush(heap, f)
                elif count[f] == 0:
                    for g in faces(f):
                        if g in alive and count[g] == 1:
                            heapq.heappush(heap, g)
    return pairs if len(alive) == 1 else None


def cone_apex(K: SimplicialComplex) -> int | None:
    """A vertex lying in every maximal simplex, if any."""
    co = _cofaces(K)
    maximal = [s for s, c in co.items() if not c]
    common = set(maximal[0]) if maximal else set()
    for s in maximal[1:]:
        common &= set(s)
    return min(common) if common else None


def cone_collapse(K: SimplicialComplex, apex: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Pair every simplex missing the apex with its join to the apex, largest first."""
    pairs = []
    for layer in reversed(K.simplices):
        for s in layer:
            if apex not in s:
                pairs.append((s, tuple(sorted(s + (apex,)))))
    return pairs


def verify_collapse(K: SimplicialComplex, pairs: Sequence[tuple[tuple[int, ...], tuple[int, ...]]]) -> bool:
    """Replay a collapse sequence, checking each step is elementary and a vertex remains."""
    co = _cofaces(K)
    alive = set(co)
    for s, t in pairs:
        if s not in alive or t not in alive or len(t) != len(s) + 1 or not set(s) <= set(t):
            return False
        live_co = [c for c in co[s] if c in alive]
        if live_co != [t] or any(c in alive for c in co[t]):
            return False
        alive.discard(s)
        alive.discard(t)
    return len(alive) == 1


@dataclass
class ContractibilityReport:
    betti_Q: list[int]
    betti_F2: list[int]
    collapsible: bool
    method: str | None = None
    certificate: list = field(default_factory=list, repr=False)
    element: str | None = None

    @property
    def acyclic_Q(self) -> bool:
        return not any(self.betti_Q)

    @property
    def acyclic_F2(self) -> bool:
        return not any(self.betti_F2)

    @property
    def acyclic(self) -> bool:
        return self.acyclic_Q and self.acyclic_F2

    def to_json(self) -> dict:
        out = {"betti_Q": self.betti_Q, "betti_F2": self.betti_F2, "collapsible": self.collapsible}
        if self.element is not None:
            out = {"element": self.element, **out}
        return out


def contractibility(K: SimplicialComplex, element: str | None = None) -> ContractibilityReport:
    bq = homology_ranks(K, "Q")
    b2 = homology_ranks(K, "F2")
    pairs = greedy_collapse(K)
    method = "greedy" if pairs is not None else None
    if pairs is None:
        apex = cone_apex(K)
        if apex is not None:
            pairs, method = cone_collapse(K, apex), "cone"
    ok = pairs is not None and verify_collapse(K, pairs)
    if ok and (any(bq) or any(b2)):
        raise PolyfacesError("collapse certificate contradicts nonzero homology")
    return ContractibilityReport(bq, b2, ok, method if ok else None, pairs or [], element)


# ---------------------------------------------------------------- cofinality


def comma_poset(F: PosetMap, q: int | str) -> FinitePoset:
    """Source elements p with F(p) >= q."""
    if isinstance(q, str):
        if q not in F.target.index:
            raise PolyfacesError(f"{q!r} is not in the target poset")
        q = F.target.index[q]
    above = F.target.above_mask(q)
    return F.source.subposet(i for i, y in enumerate(F.assignment) if above >> y & 1)


@dataclass
class CofinalityReport:
    functor: str
    reports: list[ContractibilityReport]

    @property
    def all_acyclic(self) -> bool:
        return all(r.acyclic for r in self.reports)

    def to_json(self) -> dict:
        return {
            "functor": self.functor,
            "all_acyclic": self.all_acyclic,
            "targets": [r.to_json() for r in self.reports],
        }


def cofinality_report(F: PosetMap) -> CofinalityReport:
    reports = []
    for q, name in enumerate(F.target.elements):
        reports.append(contractibility(order_complex(comma_poset(F, q)), element=name))
    return CofinalityReport(F.name, reports)


# ---------------------------------------------------------------- prisms


def prism_fiber_complex(F: PosetMap, chain: Sequence[int]) -> FinitePoset:
    """Cells of the fibre of |F| over an interior point of the simplex spanned by ``chain``.

    A cell is a strict chain of the source whose image is exactly the given
    chain (every level hit at least once); cells are ordered by inclusion.
    """
    chain = list(chain)
    if not chain:
        raise PreconditionError("the chain must be nonempty")
    T = F.target
    for a, b in zip(chain, chain[1:]):
        if not T.lt(a, b):
            raise PreconditionError("the chain must be strictly increasing")
    S = F.source
    level = {y: k for k, y in enumerate(chain)}
    cells: list[tuple[int, ...]] = []

    def extend(acc: tuple[int, ...], k: int) -> None:
        # acc is a chain in the source whose images cover levels 0..k-1
        last = acc[-1] if acc else None
        cand_mask = S.above_mask(last) & ~(1 << last) if last is not None else (1 << len(S)) - 1
        for x in range(len(S)):
            if not cand_mask >> x & 1:
                continue
            lx = level.get(F(x))
            if lx is None:
                continue
            cur = level[F(last)] if last is not None else -1
            if lx == cur or lx == cur + 1:
                nxt = acc + (x,)
                if lx == len(chain) - 1:
                    cells.append(nxt)
                extend(nxt, lx)

    extend((), 0)
    keys = ["<".join(S.elements[x] for x in c) for c in cells]
    sets = [frozenset(c) for c in cells]
    return FinitePoset.from_leq(keys, lambda i, j: sets[i] <= sets[j], items=cells)


def reduced_euler(K: SimplicialComplex) -> int:
    return K.euler_characteristic() - 1
