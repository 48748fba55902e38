"""Projections between the face posets: the trunk cut, level forgetting and fibers."""
from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from .errors import InvariantError, ParseError, PolyfacesError, PreconditionError
from .posets import FinitePoset, PosetMap, face_poset
from .trees import (
    STAR,
    Child,
    Fan,
    LeveledTree,
    Node,
    Path,
    PlanarTree,
    Tree,
    clades,
    is_geq,
    leaf_sequence,
    species_of,
)

Word = tuple[str, ...]
LETTERS = ("a", "b", "(ab)")


# ---------------------------------------------------------------- words


def parse_word(text: str) -> Word:
    out: list[str] = []
    i = 0
    while i < len(text):
        if text[i] in " ,":
            i += 1
        elif text.startswith("(ab)", i):
            out.append("(ab)")
            i += 4
        elif text[i] in "ab":
            out.append(text[i])
            i += 1
        else:
            raise ParseError("words use the letters a, b, (ab)", text, i)
    return tuple(out)


def format_word(w: Sequence[str]) -> str:
    return "".join(w)


def word_counts(w: Sequence[str]) -> tuple[int, int]:
    ell = sum(1 for x in w if x != "b")
    r = sum(1 for x in w if x != "a")
    return ell, r


# ---------------------------------------------------------------- the cut


def _cut(fan: Fan) -> tuple[PlanarTree, dict[Path, list[frozenset[int]]]]:
    """The trunk cut, plus the clades of the Psi-vertices each fan vertex becomes."""
    n = fan.n
    trunk = fan.trunk()
    fan_clades = clades(fan.root)
    images: dict[Path, list[frozenset[int]]] = {}
    for p, c in fan_clades.items():
        if STAR not in c:
            images[p] = [c]
    left: Child = 0
    right: Child = n + 1
    for p in reversed(trunk):
        lb, rb = fan.branches(p)
        images[p] = []
        if lb:
            left = Node((left,) + tuple(lb))
            images[p].append(frozenset(leaf_sequence(left)))
        if rb:
            right = Node(tuple(rb) + (right,))
            images[p].append(frozenset(leaf_sequence(right)))
    root = Node((left,) + fan.root.children[1:] + (right,))
    images[()] = [frozenset(range(n + 2))]
    return PlanarTree(root), images


def pi(fan: Fan) -> PlanarTree:
    """Cut a fan open along its trunk; the distinguished leaf becomes leaves 0 and n+1."""
    if not isinstance(fan, Fan):
        raise PolyfacesError("pi takes a fan")
    return _cut(fan)[0]


def forget_levels(t: LeveledTree) -> PlanarTree | Fan:
    return t.base


def pi_prime(t: LeveledTree) -> Fan:
    if not isinstance(t, LeveledTree) or not isinstance(t.base, Fan):
        raise PolyfacesError("pi-prime takes a leveled fan")
    return t.base


def pi_double_prime(t: LeveledTree) -> PlanarTree:
    """Leveled Psi-tree to its base; a leveled fan is first forgotten, then cut."""
    if not isinstance(t, LeveledTree):
        raise PolyfacesError("pi-double-prime takes a leveled tree")
    base = t.base
    return pi(base) if isinstance(base, Fan) else base


def leveled_iso(t: LeveledTree) -> LeveledTree:
    """Leveled fan to leveled Psi-tree: cut the base, copy each level to every image."""
    if not isinstance(t.base, Fan):
        raise PolyfacesError("leveled_iso takes a leveled fan")
    tree, images = _cut(t.base)
    lv = t.level_map()
    by_clade = {c: lv[p] for p, cs in images.items() for c in cs}
    new = {p: by_clade[c] for p, c in clades(tree.root).items()}
    return _renumber(tree, new)


def _renumber(base: PlanarTree | Fan, levels: dict[Path, int]) -> LeveledTree:
    used = sorted(set(levels.values()))
    rank = {v: k + 1 for k, v in enumerate(used)}
    return LeveledTree(base, tuple(rank[levels[p]] for p in base.internal_paths()))


def _assemble_fan(Y: PlanarTree, steps: Sequence[tuple[Path | None, Path | None]]) -> tuple[Fan, list[Path | None]]:
    """Rebuild a fan from Y and a root-to-leaf list of (left-most node, right-most node) pairs.

    Returns the fan and, per step, the fan path of the created trunk vertex.
    """
    sub: Child = STAR
    for lp, rp in reversed(steps):
        lb = list(Y.node(lp).children[1:]) if lp is not None else []
        rb = list(Y.node(rp).children[:-1]) if rp is not None else []
        sub = Node(tuple(rb) + (sub,) + tuple(lb))
    others = Y.root.children[1:-1]
    fan = Fan(Node((sub,) + tuple(others)))
    return fan, fan.trunk()


def fan_from_word(Y: PlanarTree, w: Sequence[str]) -> Fan:
    """The unique fan over Y whose trunk reads w."""
    lpath, rpath = Y.leftmost_path(), Y.rightmost_path()
    ell, r = word_counts(w)
    if (ell, r) != (len(lpath), len(rpath)):
        raise PreconditionError(
            f"word {format_word(w)!r} has counts {(ell, r)} but the tree has {(len(lpath), len(rpath))}"
        )
    steps: list[tuple[Path | None, Path | None]] = []
    li = ri = 0
    for x in w:
        lp = rp = None
        if x in ("a", "(ab)"):
            lp, li = lpath[li], li + 1
        if x in ("b", "(ab)"):
            rp, ri = rpath[ri], ri + 1
        steps.append((lp, rp))
    return _assemble_fan(Y, steps)[0]


def trunk_word(fan: Fan) -> Word:
    out: list[str] = []
    for p in fan.trunk():
        lb, rb = fan.branches(p)
        out.append("(ab)" if lb and rb else ("a" if lb else "b"))
    return tuple(out)


def leveled_iso_inverse(t: LeveledTree) -> LeveledTree:
    """Leveled Psi-tree to leveled fan: glue left-most and right-most nodes sharing a level."""
    Y = t.base
    if not isinstance(Y, PlanarTree):
        raise PolyfacesError("the inverse takes a leveled Psi-tree")
    lv = t.level_map()
    merged: dict[int, list[Path | None]] = {}
    for p in Y.leftmost_path():
        merged.setdefault(lv[p], [None, None])[0] = p
    for p in Y.rightmost_path():
        merged.setdefault(lv[p], [None, None])[1] = p
    order = sorted(merged)
    steps = [(merged[k][0], merged[k][1]) for k in order]
    fan, trunk = _assemble_fan(Y, steps)
    # every non-trunk fan vertex is a Psi-vertex with the same clade
    psi_levels = {c: lv[p] for p, c in clades(Y.root).items()}
    levels: dict[Path, int] = {(): lv[()]}
    for path, k in zip(trunk, order):
        levels[path] = k
    for p, c in clades(fan.root).items():
        if p not in levels:
            levels[p] = psi_levels[c]
    return _renumber(fan, levels)


# ---------------------------------------------------------------- poset maps


@lru_cache(maxsize=None)
def functor_map(name: str, n: int, max_n: int | None = None) -> PosetMap:
    """One of pi, pi-prime, pi-double-prime, leveled-iso as a map of face posets."""
    if name == "pi":
        src, tgt, f = face_poset("phi", n, max_n), face_poset("psi", n, max_n), pi
    elif name == "pi-prime":
        src, tgt, f = face_poset("phi_level", n, max_n), face_poset("phi", n, max_n), pi_prime
    elif name == "pi-double-prime":
        src, tgt, f = face_poset("psi_level", n, max_n), face_poset("psi", n, max_n), pi_double_prime
    elif name == "leveled-iso":
        src, tgt, f = face_poset("phi_level", n, max_n), face_poset("psi_level", n, max_n), leveled_iso
    else:
        raise PolyfacesError(f"unknown functor {name!r}")
    assert src.items is not None
    assignment = [tgt.index[str(f(x))] for x in src.items]
    return PosetMap(src, tgt, assignment, name)


def fiber(F: PosetMap, y: int) -> FinitePoset:
    return F.source.subposet(F.preimage(y))


def fiber_geq(F: PosetMap, y: int, x: int) -> FinitePoset:
    above = F.source.above_mask(x)
    return F.source.subposet(i for i in F.preimage(y) if above >> i & 1)


def fiber_poset(Y: PlanarTree, max_n: int | None = None) -> FinitePoset:
    F = functor_map("pi", Y.n, max_n)
    return fiber(F, F.target.index[str(Y)])


def fiber_geq_poset(Y: PlanarTree, That: Fan, max_n: int | None = None) -> FinitePoset:
    if Y.n != That.n:
        raise PreconditionError("tree and fan have different n")
    if not is_geq(Y, pi(That)):
        raise PreconditionError(f"{Y} is not >= pi({That}) = {pi(That)}")
    F = functor_map("pi", Y.n, max_n)
    return fiber_geq(F, F.target.index[str(Y)], F.source.index[str(That)])


def check_species(t: Tree, species: str) -> None:
    if species_of(t) != species:
        raise InvariantError(f"expected a {species} label", str(t))
