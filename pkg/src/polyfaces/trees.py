"""Planar trees, fans and leveled trees: the face labels of the three polytopes.

Leaves are plain ``int`` labels.  In a fan the distinguished leaf is label
``STAR`` (0) and prints as ``*``.  Internal vertices are addressed by their
path of child indices from the root, so the root is ``()``; an edge is named
by the path of its child endpoint.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence, Union

from .errors import CapExceeded, InvariantError, ParseError, PolyfacesError

STAR = 0

Path = tuple[int, ...]
Child = Union["Node", int]

SPECIES = ("psi", "phi", "psi_level", "phi_level")
DEFAULT_CAPS = {"psi": 6, "phi": 6, "psi_level": 5, "phi_level": 5}


@dataclass(frozen=True)
class Node:
    children: tuple[Child, ...]

    def __iter__(self) -> Iterator[Child]:
        return iter(self.children)

    def __len__(self) -> int:
        return len(self.children)


# ---------------------------------------------------------------- traversal


def iter_internal(root: Node) -> Iterator[tuple[Path, Node]]:
    """Internal vertices in preorder (root first)."""
    stack: list[tuple[Path, Node]] = [((), root)]
    while stack:
        path, node = stack.pop()
        yield path, node
        for k in range(len(node.children) - 1, -1, -1):
            c = node.children[k]
            if isinstance(c, Node):
                stack.append((path + (k,), c))


def leaf_sequence(node: Child) -> list[int]:
    if isinstance(node, int):
        return [node]
    out: list[int] = []
    for c in node.children:
        out.extend(leaf_sequence(c))
    return out


def node_at(root: Node, path: Path) -> Node:
    node: Child = root
    for k in path:
        assert isinstance(node, Node)
        node = node.children[k]
    assert isinstance(node, Node)
    return node


def clades(root: Node) -> dict[Path, frozenset[int]]:
    """Leaf set below every internal vertex."""
    out: dict[Path, frozenset[int]] = {}

    def walk(node: Node, path: Path) -> frozenset[int]:
        acc: set[int] = set()
        for k, c in enumerate(node.children):
            if isinstance(c, int):
                acc.add(c)
            else:
                acc |= walk(c, path + (k,))
        fs = frozenset(acc)
        out[path] = fs
        return fs

    walk(root, ())
    return out


def leaf_paths(root: Node) -> dict[int, Path]:
    out: dict[int, Path] = {}

    def walk(node: Node, path: Path) -> None:
        for k, c in enumerate(node.children):
            if isinstance(c, int):
                out[c] = path + (k,)
            else:
                walk(c, path + (k,))

    walk(root, ())
    return out


def _is_prefix(a: Path, b: Path) -> bool:
    return len(a) <= len(b) and b[: len(a)] == a


# ---------------------------------------------------------------- species


class _Base:
    root: Node

    def internal_paths(self) -> list[Path]:
        return [p for p, _ in iter_internal(self.root)]

    def internal_edges(self) -> list[Path]:
        return [p for p in self.internal_paths() if p]

    def leaves(self) -> list[int]:
        return leaf_sequence(self.root)

    def node(self, path: Path) -> Node:
        return node_at(self.root, path)

    def nadir(self, i: int, j: int) -> Path:
        """Lowest common ancestor of two distinct leaves."""
        if i == j:
            raise PolyfacesError("nadir needs two distinct leaves")
        lp = leaf_paths(self.root)
        a, b = lp[i], lp[j]
        k = 0
        while k < min(len(a), len(b)) and a[k] == b[k]:
            k += 1
        return a[:k]

    def closer(self, i: int, j: int, k: int) -> bool:
        """True when leaves i, j are closer to each other than to k."""
        nij, njk = self.nadir(i, j), self.nadir(j, k)
        return nij != njk and _is_prefix(njk, nij)

    def __str__(self) -> str:
        return format_tree(self)


@dataclass(frozen=True)
class PlanarTree(_Base):
    """A Psi-tree: root with >= 2 children, leaves 0..n+1 left to right."""

    root: Node

    def __post_init__(self) -> None:
        _check_arity(self.root, root_min=2)
        seq = leaf_sequence(self.root)
        if seq != list(range(len(seq))):
            raise InvariantError("leaf labels read 0..n+1 in planar order", str(seq))

    @property
    def n(self) -> int:
        return len(leaf_sequence(self.root)) - 2

    def leftmost_path(self) -> list[Path]:
        """Left-most nodes, root excluded, ordered from the root upward."""
        return self._extreme_path(0)

    def rightmost_path(self) -> list[Path]:
        return self._extreme_path(-1)

    def _extreme_path(self, side: int) -> list[Path]:
        out: list[Path] = []
        node, path = self.root, ()
        while True:
            k = 0 if side == 0 else len(node.children) - 1
            c = node.children[k]
            if isinstance(c, int):
                return out
            path = path + (k,)
            out.append(path)
            node = c


@dataclass(frozen=True)
class Fan(_Base):
    """A fan: root children stored cyclically with the trunk child first."""

    root: Node

    def __post_init__(self) -> None:
        _check_arity(self.root, root_min=1)
        first = self.root.children[0]
        if STAR not in leaf_sequence(first):
            raise InvariantError("root children stored trunk-direction child first")
        seq = leaf_sequence(self.root)
        if seq.count(STAR) != 1:
            raise InvariantError("exactly one distinguished leaf")
        s = seq.index(STAR)
        rot = seq[s:] + seq[:s]
        if rot != list(range(len(rot))):
            raise InvariantError("cyclic leaf order reads *,1,...,n", str(seq))

    @property
    def n(self) -> int:
        return len(leaf_sequence(self.root)) - 1

    def trunk(self) -> list[Path]:
        """Non-root trunk vertices, from the root toward the distinguished leaf."""
        out: list[Path] = []
        node, path = self.root, ()
        k = 0
        while True:
            c = node.children[k]
            if isinstance(c, int):
                return out
            path = path + (k,)
            out.append(path)
            node = c
            k = next(i for i, g in enumerate(node.children) if STAR in leaf_sequence(g))

    def branches(self, path: Path) -> tuple[list[Child], list[Child]]:
        """(left-going, right-going) branches at a non-root trunk vertex.

        Left-going branches are the children after the trunk child; under the
        cut they end up next to leaf 0.
        """
        node = self.node(path)
        t = next(i for i, g in enumerate(node.children) if STAR in leaf_sequence(g))
        return list(node.children[t + 1:]), list(node.children[:t])


@dataclass(frozen=True)
class LeveledTree:
    """A base tree plus strictly monotone surjective levels on its internal vertices.

    ``levels`` follows the preorder of ``base.internal_paths()``.
    """

    base: PlanarTree | Fan
    levels: tuple[int, ...]

    def __post_init__(self) -> None:
        paths = self.base.internal_paths()
        if len(paths) != len(self.levels):
            raise InvariantError("one level per internal vertex")
        m = max(self.levels)
        if sorted(set(self.levels)) != list(range(1, m + 1)):
            raise InvariantError("level map is surjective onto 1..m", str(self.levels))
        lv = dict(zip(paths, self.levels))
        for p in paths:
            if p and lv[p[:-1]] >= lv[p]:
                raise InvariantError("levels strictly increase away from the root", str(self.levels))

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def height(self) -> int:
        return max(self.levels)

    def level_map(self) -> dict[Path, int]:
        return dict(zip(self.base.internal_paths(), self.levels))

    def __str__(self) -> str:
        return format_tree(self)


Tree = Union[PlanarTree, Fan, LeveledTree]


def species_of(t: Tree) -> str:
    if isinstance(t, LeveledTree):
        return "phi_level" if isinstance(t.base, Fan) else "psi_level"
    return "phi" if isinstance(t, Fan) else "psi"


def _check_arity(root: Node, root_min: int) -> None:
    if len(root.children) < root_min:
        raise InvariantError(f"root has >= {root_min} children")
    for path, node in iter_internal(root):
        if path and len(node.children) < 2:
            raise InvariantError("every non-root internal vertex has >= 2 children", f"vertex {path}")


# ---------------------------------------------------------------- codec


def format_tree(t: Tree) -> str:
    if isinstance(t, LeveledTree):
        return _fmt(t.base.root, (), isinstance(t.base, Fan), t.level_map())
    return _fmt(t.root, (), isinstance(t, Fan), None)


def _fmt(node: Node, path: Path, fan: bool, levels: dict[Path, int] | None) -> str:
    parts = []
    for k, c in enumerate(node.children):
        if isinstance(c, int):
            parts.append("*" if fan and c == STAR else str(c))
        else:
            parts.append(_fmt(c, path + (k,), fan, levels))
    o, cl = ("<", ">") if fan and not path else ("(", ")")
    s = o + " ".join(parts) + cl
    if levels is not None:
        s += f"@{levels[path]}"
    return s


def parse_tree(text: str) -> Tree:
    """Parse the canonical text of any species."""
    p = _Parser(text)
    p.skip()
    if p.peek() not in "(<":
        raise ParseError("expected '(' or '<'", text, p.pos)
    fan = p.peek() == "<"
    root, levels = p.node(fan, ())
    p.skip()
    if p.pos != len(text):
        raise ParseError("trailing characters", text, p.pos)
    if levels and len(levels) != sum(1 for _ in iter_internal(root)):
        raise InvariantError("either every internal vertex carries a level or none does")
    if p.saw_star and not fan:
        raise ParseError("'*' only allowed in fans", text, text.index("*"))
    base: PlanarTree | Fan = Fan(root) if fan else PlanarTree(root)
    if not levels:
        return base
    order = base.internal_paths()
    return LeveledTree(base, tuple(levels[q] for q in order))


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.saw_star = False

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def int_(self) -> int:
        start = self.pos
        while self.peek().isdigit():
            self.pos += 1
        if start == self.pos:
            raise ParseError("expected a decimal integer", self.text, self.pos)
        return int(self.text[start:self.pos])

    def node(self, fan_root: bool, path: Path) -> tuple[Node, dict[Path, int]]:
        close = ">" if fan_root else ")"
        self.pos += 1
        children: list[Child] = []
        levels: dict[Path, int] = {}
        while True:
            self.skip()
            ch = self.peek()
            if ch == close:
                self.pos += 1
                break
            if ch == "":
                raise ParseError(f"unterminated vertex, expected {close!r}", self.text, self.pos)
            if ch == "(":
                sub, lv = self.node(False, path + (len(children),))
                children.append(sub)
                levels.update(lv)
            elif ch == "*":
                if not self._in_fan:
                    raise ParseError("'*' only allowed in fans", self.text, self.pos)
                self.saw_star = True
                self.pos += 1
                children.append(STAR)
            elif ch.isdigit():
                if self._in_fan and self.text[self.pos] == "0" and not self.text[self.pos + 1:self.pos + 2].isdigit():
                    raise ParseError("fans label the distinguished leaf '*', not 0", self.text, self.pos)
                children.append(self.int_())
            else:
                raise ParseError(f"unexpected character {ch!r}", self.text, self.pos)
        if not children:
            raise ParseError("empty vertex", self.text, self.pos - 1)
        if self.peek() == "@":
            self.pos += 1
            lvl = self.int_()
            if lvl < 1:
                raise ParseError("levels are positive integers", self.text, self.pos - 1)
            levels[path] = lvl
        return Node(tuple(children)), levels

    @property
    def _in_fan(self) -> bool:
        return self.text.lstrip().startswith("<")


# ---------------------------------------------------------------- contraction


def _contract_root(root: Node, edges: frozenset[Path]) -> tuple[Node, dict[Path, Path]]:
    mapping: dict[Path, Path] = {}

    def build(node: Node, old: Path, new: Path) -> Node:
        mapping[old] = new
        out: list[Child] = []

        def emit(child: Child, cold: Path) -> None:
            if isinstance(child, int):
                out.append(child)
            elif cold in edges:
                mapping[cold] = new
                for k, g in enumerate(child.children):
                    emit(g, cold + (k,))
            else:
                idx = len(out)
                out.append(STAR)  # placeholder
                out[idx] = build(child, cold, new + (idx,))

        for k, c in enumerate(node.children):
            emit(c, old + (k,))
        return Node(tuple(out))

    return build(root, (), ()), mapping


def _rotate_fan_root(root: Node, mapping: dict[Path, Path]) -> tuple[Node, dict[Path, Path]]:
    ch = root.children
    t = next(i for i, g in enumerate(ch) if STAR in leaf_sequence(g))
    if t == 0:
        return root, mapping
    m = len(ch)
    new_root = Node(ch[t:] + ch[:t])
    remap = {old: (new if not new else ((new[0] - t) % m,) + new[1:]) for old, new in mapping.items()}
    return new_root, remap


def contract_with_map(t: PlanarTree | Fan, edges: Iterable[Path]) -> tuple[PlanarTree | Fan, dict[Path, Path]]:
    """Contract internal edges; also return old internal path -> new internal path."""
    es = frozenset(edges)
    valid = set(t.internal_edges())
    bad = es - valid
    if bad:
        raise PolyfacesError(f"not internal edges of {t}: {sorted(bad)}")
    root, mapping = _contract_root(t.root, es)
    if isinstance(t, Fan):
        root, mapping = _rotate_fan_root(root, mapping)
        return Fan(root), mapping
    return PlanarTree(root), mapping


def contract(t: PlanarTree | Fan, edges: Iterable[Path]) -> PlanarTree | Fan:
    return contract_with_map(t, edges)[0]


def coarsen_levels(lt: LeveledTree, groups: Sequence[Sequence[int]]) -> LeveledTree:
    """Merge consecutive level blocks; tree edges inside a merged block collapse.

    ``groups`` is a partition of 1..m into consecutive runs, e.g. [[1], [2, 3]].
    """
    flat = [x for g in groups for x in g]
    if flat != list(range(1, lt.height + 1)) or any(not g for g in groups):
        raise PolyfacesError(f"not a consecutive grouping of 1..{lt.height}: {groups}")
    newlevel = {x: gi + 1 for gi, g in enumerate(groups) for x in g}
    lv = {p: newlevel[l] for p, l in lt.level_map().items()}
    edges = [p for p in lv if p and lv[p] == lv[p[:-1]]]
    base, mapping = contract_with_map(lt.base, edges)
    new_lv: dict[Path, int] = {}
    for old, new in mapping.items():
        new_lv[new] = lv[old]
    return LeveledTree(base, tuple(new_lv[p] for p in base.internal_paths()))


def merge_adjacent_levels(lt: LeveledTree, i: int) -> LeveledTree:
    m = lt.height
    if not 1 <= i < m:
        raise PolyfacesError(f"no adjacent levels {i},{i + 1} in a tree of height {m}")
    groups = [[k] for k in range(1, i)] + [[i, i + 1]] + [[k] for k in range(i + 2, m + 1)]
    return coarsen_levels(lt, groups)


def level_groupings(m: int) -> Iterator[list[list[int]]]:
    """All ways to cut 1..m into consecutive blocks."""
    for mask in range(1 << max(m - 1, 0)):
        groups, cur = [], [1]
        for k in range(2, m + 1):
            if mask >> (k - 2) & 1:
                cur.append(k)
            else:
                groups.append(cur)
                cur = [k]
        groups.append(cur)
        yield groups


def all_contractions(t: Tree) -> Iterator[Tree]:
    """Every element below (or equal to) ``t`` in its face poset, possibly repeated."""
    if isinstance(t, LeveledTree):
        for g in level_groupings(t.height):
            yield coarsen_levels(t, g)
        return
    edges = t.internal_edges()
    for r in range(len(edges) + 1):
        for sub in itertools.combinations(edges, r):
            yield contract(t, sub)


def is_geq(t1: Tree, t2: Tree) -> bool:
    """t1 >= t2 in the face poset (t2 is a contraction of t1)."""
    s1, s2 = species_of(t1), species_of(t2)
    if s1 != s2:
        raise PolyfacesError(f"species mismatch: {s1} vs {s2}")
    b1 = t1.base if isinstance(t1, LeveledTree) else t1
    b2 = t2.base if isinstance(t2, LeveledTree) else t2
    if sorted(b1.leaves()) != sorted(b2.leaves()):
        raise PolyfacesError("leaf label sets differ")
    if isinstance(t1, LeveledTree):
        assert isinstance(t2, LeveledTree)
        if t2.height > t1.height:
            return False
        return any(coarsen_levels(t1, g) == t2 for g in level_groupings(t1.height) if len(g) == t2.height)
    return any(c == t2 for c in all_contractions(t1))


# ---------------------------------------------------------------- enumeration


def cap_for(species: str) -> int:
    env = os.environ.get("POLYFACES_MAX_N")
    if env:
        return int(env)
    return DEFAULT_CAPS[species]


def _check_cap(species: str, n: int, max_n: int | None) -> None:
    if species not in SPECIES:
        raise PolyfacesError(f"unknown species {species!r}")
    if n < 0:
        raise PolyfacesError("n must be >= 0")
    cap = cap_for(species) if max_n is None else max_n
    if n > cap:
        raise CapExceeded(f"n={n} exceeds the cap {cap} for {species}; raise it with --max-n or POLYFACES_MAX_N")


def _planar_trees(labels: tuple[int, ...]) -> list[Node]:
    """All planar trees (root >= 2 children) with the given leaf sequence."""
    return list(_forests_cached(labels, True))


_FOREST_CACHE: dict[tuple[tuple[int, ...], bool], tuple] = {}


def _forests_cached(labels: tuple[int, ...], as_tree: bool):
    key = (labels, as_tree)
    if key not in _FOREST_CACHE:
        _FOREST_CACHE[key] = tuple(_gen_trees(labels) if as_tree else _gen_forests(labels))
    return _FOREST_CACHE[key]


def _gen_items(labels: tuple[int, ...]) -> Iterator[Child]:
    # a single subtree: a leaf, or an internal vertex with >= 2 children
    if len(labels) == 1:
        yield labels[0]
    else:
        yield from _forests_cached(labels, True)


def _gen_trees(labels: tuple[int, ...]) -> Iterator[Node]:
    for k in range(1, len(labels)):
        for head in _gen_items(labels[:k]):
            for tail in _forests_cached(labels[k:], False):
                yield Node((head,) + tail)


def _gen_forests(labels: tuple[int, ...]) -> Iterator[tuple[Child, ...]]:
    # ordered sequences of subtrees covering ``labels`` consecutively
    if not labels:
        yield ()
        return
    for k in range(1, len(labels) + 1):
        for head in _gen_items(labels[:k]):
            for tail in _forests_cached(labels[k:], False):
                yield (head,) + tail


def _fans(n: int) -> Iterator[Fan]:
    for j in range(n + 1):
        for k in range(j, n + 1):
            trunk_labels = tuple(range(k + 1, n + 1)) + (STAR,) + tuple(range(1, j + 1))
            trunks: Iterable[Child] = [STAR] if len(trunk_labels) == 1 else _planar_trees(trunk_labels)
            rest = _forests_cached(tuple(range(j + 1, k + 1)), False)
            for t0 in trunks:
                for others in rest:
                    yield Fan(Node((t0,) + others))


def enumerate_levelizations(t: PlanarTree | Fan) -> list[LeveledTree]:
    paths = t.internal_paths()
    parents = {p: (p[:-1] if p else None) for p in paths}
    out = [LeveledTree(t, tuple(lv[p] for p in paths)) for lv in levelings(parents)]
    return sorted(out, key=str)


def levelings(parents: dict) -> list[dict]:
    """Surjective strictly monotone level maps of an abstract rooted forest.

    ``parents`` maps each vertex to its parent (``None`` for roots).
    """
    verts = list(parents)
    children: dict = {v: [] for v in verts}
    for v, p in parents.items():
        if p is not None:
            children[p].append(v)
    out: list[dict] = []

    def rec(avail: frozenset, assigned: dict, level: int) -> None:
        if len(assigned) == len(verts):
            out.append(dict(assigned))
            return
        av = sorted(avail, key=repr)
        for r in range(1, len(av) + 1):
            for block in itertools.combinations(av, r):
                nxt = set(avail) - set(block)
                for v in block:
                    assigned[v] = level
                    nxt.update(children[v])
                rec(frozenset(nxt), assigned, level + 1)
                for v in block:
                    del assigned[v]

    rec(frozenset(v for v in verts if parents[v] is None), {}, 1)
    return out


def enumerate_trees(species: str, n: int, max_n: int | None = None) -> list[Tree]:
    """All face labels of one species, sorted by canonical text."""
    _check_cap(species, n, max_n)
    if species == "psi":
        items: list[Tree] = [PlanarTree(r) for r in _planar_trees(tuple(range(n + 2)))]
    elif species == "phi":
        items = list(_fans(n))
    else:
        base = enumerate_trees(species.split("_")[0], n, max_n=n)
        items = [lt for b in base for lt in enumerate_levelizations(b)]  # type: ignore[arg-type]
    return sorted(items, key=str)


def corolla(species: str, n: int) -> Tree:
    if species == "psi":
        return PlanarTree(Node(tuple(range(n + 2))))
    if species == "phi":
        return Fan(Node(tuple(range(n + 1))))
    base = corolla(species.split("_")[0], n)
    return LeveledTree(base, (1,))  # type: ignore[arg-type]
