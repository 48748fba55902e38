"""Coordinate charts of the configuration-space compactifications.

Tables are dicts keyed by index tuples.  Exact values are ``Fraction``;
anything involving a sine is a ``float``; infinity is ``math.inf``.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence, Union

from .errors import InvariantError, PolyfacesError, PreconditionError
from .laurent import INF, Laurent, ratio_limit
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
    iter_internal,
    leaf_paths,
    leaf_sequence,
)

Value = Union[Fraction, float]
Table = dict[tuple[int, ...], Value]
KINDS = ("alpha", "beta", "gamma", "delta")
TOL = 1e-12


# ---------------------------------------------------------------- values


def ext_json(v: Value) -> object:
    if isinstance(v, Fraction):
        return {"num": v.numerator, "den": v.denominator}
    if v == INF:
        return "inf"
    return v


def _key(idx: tuple[int, ...]) -> str:
    return ",".join(map(str, idx))


@dataclass
class AmbientPoint:
    """A point of one of the ambient spaces.

    alpha: ``table`` holds s_ijk.  beta: ``t`` may lie on the closed simplex and
    ``table`` holds the sine ratios.  gamma/delta: ``table`` holds s_ijk and
    ``ratios`` the extra r-coordinates.
    """

    kind: str
    n: int
    t: tuple[Value, ...]
    table: Table
    ratios: Table = field(default_factory=dict)

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind, "n": self.n, "t": [ext_json(x) for x in self.t]}
        name = "stilde" if self.kind == "beta" else "s"
        out[name] = {_key(k): ext_json(v) for k, v in sorted(self.table.items())}
        if self.ratios:
            out["r"] = {_key(k): ext_json(v) for k, v in sorted(self.ratios.items())}
        return out


def _as_number(x) -> Value:
    if isinstance(x, (Fraction, float)):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise PolyfacesError(f"not a number: {x!r}")


def check_interior(t: Sequence[Value]) -> None:
    pts = [0, *t, 1]
    for a, b in zip(pts, pts[1:]):
        if not a < b:
            raise PreconditionError(f"configuration {list(map(str, t))} is not interior: need 0 < t_1 < ... < t_n < 1")


def parse_config(text: str) -> tuple[Value, ...]:
    """Comma-separated rationals (``1/4``) or decimals; decimals stay floats."""
    out: list[Value] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            out.append(Fraction(part) if ("/" in part or part.isdigit()) else float(part))
        except ValueError:
            raise PolyfacesError(f"not a number: {part!r}") from None
    return tuple(out)


# ---------------------------------------------------------------- charts


def _alpha(x: Sequence[Value]) -> Table:
    return {
        (i, j, k): (x[j] - x[i]) / (x[k] - x[i])
        for i, j, k in itertools.combinations(range(len(x)), 3)
    }


def stilde(x: Sequence[Value], k: int, l: int, m: int) -> float:
    return abs(math.sin(math.pi * float(x[l] - x[k])) / math.sin(math.pi * float(x[m] - x[k])))


def _beta(x: Sequence[Value]) -> Table:
    """Sine ratios over ordered distinct triples of the circle points x_0..x_n."""
    idx = range(len(x))
    return {(k, l, m): stilde(x, k, l, m) for k, l, m in itertools.permutations(idx, 3)}


def chart(kind: str, t: Sequence) -> AmbientPoint:
    if kind not in KINDS:
        raise PolyfacesError(f"chart kind must be one of {KINDS}")
    t = tuple(_as_number(v) for v in t)
    check_interior(t)
    n = len(t)
    x = [Fraction(0), *t, Fraction(1)]
    if kind == "beta":
        return AmbientPoint("beta", n, t, _beta(x[:-1]))
    table = _alpha(x)
    ratios: Table = {}
    if kind == "gamma":
        ratios = {(i, j): x[i] / (1 - x[j]) for i, j in itertools.combinations(range(1, n + 1), 2)}
    elif kind == "delta":
        ratios = {
            (i, j, k, l): (x[j] - x[i]) / (x[l] - x[k])
            for i, j, k, l in itertools.combinations(range(n + 2), 4)
        }
    return AmbientPoint(kind, n, t, table, ratios)


# ---------------------------------------------------------------- permuted ratios


def _inv(v: Value) -> Value:
    if v == 0:
        return INF
    if v == INF:
        return Fraction(0)
    return 1 / v


def s_variants(s: Value) -> dict[str, Value]:
    """The other five orderings of one triple, from s = s_ijk with i < j < k."""
    one_minus = 1 - s
    return {
        "ikj": _inv(s),
        "jik": INF if one_minus == 0 else s / one_minus,
        "jki": INF if s == 0 else one_minus / s,
        "kij": _inv(one_minus),
        "kji": one_minus,
    }


def permuted_ratio(s: Value, roles: str) -> Value:
    """|x_q - x_p| / |x_r - x_p| for (p, q, r) given as roles among sorted points a < b < c."""
    if roles == "abc":
        return s
    name = roles.translate(str.maketrans("abc", "ijk"))
    return s_variants(s)[name]


def _roles(positions: Sequence[int]) -> str:
    order = sorted(positions)
    return "".join("abc"[order.index(p)] for p in positions)


# ---------------------------------------------------------------- blend


def _psi(x: float, square: bool = False) -> float:
    if x <= 0:
        return 0.0
    return math.exp(-1.0 / (x * x if square else x))


@dataclass(frozen=True)
class BlendConfig:
    """Smooth partition of unity: mu2 = 1 on [1/2, inf), mu1 = 1 on (-inf, 1/3]."""

    bump: str = "exp"  # "exp" uses exp(-1/x); "exp2" uses exp(-1/x^2)

    def mu2(self, u: float) -> float:
        sq = self.bump == "exp2"
        a, b = _psi(u - 1 / 3, sq), _psi(0.5 - u, sq)
        return a / (a + b)

    def mu1(self, u: float) -> float:
        return 1.0 - self.mu2(u)


def _sinc_pi(x: float) -> float:
    return math.pi if x == 0 else math.sin(math.pi * x) / x


def blend_entry(ti: Value, tj: Value, tk: Value, st: Value | None, cfg: BlendConfig = BlendConfig()) -> float:
    """One s_ijk coordinate of the blend: the ratio formula far apart, the sine-corrected one close together."""
    u = float(tk - ti)
    w_ratio, w_sine = cfg.mu2(u), cfg.mu1(u)
    acc = 0.0
    if w_ratio:
        f = float(tj - ti) / u
        acc += w_ratio * f / (1 + f)
    if w_sine:
        if st is None:
            raise PreconditionError("the sine ratio is needed when points are close")
        if st == INF:
            acc += w_sine
        else:
            g = float(st) * _sinc_pi(u) / _sinc_pi(float(tj - ti))
            acc += w_sine * g / (1 + g)
    return INF if acc >= 1.0 else acc / (1.0 - acc)


def blend_projection(b: AmbientPoint, cfg: BlendConfig = BlendConfig()) -> AmbientPoint:
    if b.kind != "beta":
        raise PolyfacesError("blend_projection takes a beta point")
    n = b.n
    x = [Fraction(0), *b.t, Fraction(1)]
    table: Table = {}
    for i, j, k in itertools.combinations(range(n + 2), 3):
        kk = 0 if k == n + 1 else k
        st = b.table.get((i, j, kk)) if i != kk else None
        table[(i, j, k)] = blend_entry(x[i], x[j], x[k], st, cfg)
    return AmbientPoint("alpha", n, tuple(b.t), table)


# ---------------------------------------------------------------- split / segment


def _restrict(table: Table, lo: int, m: int) -> Table:
    return {
        (i, j, k): table[(i + lo, j + lo, k + lo)]
        for i, j, k in itertools.combinations(range(m + 1), 3)
    }


def _alpha_point(table: Table, n: int) -> AmbientPoint:
    return AmbientPoint("alpha", n, tuple(table[(0, j, n + 1)] for j in range(1, n + 1)), table)


def split_projection(p: AmbientPoint, r: int) -> tuple[AmbientPoint, AmbientPoint]:
    """Assoc_{r+l-1} -> Assoc_{r-1} x Assoc_{l-1} by restricting index ranges."""
    if p.kind != "alpha":
        raise PolyfacesError("split_projection takes an alpha point")
    ell = p.n + 1 - r
    if r < 1 or ell < 1:
        raise PreconditionError(f"need 1 <= r <= n = {p.n}")
    return _alpha_point(_restrict(p.table, 0, r), r - 1), _alpha_point(_restrict(p.table, r, ell), ell - 1)


def tau_path(u: Sequence[Value], v: Sequence[Value], tau: Laurent) -> list[Laurent]:
    """t_i = tau u_i (i < r), t_r = tau, t_{r+i} = tau + (1 - tau) v_i."""
    one = Laurent.const(1)
    return (
        [tau.scale(x) for x in u]
        + [tau]
        + [tau + (one - tau).scale(y) for y in v]
    )


def tau_fiber_point(u: Sequence[Value], v: Sequence[Value], tau) -> AmbientPoint:
    """The point over (alpha(u), alpha(v)) whose s_{0,r,r+l} coordinate is tau; ends are limits."""
    u = tuple(_as_number(x) for x in u)
    v = tuple(_as_number(x) for x in v)
    check_interior(u)
    check_interior(v)
    tau = _as_number(tau)
    if not 0 <= tau <= 1:
        raise PreconditionError("tau must lie in [0, 1]")
    if 0 < tau < 1:
        t = [tau * x for x in u] + [tau] + [tau + (1 - tau) * y for y in v]
        return chart("alpha", t)
    e = Laurent.monomial(1, 1)
    path = tau_path(u, v, e if tau == 0 else Laurent.const(1) - e)
    return path_limit(path, "alpha")


# ---------------------------------------------------------------- face inclusions


def _edge_params(node: Node, local: Sequence[Value]) -> list[Value]:
    return [Fraction(0), *local, Fraction(1)]


def _check_local(T: PlanarTree | Fan, local: Mapping[Path, Sequence[Value]]) -> dict[Path, tuple[Value, ...]]:
    out: dict[Path, tuple[Value, ...]] = {}
    fan = isinstance(T, Fan)
    for p, node in iter_internal(T.root):
        want = len(node) - 1 if (fan and not p) else len(node) - 2
        if p not in local:
            raise PreconditionError(f"missing local configuration for vertex {p}")
        vals = tuple(_as_number(x) for x in local[p])
        if len(vals) != want:
            raise PreconditionError(f"vertex {p} needs {want} local coordinates, got {len(vals)}")
        check_interior(vals)
        out[p] = vals
    return out


def _edge_toward(lp: dict[int, Path], v: Path, leaf: int) -> int:
    return lp[leaf][len(v)]


def include_face(kind: str, T: PlanarTree | Fan, local: Mapping[Path, Sequence[Value]]) -> AmbientPoint:
    """Place interior local data of a face into the big ambient space by nadir cases."""
    loc = _check_local(T, local)
    lp = leaf_paths(T.root)
    if kind == "assoc":
        if not isinstance(T, PlanarTree):
            raise PolyfacesError("assoc faces are labelled by Psi-trees")
        n = T.n
        table: Table = {}
        for i, j, k in itertools.combinations(range(n + 2), 3):
            nij, njk = T.nadir(i, j), T.nadir(j, k)
            if nij != njk:
                table[(i, j, k)] = Fraction(0) if len(nij) > len(njk) else Fraction(1)
            else:
                x = _edge_params(T.node(nij), loc[nij])
                table[(i, j, k)] = _alpha(
                    [x[_edge_toward(lp, nij, i)], x[_edge_toward(lp, nij, j)], x[_edge_toward(lp, nij, k)]]
                )[(0, 1, 2)]
        return _alpha_point(table, n)
    if kind == "cycl":
        if not isinstance(T, Fan):
            raise PolyfacesError("cycl faces are labelled by fans")
        return _include_fan(T, loc, lp)
    raise PolyfacesError("face kind must be assoc or cycl")


def _include_fan(T: Fan, loc: dict[Path, tuple[Value, ...]], lp: dict[int, Path]) -> AmbientPoint:
    n = T.n
    root_t = [Fraction(0), *loc[()]]
    trunk_leaves = leaf_sequence(T.root.children[0])
    before_star = set(trunk_leaves[: trunk_leaves.index(STAR)])
    t: list[Value] = []
    for i in range(1, n + 1):
        e = lp[i][0]
        t.append(Fraction(1) if e == 0 and i in before_star else root_t[e])
    table: Table = {}
    for i, j, k in itertools.permutations(range(n + 1), 3):
        nij, njk, nik = T.nadir(i, j), T.nadir(j, k), T.nadir(i, k)
        top = max(len(nij), len(njk), len(nik))
        if len(nij) == top and nij != njk:
            table[(i, j, k)] = Fraction(0)
        elif len(njk) == top and njk != nij:
            table[(i, j, k)] = Fraction(1)
        elif len(nik) == top and nik != nij:
            table[(i, j, k)] = INF
        elif nij == ():
            e = [lp[x][0] for x in (i, j, k)]
            table[(i, j, k)] = stilde(root_t, *e)
        else:
            pos = [_edge_toward(lp, nij, x) for x in (i, j, k)]
            xs = _edge_params(T.node(nij), loc[nij])
            a, b, c = sorted(pos)
            s = (xs[b] - xs[a]) / (xs[c] - xs[a])
            table[(i, j, k)] = permuted_ratio(s, _roles(pos))
    return AmbientPoint("beta", n, tuple(t), table)


# ---------------------------------------------------------------- limits


def _points(path: Sequence[Laurent]) -> list[Laurent]:
    return [Laurent(), *path, Laurent.const(1)]


def check_path(path: Sequence[Laurent]) -> None:
    """Every gap t_{i+1} - t_i must be positive for small e > 0."""
    pts = _points(path)
    for i, (a, b) in enumerate(zip(pts, pts[1:])):
        d = b - a
        if d.is_zero() or d.leading <= 0:
            raise PreconditionError(f"gap t_{i + 1} - t_{i} = {d} is not positive for small e")
        if b.terms and b.valuation < 0:
            raise PreconditionError(f"t_{i + 1} = {b} is unbounded as e -> 0")


def _sine_order(d: Laurent) -> tuple[bool, object]:
    """Behaviour of |sin(pi d)| as e -> 0+: (True, (order, |coef|)) when it vanishes, else (False, value)."""
    c0 = d.at_zero()
    if c0 in (-1, 0, 1):
        rest = d - Laurent.const(c0)
        if rest.is_zero():
            raise PreconditionError("two points coincide identically on the circle")
        return True, (rest.valuation, abs(rest.leading))
    # |sin(pi c)| depends only on the distance from c to the nearest integer;
    # reducing exactly first keeps mirror-image limits bit-identical
    c = c0 % 1
    return False, math.sin(math.pi * float(min(c, 1 - c)))


def sine_ratio_limit(num: Laurent, den: Laurent) -> Value:
    vn, a = _sine_order(num)
    vd, b = _sine_order(den)
    if vn and vd:
        (on, cn), (od, cd) = a, b  # type: ignore[misc]
        if on > od:
            return Fraction(0)
        if on < od:
            return INF
        return cn / cd
    if vn:
        return Fraction(0)
    if vd:
        return INF
    return a / b  # type: ignore[operator]


def path_limit(path: Sequence[Laurent], kind: str) -> AmbientPoint:
    if kind not in KINDS:
        raise PolyfacesError(f"chart kind must be one of {KINDS}")
    check_path(path)
    n = len(path)
    x = _points(path)
    t0 = tuple(p.at_zero() for p in path)
    if kind == "beta":
        table = {
            (k, l, m): sine_ratio_limit(x[l] - x[k], x[m] - x[k])
            for k, l, m in itertools.permutations(range(n + 1), 3)
        }
        return AmbientPoint("beta", n, t0, table)
    table = {
        (i, j, k): ratio_limit(x[j] - x[i], x[k] - x[i])
        for i, j, k in itertools.combinations(range(n + 2), 3)
    }
    ratios: Table = {}
    if kind == "gamma":
        ratios = {
            (i, j): ratio_limit(x[i], Laurent.const(1) - x[j])
            for i, j in itertools.combinations(range(1, n + 1), 2)
        }
    elif kind == "delta":
        ratios = {
            (i, j, k, l): ratio_limit(x[j] - x[i], x[l] - x[k])
            for i, j, k, l in itertools.combinations(range(n + 2), 4)
        }
    return AmbientPoint(kind, n, t0, table, ratios)


# ---------------------------------------------------------------- strata


def _nest(seq: Sequence[int], intervals: Sequence[tuple[int, int]]) -> Child:
    """Build a planar subtree on ``seq`` whose internal vertices are the given position intervals."""
    ivs = sorted(set(intervals), key=lambda ab: (ab[0], -ab[1]))
    for (a, b), (c, d) in itertools.combinations(ivs, 2):
        if not (b < c or d < a or (a <= c and d <= b) or (c <= a and b <= d)):
            raise InvariantError("limit pattern yields a laminar family of clusters", f"{(a, b)} vs {(c, d)}")

    def build(a: int, b: int) -> Child:
        if a == b:
            return seq[a]
        children: list[Child] = []
        pos = a
        while pos <= b:
            best = max(
                (iv for iv in ivs if iv[0] == pos and iv[1] <= b and iv != (a, b)),
                key=lambda iv: iv[1],
                default=None,
            )
            if best is None:
                children.append(seq[pos])
                pos += 1
            else:
                children.append(build(*best))
                pos = best[1] + 1
        return Node(tuple(children))

    return build(0, len(seq) - 1)


def _assoc_tree(S: Table, n: int) -> PlanarTree:
    m = n + 1
    ivs = [(0, m)]
    for a in range(0, m + 1):
        for b in range(a + 1, m + 1):
            if (a, b) == (0, m):
                continue
            left = a == 0 or S[(a - 1, a, b)] == 1
            right = b == m or S[(a, b, b + 1)] == 0
            if left and right:
                ivs.append((a, b))
    node = _nest(list(range(m + 1)), ivs)
    assert isinstance(node, Node)
    return PlanarTree(node)


def _verify_assoc(T: PlanarTree, S: Table) -> None:
    for (i, j, k), v in S.items():
        nij, njk = T.nadir(i, j), T.nadir(j, k)
        if nij != njk:
            want = Fraction(0) if len(nij) > len(njk) else Fraction(1)
            if v != want:
                raise InvariantError("limit pattern matches the face inclusion", f"s_{i}{j}{k} = {v}")
        elif v in (0, 1):
            raise InvariantError("limit pattern matches the face inclusion", f"s_{i}{j}{k} = {v}")


def _group_clusters(order: Sequence[int], St: Table) -> Child:
    m = len(order)
    ivs = [(0, m - 1)]
    for a in range(m):
        for b in range(a + 1, m):
            if (a, b) == (0, m - 1):
                continue
            left = a == 0 or St[(order[a - 1], order[a], order[b])] == 1
            right = b == m - 1 or St[(order[a], order[b], order[b + 1])] == 0
            if left and right:
                ivs.append((a, b))
    return _nest(list(order), ivs)


def _cycl_fan(t0: Sequence[Fraction], St: Table) -> Fan:
    n = len(t0)
    groups: dict[Fraction, list[int]] = {}
    for i in range(1, n + 1):
        pos = t0[i - 1] % 1
        groups.setdefault(pos, []).append(i)
    near_one = [i for i in range(1, n + 1) if t0[i - 1] == 1]
    near_zero = [i for i in groups.get(Fraction(0), []) if i not in near_one]
    trunk_order = near_one + [STAR] + near_zero
    root_children: list[Child] = [_group_clusters(trunk_order, St)]
    for pos in sorted(p for p in groups if p != 0):
        root_children.append(_group_clusters(groups[pos], St))
    return Fan(Node(tuple(root_children)))


def _verify_cycl(T: Fan, St: Table) -> None:
    for (i, j, k), v in St.items():
        nij, njk, nik = T.nadir(i, j), T.nadir(j, k), T.nadir(i, k)
        top = max(len(nij), len(njk), len(nik))
        if len(nij) == top and nij != njk:
            ok = v == 0
        elif len(njk) == top and njk != nij:
            ok = v == 1
        elif len(nik) == top and nik != nij:
            ok = v == INF
        else:
            ok = v != 0 and v != INF
        if not ok:
            raise InvariantError("limit pattern matches the face inclusion", f"stilde_{i}{j}{k} = {v}")


def _levels(T: PlanarTree, R: Table) -> LeveledTree:
    cl = clades(T.root)
    verts = list(T.internal_paths())
    span = {p: (min(cl[p]), max(cl[p])) for p in verts}
    parent = list(range(len(verts)))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    higher: list[tuple[int, int]] = []  # (u, v): u sits on a strictly higher level than v
    for (x, p), (y, q) in itertools.combinations(enumerate(verts), 2):
        if q[: len(p)] == p:
            higher.append((y, x))
        elif p[: len(q)] == q:
            higher.append((x, y))
        else:
            (a, b), (c, d) = span[p], span[q]
            if b > c:
                (a, b), (c, d), x, y = (c, d), (a, b), y, x
            v = R[(a, b, c, d)]
            if v == 0:
                higher.append((x, y))
            elif v == INF:
                higher.append((y, x))
            else:
                parent[find(x)] = find(y)
    below: dict[int, set[int]] = {}
    for u, v in higher:
        below.setdefault(find(u), set()).add(find(v))
    reps = sorted({find(i) for i in range(len(verts))})
    # close transitively, then rank classes by how many classes lie strictly below
    changed = True
    while changed:
        changed = False
        for r in reps:
            acc = set(below.get(r, set()))
            for s in list(acc):
                acc |= below.get(s, set())
            if acc != below.get(r, set()):
                below[r] = acc
                changed = True
    for r in reps:
        if r in below.get(r, set()):
            raise InvariantError("level comparisons are consistent", "cyclic comparison")
    for r, s in itertools.combinations(reps, 2):
        if s not in below.get(r, set()) and r not in below.get(s, set()):
            raise InvariantError("level comparisons are consistent", "incomparable levels")
    level = {r: len(below.get(r, set())) + 1 for r in reps}
    return LeveledTree(T, tuple(level[find(i)] for i in range(len(verts))))


def identify_stratum(path: Sequence[Laurent], space: str) -> Tree:
    """Face label of the open stratum the path converges into."""
    n = len(path)
    if space == "assoc":
        A = path_limit(path, "alpha")
        T = _assoc_tree(A.table, n)
        _verify_assoc(T, A.table)
        return T
    if space == "cycl":
        B = path_limit(path, "beta")
        F = _cycl_fan(B.t, B.table)  # type: ignore[arg-type]
        _verify_cycl(F, B.table)
        return F
    if space == "perm":
        D = path_limit(path, "delta")
        T = _assoc_tree(D.table, n)
        _verify_assoc(T, D.table)
        return _levels(T, D.ratios)
    raise PolyfacesError("space must be assoc, cycl or perm")


# ---------------------------------------------------------------- degenerating paths


def random_local(T: PlanarTree | Fan, rng: random.Random, denom: int = 97) -> dict[Path, tuple[Fraction, ...]]:
    """Random interior local configurations for every internal vertex."""
    fan = isinstance(T, Fan)
    out = {}
    for p, node in iter_internal(T.root):
        k = len(node) - 1 if (fan and not p) else len(node) - 2
        vals = sorted(rng.sample(range(1, denom), k))
        out[p] = tuple(Fraction(v, denom) for v in vals)
    return out


def _layout(node: Node, path: Path, x: Laurent, local: Mapping[Path, Sequence[Value]],
            scale: Callable[[Path], Laurent], out: dict[int, Laurent]) -> None:
    lam = scale(path)
    params = _edge_params(node, local[path])
    last = len(node.children) - 1
    for k, c in enumerate(node.children):
        anchor = x + lam.scale(params[k])
        if isinstance(c, int):
            out[c] = anchor
            continue
        cp = path + (k,)
        if k == last:
            anchor = x + lam - scale(cp)
        _layout(c, cp, anchor, local, scale, out)


def face_path(label: Tree, local: Mapping[Path, Sequence[Value]]) -> list[Laurent]:
    """A path degenerating into the face of ``label`` with limit data ``local``.

    Vertex clusters shrink like e^depth (e^(level-1) for leveled trees).
    """
    e = Laurent.monomial(1, 1)

    def power(k: int) -> Laurent:
        acc = Laurent.const(1)
        for _ in range(k):
            acc = acc * e
        return acc

    if isinstance(label, LeveledTree):
        if not isinstance(label.base, PlanarTree):
            raise PolyfacesError("leveled paths are built on Psi-tree bases")
        lv = label.level_map()
        scale = lambda p: power(lv[p] - 1)  # noqa: E731
        base: PlanarTree | Fan = label.base
    else:
        scale = lambda p: power(len(p))  # noqa: E731
        base = label
    out: dict[int, Laurent] = {}
    if isinstance(base, PlanarTree):
        _layout(base.root, (), Laurent(), local, scale, out)
        return [out[i] for i in range(1, base.n + 1)]
    # fans: root children sit at their circle positions, the trunk cluster is centred on *
    root_t = [Fraction(0), *local[()]]
    for k, c in enumerate(base.root.children):
        if isinstance(c, int):
            out[c] = Laurent.const(root_t[k])
            continue
        sub: dict[int, Laurent] = {}
        _layout(c, (k,), Laurent(), local, scale, sub)
        if k == 0:
            shift = sub[STAR]
            for leaf, pos in sub.items():
                y = pos - shift
                out[leaf] = y if y.is_zero() or y.leading > 0 else Laurent.const(1) + y
        else:
            for leaf, pos in sub.items():
                out[leaf] = Laurent.const(root_t[k]) + pos
    return [out[i] for i in range(1, base.n + 1)]
