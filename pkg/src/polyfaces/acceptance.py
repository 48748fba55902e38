"""The nine acceptance checks, shared by ``polyfaces verify`` and the test suite."""
from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import oracles
from .charts import (
    INF,
    BlendConfig,
    blend_projection,
    chart,
    face_path,
    identify_stratum,
    random_local,
    s_variants,
    split_projection,
    tau_fiber_point,
)
from .functors import (
    fan_from_word,
    fiber,
    fiber_geq,
    functor_map,
    leveled_iso_inverse,
    pi,
    trunk_word,
)
from .laurent import parse_path
from .posets import (
    chains,
    face_poset,
    format_partition,
    is_order_isomorphism,
    order_complex,
    partition_poset,
    falling_partition,
)
from .topology import comma_poset, contractibility, homology_ranks, prism_fiber_complex
from .trees import LeveledTree, enumerate_trees, is_geq
from .words import (
    cube_complex,
    level_product_decompose,
    levelization_poset,
    product_decompose,
    word_cube_map,
    word_poset,
)

SEED = 20240601


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        return f"criterion {self.number} [{'PASS' if self.passed else 'FAIL'}] {self.name} ({self.seconds:.1f}s)"

    def to_json(self) -> dict:
        return {
            "criterion": self.number,
            "name": self.name,
            "passed": self.passed,
            "seconds": round(self.seconds, 2),
            "detail": self.detail,
        }


class _Checker:
    """Collects named boolean checks and the first few failures."""

    def __init__(self) -> None:
        self.ok = True
        self.failures: list[str] = []
        self.counts: dict[str, int] = {}

    def check(self, cond: bool, what: str) -> bool:
        if not cond:
            self.ok = False
            if len(self.failures) < 10:
                self.failures.append(what)
        return cond

    def tally(self, key: str, k: int = 1) -> None:
        self.counts[key] = self.counts.get(key, 0) + k

    def detail(self, **extra) -> dict:
        return {**extra, **self.counts, "failures": self.failures}


# ---------------------------------------------------------------- 1


def criterion_1() -> CriterionResult:
    c = _Checker()
    psi = [len(enumerate_trees("psi", n)) for n in range(1, 6)]
    c.check(psi == [3, 11, 45, 197, 903], f"psi counts {psi}")
    c.check(psi == [oracles.psi_count(n) for n in range(1, 6)], "psi counts vs recursion")
    lev = [len(enumerate_trees("psi_level", n)) for n in range(1, 5)]
    c.check(lev == [3, 13, 75, 541], f"psi_level counts {lev}")
    c.check(lev == [oracles.fubini(n + 1) for n in range(1, 5)], "psi_level counts vs Fubini")
    phi = [len(enumerate_trees("phi", n)) for n in range(1, 5)]
    c.check(phi == [oracles.phi_count(n) for n in range(1, 5)], f"phi counts {phi} vs tubings")
    euler = {}
    for n in range(0, 5):
        for sp, want_max in (
            ("psi", oracles.catalan(n + 1)),
            ("phi", oracles.phi_maximal(n)),
            ("psi_level", math.factorial(n + 1)),
        ):
            P = face_poset(sp, n)
            c.check(len(P.maximal()) == want_max, f"{sp} n={n}: {len(P.maximal())} maxima, want {want_max}")
            c.check(len(P.minimal()) == 1, f"{sp} n={n}: minimum not unique")
            chi = order_complex(P).euler_characteristic()
            euler[f"{sp}:{n}"] = chi
            c.check(chi == 1, f"{sp} n={n}: Euler characteristic {chi}")
    return CriterionResult(1, "enumeration counts, maxima, Euler characteristics", c.ok,
                           c.detail(psi=psi, psi_level=lev, phi=phi))


# ---------------------------------------------------------------- 2


def criterion_2() -> CriterionResult:
    c = _Checker()
    for n in range(0, 4):
        G = functor_map("leveled-iso", n)
        c.check(is_order_isomorphism(G.source, G.target, list(G.assignment)), f"leveled iso n={n}")
        assert G.target.items is not None and G.source.items is not None
        back = [G.source.index[str(leveled_iso_inverse(y))] for y in G.target.items]
        c.check(all(back[G(i)] == i for i in range(len(G.source))), f"inverse n={n}")
        c.tally("leveled_iso_elements", len(G.source))
    for n in range(0, 5):
        P = face_poset("psi_level", n)
        Q = partition_poset(n + 1)
        assert P.items is not None
        m = [Q.index[format_partition(falling_partition(x))] for x in P.items]
        c.check(is_order_isomorphism(P, Q, m), f"falling-numbers map n={n}")
        c.tally("partition_elements", len(P))
    return CriterionResult(2, "leveled isomorphism and ordered-partition bijection", c.ok, c.detail())


# ---------------------------------------------------------------- 3


def criterion_3() -> CriterionResult:
    c = _Checker()
    for ell in range(5):
        for r in range(5):
            W = word_poset(ell, r)
            K = cube_complex(ell, r)
            m = word_cube_map(ell, r)
            c.check(sorted(m) == list(range(len(K.centers))), f"f not onto cube centres ({ell},{r})")
            c.check(is_order_isomorphism(W, K.poset(), m), f"cube order ({ell},{r})")
    for n in range(0, 5):
        F = functor_map("pi", n)
        assert F.target.items is not None and F.source.items is not None
        for y, Y in enumerate(F.target.items):
            ell, r = len(Y.leftmost_path()), len(Y.rightmost_path())
            Fy = fiber(F, y)
            W = word_poset(ell, r)
            assert Fy.items is not None
            m = [W.index["".join(trunk_word(f))] for f in Fy.items]
            ok = is_order_isomorphism(Fy, W, m)
            ok = ok and all(fan_from_word(Y, W.items[m[i]]) == f for i, f in enumerate(Fy.items))  # type: ignore[index]
            c.check(ok, f"fiber over {Y}")
            c.tally("fibers")
    fv = cube_complex(2, 2).f_vector()
    c.check(fv == (6, 6, 1), f"X_2,2 f-vector {fv}")
    return CriterionResult(3, "cube embedding and fibers as word posets", c.ok, c.detail(x22_f_vector=list(fv)))


# ---------------------------------------------------------------- 4


def _pairs(n: int):
    F = functor_map("pi", n)
    assert F.source.items is not None and F.target.items is not None
    for x, fan in enumerate(F.source.items):
        for y in F.target.up_set(F(x)):
            yield F.target.items[y], fan


def criterion_4() -> CriterionResult:
    c = _Checker()
    for n in range(0, 4):
        for Y, fan in _pairs(n):
            d = product_decompose(Y, fan)
            c.check(d.verified, f"product over ({Y}, {fan})")
            c.tally("pairs")
    rng = random.Random(SEED)
    pool = list(_pairs(4))
    for Y, fan in rng.sample(pool, 100):
        d = product_decompose(Y, fan)
        c.check(d.verified, f"product over ({Y}, {fan})")
        c.tally("random_pairs_n4")
    for sp in ("psi", "phi"):
        for n in range(0, 4):
            P = face_poset(sp + "_level", n)
            assert P.items is not None
            for T in enumerate_trees(sp, n):
                for low in P.items:
                    if _geq_base(T, low):
                        d = level_product_decompose(T, low)  # type: ignore[arg-type]
                        c.check(d.verified, f"level product over ({T}, {low})")
                        c.tally("level_pairs")
    return CriterionResult(4, "product decompositions are order isomorphisms", c.ok, c.detail())


def _geq_base(T, low: LeveledTree) -> bool:
    return is_geq(T, low.base)


# ---------------------------------------------------------------- 5


def criterion_5() -> CriterionResult:
    c = _Checker()
    collapsed = [0, 0]

    def run(P, what: str) -> None:
        rep = contractibility(order_complex(P))
        c.check(rep.acyclic_Q and rep.acyclic_F2, f"{what}: betti {rep.betti_Q} / {rep.betti_F2}")
        collapsed[0] += rep.method == "greedy"
        collapsed[1] += 1

    for n in range(0, 5):
        F = functor_map("pi", n)
        for y in range(len(F.target)):
            run(fiber(F, y), f"pi fiber n={n} over {F.target.elements[y]}")
            run(comma_poset(F, y), f"pi comma n={n} at {F.target.elements[y]}")
        for x in range(len(F.source)):
            for y in F.target.up_set(F(x)):
                run(fiber_geq(F, y, x), f"pi fiber over {F.target.elements[y]} above {F.source.elements[x]}")
    for name in ("pi-prime", "pi-double-prime"):
        for n in range(0, 4):
            F = functor_map(name, n)
            for y in range(len(F.target)):
                run(fiber(F, y), f"{name} fiber n={n} over {F.target.elements[y]}")
                run(comma_poset(F, y), f"{name} comma n={n} at {F.target.elements[y]}")
    for sp in ("psi", "phi"):
        for n in range(0, 4):
            P = face_poset(sp + "_level", n)
            assert P.items is not None
            for T in enumerate_trees(sp, n):
                run(levelization_poset(T), f"X_T for {T}")  # type: ignore[arg-type]
                for low in P.items:
                    if _geq_base(T, low):
                        d = level_product_decompose(T, low)  # type: ignore[arg-type]
                        run(d.source, f"levels on {T} above {low}")
    rate = collapsed[0] / collapsed[1]
    c.check(rate >= 0.9, f"greedy collapse rate {rate:.3f}")
    return CriterionResult(5, "fibers and comma posets are acyclic", c.ok,
                           c.detail(complexes=collapsed[1], greedy_collapsed=collapsed[0], collapse_rate=rate))


# ---------------------------------------------------------------- 6


def criterion_6() -> CriterionResult:
    c = _Checker()
    for n in range(0, 4):
        F = functor_map("pi", n)
        for ch in chains(F.target):
            if len(ch) - 1 > 3:
                continue
            P = prism_fiber_complex(F, ch)
            b = homology_ranks(order_complex(P), "Q"), homology_ranks(order_complex(P), "F2")
            c.check(not any(b[0]) and not any(b[1]), f"prism over {[F.target.elements[y] for y in ch]}: {b}")
            c.tally("chains")
    return CriterionResult(6, "prism fiber complexes are acyclic", c.ok, c.detail())


# ---------------------------------------------------------------- 7


def _random_config(rng: random.Random, n: int, denom: int = 10**6) -> list[Fraction]:
    return [Fraction(v, denom) for v in sorted(rng.sample(range(1, denom), n))]


def criterion_7(samples: int = 1000, tol: float = 1e-12) -> CriterionResult:
    c = _Checker()
    rng = random.Random(SEED)
    worst = 0.0
    cfg = BlendConfig()
    for n in range(0, 7):
        for _ in range(samples):
            t = _random_config(rng, n)
            a = chart("alpha", t)
            b = blend_projection(chart("beta", t), cfg)
            for k, v in a.table.items():
                worst = max(worst, abs(float(v) - b.table[k]))
            c.check(all(a.table[(0, j, n + 1)] == t[j - 1] for j in range(1, n + 1)), f"s_0j(n+1) != t_j at {t}")
    c.check(worst <= tol, f"blend deviation {worst:.3e}")
    grid = [Fraction(k, 99) for k in range(100)]
    for s in grid:
        v = s_variants(s)
        direct = _direct_variants(s)
        c.check(v == direct, f"variants at s={s}")
        c.check(1 - v["kji"] == s, f"i<->k swap twice at s={s}")
        c.check(v["ikj"] * s == 1 or s == 0, f"ikj * ijk at s={s}")
        c.check(v["jik"] * v["jki"] == 1 or s in (0, 1), f"jik * jki at s={s}")
        c.check(v["kij"] * v["kji"] == 1 or s == 1, f"kij * kji at s={s}")
    return CriterionResult(7, "chart identities", c.ok, c.detail(max_blend_deviation=worst, grid=len(grid)))


def _direct_variants(s: Fraction) -> dict:
    """|x_q - x_p| / |x_r - x_p| with x = (0, s, 1) read off directly."""
    x = {"i": Fraction(0), "j": s, "k": Fraction(1)}
    out = {}
    for name in ("ikj", "jik", "jki", "kij", "kji"):
        p, q, r = (x[ch] for ch in name)
        num, den = abs(q - p), abs(r - p)
        out[name] = INF if den == 0 else num / den
    return out


# ---------------------------------------------------------------- 8


def criterion_8(per_shape: int = 3) -> CriterionResult:
    c = _Checker()
    rng = random.Random(SEED)
    taus = [Fraction(k, 10) for k in range(11)]
    for r in range(1, 4):
        for ell in range(1, 4):
            for _ in range(per_shape):
                u = _random_config(rng, r - 1, 1000)
                v = _random_config(rng, ell - 1, 1000)
                x1, x2 = chart("alpha", u), chart("alpha", v)
                pts = []
                for tau in taus:
                    p = tau_fiber_point(u, v, tau)
                    a, b = split_projection(p, r)
                    c.check(a.table == x1.table and b.table == x2.table, f"split at r={r}, l={ell}, tau={tau}")
                    c.check(p.table[(0, r, r + ell)] == tau, f"tau coordinate at tau={tau}")
                    pts.append(tuple(sorted(p.table.items())))
                c.check(len(set(pts)) == len(taus), f"fiber points not distinct r={r} l={ell}")
                c.tally("fibers")
    return CriterionResult(8, "segment fibers of the split projection", c.ok, c.detail())


# ---------------------------------------------------------------- 9


def criterion_9(samples: int = 200) -> CriterionResult:
    c = _Checker()
    path = parse_path("e^2, e, 1-e, 1-e^2")
    Y = identify_stratum(path, "assoc")
    c.check(str(Y) == "(((0 1) 2) (3 (4 5)))", f"reference path gave {Y}")
    F = functor_map("pi", 4)
    fib = fiber(F, F.target.index[str(Y)])
    c.check(len(fib) == 13, f"fiber size {len(fib)}")
    rep = contractibility(order_complex(fib))
    c.check(rep.acyclic, f"fiber homology {rep.betti_Q}")
    rng = random.Random(SEED)
    for species, space in (("psi", "assoc"), ("phi", "cycl"), ("psi_level", "perm")):
        for _ in range(samples):
            n = rng.randint(0, 4)
            label = rng.choice(enumerate_trees(species, n))
            base = label.base if isinstance(label, LeveledTree) else label
            p = face_path(label, random_local(base, rng))  # type: ignore[arg-type]
            got = identify_stratum(p, space)
            c.check(got == label, f"{space}: {label} came back as {got}")
            if space == "cycl":
                c.check(identify_stratum(p, "assoc") == pi(label), f"assoc stratum of {label}")  # type: ignore[arg-type]
            c.tally(f"{space}_roundtrips")
    return CriterionResult(9, "stratum identification", c.ok, c.detail(reference_path_tree=str(Y), fiber_size=len(fib)))


CRITERIA: dict[int, Callable[[], CriterionResult]] = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
}

SUITES = {
    "posets": (1, 2),
    "fibers": (3, 4, 5, 6),
    "charts": (7, 8, 9),
    "all": tuple(range(1, 10)),
}


def run_criterion(k: int) -> CriterionResult:
    start = time.perf_counter()
    try:
        res = CRITERIA[k]()
    except Exception as exc:  # a crash is a failed criterion, reported with its cause
        res = CriterionResult(k, CRITERIA[k].__name__, False, {"exception": f"{type(exc).__name__}: {exc}"})
    res.seconds = time.perf_counter() - start
    return res


def run_suite(name: str, on_result: Callable[[CriterionResult], None] | None = None) -> list[CriterionResult]:
    out = []
    for k in SUITES[name]:
        res = run_criterion(k)
        if on_result:
            on_result(res)
        out.append(res)
    return out

