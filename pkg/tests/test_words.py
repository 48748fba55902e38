from __future__ import annotations

from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from polyfaces.functors import format_word, functor_map, pi
from polyfaces.posets import is_order_isomorphism
from polyfaces.trees import corolla, enumerate_trees, parse_tree
from polyfaces.words import (
    census_retraction,
    cube_complex,
    f_embed,
    fusions,
    format_halves,
    level_product_decompose,
    levelization_poset,
    product_decompose,
    trunk_counts,
    word_cube_map,
    word_poset,
    words,
)

Y22 = parse_tree("(((0 1) 2) (3 (4 5)))")


def _covers(P):
    return {(P.elements[a], P.elements[b]) for a, b in P.covers}


def test_x21_hasse():
    P = word_poset(2, 1)
    assert len(P) == 5
    assert _covers(P) == {("aab", "a(ab)"), ("aba", "a(ab)"), ("aba", "(ab)a"), ("baa", "(ab)a")}


def test_word_poset_sizes():
    assert all(len(word_poset(0, r)) == 1 for r in range(5))
    ws = words(2, 2)
    by_fused = [sum(x == "(ab)" for x in w) for w in ws]
    assert len(ws) == 13 and [by_fused.count(k) for k in range(3)] == [6, 6, 1]


def test_embedding_examples():
    assert format_halves(f_embed("ab(ab)bbab")) == "(0, 3/2, 4)"
    assert f_embed("aab") == (0, 0) and f_embed("baa") == (1, 1)
    assert f_embed("a(ab)") == (0, Fraction(1, 2))


def test_cube_complexes():
    assert cube_complex(2, 2).f_vector() == (6, 6, 1)
    assert cube_complex(0, 0).f_vector() == (1,)
    assert cube_complex(2, 1).f_vector() == (3, 2)


def test_word_cube_iso():
    for ell in range(4):
        for r in range(4):
            m = word_cube_map(ell, r)
            assert is_order_isomorphism(word_poset(ell, r), cube_complex(ell, r).poset(), m)
            assert census_retraction(ell, r)


def test_levelization_poset():
    assert len(levelization_poset(corolla("psi", 3))) == 1
    P = levelization_poset(parse_tree("((0 1) (2 3))"))
    assert len(P) == 3 and len(P.maximal()) == 2 and len(P.minimal()) == 1


def test_product_decompose_examples():
    d = product_decompose(Y22, corolla("phi", 4))
    assert d.factors == [(2, 2)] and d.verified
    fan = functor_map("pi", 4)
    top = [fan.source.items[x] for x in fan.preimage(fan.target.index[str(Y22)])]
    maximal = [f for f in top if len(product_decompose(Y22, f).source) == 1]
    assert maximal
    for f in maximal:
        factors = product_decompose(Y22, f).factors
        # every trunk vertex receives letters of one kind only, so each factor is a point
        assert all(len(word_poset(*c)) == 1 for c in factors)
        assert sum(a + b for a, b in factors) == 4


def test_two_trunk_vertex_instance():
    F = functor_map("pi", 4)
    hit = False
    for x, f in enumerate(F.source.items):
        if len(f.trunk()) != 2:
            continue
        Y = F.target.items[F(x)]
        d = product_decompose(Y, f)
        nontrivial = [c for c in d.factors if c != (0, 0)]
        if len(nontrivial) >= 2:
            sizes = [len(word_poset(*c)) for c in d.factors]
            prod = 1
            for s in sizes:
                prod *= s
            assert prod == len(d.source) and d.verified
            hit = True
    assert hit


@given(st.integers(0, 3), st.data())
def test_trunk_counts_total(n, data):
    f = data.draw(st.sampled_from(enumerate_trees("phi", n)))
    Y = pi(f)
    counts = trunk_counts(Y, f)
    assert sum(c[0] for c in counts) == len(Y.leftmost_path())
    assert sum(c[1] for c in counts) == len(Y.rightmost_path())


@given(st.integers(0, 3), st.integers(0, 3), st.data())
def test_fusions_go_down(ell, r, data):
    P = word_poset(ell, r)
    w = data.draw(st.sampled_from(P.items))
    for v in fusions(w):
        assert P.lt(P.index[format_word(v)], P.index[format_word(w)])


def test_level_product():
    T = parse_tree("((0 1) (2 3))")
    low = parse_tree("(0 1 2 3)@1")
    d = level_product_decompose(T, low)
    assert d.verified and len(d.source) == 3
