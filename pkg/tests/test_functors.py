from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from polyfaces.errors import ParseError, PreconditionError
from polyfaces.functors import (
    fan_from_word,
    fiber_geq_poset,
    fiber_poset,
    format_word,
    functor_map,
    leveled_iso,
    leveled_iso_inverse,
    parse_word,
    pi,
    pi_double_prime,
    pi_prime,
    trunk_word,
)
from polyfaces.posets import chains, is_order_isomorphism
from polyfaces.trees import corolla, enumerate_levelizations, enumerate_trees, leaf_sequence, parse_tree
from polyfaces.words import word_poset, words

Y22 = parse_tree("(((0 1) 2) (3 (4 5)))")


def test_pi_corolla():
    for n in range(5):
        assert pi(corolla("phi", n)) == corolla("psi", n)


def test_pi_single_left_branch():
    Y = pi(parse_tree("<(* 1) 2>"))
    assert len(Y.leftmost_path()) == 1 and Y.rightmost_path() == []


def test_hexagon_to_pentagon_collapses_a_chain():
    F = functor_map("pi", 2)
    found = False
    for ch in chains(F.source):
        if len(ch) == 3 and len({F(x) for x in ch}) == 2:
            found = True
            break
    assert found


def test_forget_levels():
    assert str(pi_double_prime(parse_tree("((0 1)@2 2)@1"))) == "((0 1) 2)"
    lts = [lt for lt in enumerate_levelizations(parse_tree("((0 1) (2 3))")) if lt.height == 3]
    assert len(lts) == 2 and pi_double_prime(lts[0]) == pi_double_prime(lts[1])
    F = functor_map("pi-double-prime", 1)
    assert sorted(set(F.assignment)) == list(range(3))
    f = parse_tree("<(2 *)@2 1>@1")
    assert pi_prime(f) == parse_tree("<(2 *) 1>")


def test_leveled_iso():
    assert leveled_iso(parse_tree("<* 1 2>@1")) == parse_tree("(0 1 2 3)@1")
    for n in range(4):
        G = functor_map("leveled-iso", n)
        assert is_order_isomorphism(G.source, G.target, G.assignment)
        for y in G.target.items:
            assert leveled_iso(leveled_iso_inverse(y)) == y


def test_trunk_words():
    assert trunk_word(corolla("phi", 3)) == ()
    assert format_word(trunk_word(parse_tree("<(2 * 1)>"))) == "(ab)"
    f = fan_from_word(Y22, parse_word("ba(ab)"))
    assert format_word(trunk_word(f)) == "ba(ab)" and pi(f) == Y22


def test_fan_from_word():
    assert fan_from_word(corolla("psi", 2), ()) == corolla("phi", 2)
    fans = {fan_from_word(Y22, w) for w in words(2, 2)}
    assert len(fans) == 13 and all(pi(f) == Y22 for f in fans)
    Y = parse_tree("((0 1) 2)")
    assert len(fiber_poset(Y)) == 1 == len(words(1, 0))
    with pytest.raises(PreconditionError):
        fan_from_word(Y22, parse_word("ab"))


def test_parse_word():
    assert parse_word("ab(ab)") == ("a", "b", "(ab)")
    with pytest.raises(ParseError):
        parse_word("a(ba)")


def test_fibers():
    assert len(fiber_poset(corolla("psi", 3))) == 1
    Y = parse_tree("(((0 1) 2) 3 4)")  # two left-most vertices, no right-most
    Y21 = parse_tree("(((0 1) 2) (3 4))")
    P = fiber_poset(Y21)
    W = word_poset(2, 1)
    m = [W.index[format_word(trunk_word(f))] for f in P.items]
    assert is_order_isomorphism(P, W, m)
    assert len(fiber_poset(Y)) == 1
    assert fiber_geq_poset(Y22, corolla("phi", 4)).elements == fiber_poset(Y22).elements
    with pytest.raises(PreconditionError):
        fiber_geq_poset(corolla("psi", 2), parse_tree("<(2 * 1)>"))


def test_pi_monotone():
    for n in range(4):
        for name in ("pi", "pi-prime", "pi-double-prime"):
            assert functor_map(name, n).is_monotone()


@given(st.integers(0, 4), st.data())
def test_pi_preserves_leaf_order_and_roundtrips(n, data):
    f = data.draw(st.sampled_from(enumerate_trees("phi", n)))
    Y = pi(f)
    assert leaf_sequence(Y.root) == list(range(n + 2))
    assert fan_from_word(Y, trunk_word(f)) == f
    ell, r = len(Y.leftmost_path()), len(Y.rightmost_path())
    a = sum(x != "b" for x in trunk_word(f))
    b = sum(x != "a" for x in trunk_word(f))
    assert (a, b) == (ell, r)
