from __future__ import annotations

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from polyfaces import oracles
from polyfaces.errors import CapExceeded, ParseError, PolyfacesError
from polyfaces.trees import (
    Fan,
    LeveledTree,
    PlanarTree,
    all_contractions,
    contract,
    corolla,
    enumerate_levelizations,
    enumerate_trees,
    is_geq,
    iter_internal,
    leaf_sequence,
    parse_tree,
)


def test_parse_examples():
    t = parse_tree("((0 1) 2)")
    assert isinstance(t, PlanarTree) and t.n == 1
    assert len(t.root.children) == 2
    f = parse_tree("<* 1 2>")
    assert isinstance(f, Fan) and f == corolla("phi", 2)
    lt = parse_tree("((0 1)@2 2)@1")
    assert isinstance(lt, LeveledTree)
    assert lt.level_map() == {(): 1, (0,): 2}


@pytest.mark.parametrize("bad", ["", "(0 1", "(0 2 1)", "((0) 1 2)", "(0 1 2))", "<1 *>x", "(0 1)@"])
def test_parse_rejects(bad):
    with pytest.raises(PolyfacesError):
        parse_tree(bad)


def test_parse_error_carries_position():
    with pytest.raises(ParseError) as e:
        parse_tree("(0 1 #)")
    assert e.value.position >= 0


def test_contract_examples():
    t = parse_tree("((0 1) 2)")
    assert str(contract(t, t.internal_edges())) == "(0 1 2)"
    c = parse_tree("(0 1 2)")
    assert contract(c, []) == c
    p = parse_tree("(((0 1) 2) 3)")
    edges = p.internal_edges()
    assert str(contract(p, edges)) == "(0 1 2 3)"
    # contracting one edge at a time in either order lands in the same place
    assert contract(contract(p, [(0,)]), [(0,)]) == contract(p, edges)


def test_is_geq_examples():
    assert is_geq(parse_tree("((0 1) 2)"), parse_tree("(0 1 2)"))
    t = parse_tree("((0 1) 2)")
    assert is_geq(t, t)
    assert not is_geq(parse_tree("((0 1) 2)"), parse_tree("(0 (1 2))"))


def test_enumeration_counts():
    assert [len(enumerate_trees("psi", n)) for n in range(1, 6)] == [3, 11, 45, 197, 903]
    assert len(enumerate_trees("phi", 2)) == 13
    assert len(enumerate_trees("phi", 0)) == 1
    assert len(enumerate_trees("psi_level", 2)) == 13
    for n in range(5):
        assert len(enumerate_trees("psi", n)) == oracles.psi_count(n)
        assert len(enumerate_trees("phi", n)) == oracles.phi_count(n)
        assert len(enumerate_trees("psi_level", n)) == oracles.fubini(n + 1)


def test_enumeration_is_sorted_and_unique():
    for sp in ("psi", "phi", "psi_level", "phi_level"):
        ts = enumerate_trees(sp, 3)
        names = [str(t) for t in ts]
        assert names == sorted(names) and len(set(names)) == len(names)


def test_leaf_order_invariants():
    for t in enumerate_trees("psi", 3):
        assert leaf_sequence(t.root) == list(range(5))
    for f in enumerate_trees("phi", 3):
        seq = leaf_sequence(f.root)
        k = seq.index(0)  # the marked leaf
        assert seq[k:] + seq[:k] == [0, 1, 2, 3]


def test_cap():
    with pytest.raises(CapExceeded):
        enumerate_trees("psi", 7)
    assert len(enumerate_trees("psi", 1, max_n=1)) == 3


def test_levelizations():
    assert len(enumerate_levelizations(parse_tree("(0 1 2)"))) == 1
    assert len(enumerate_levelizations(parse_tree("((0 1) (2 3))"))) == 3
    assert len(enumerate_levelizations(parse_tree("(((0 1) 2) 3)"))) == 1
    assert sum(len(enumerate_levelizations(t)) for t in enumerate_trees("psi", 2)) == 13


@given(st.integers(0, 3), st.data())
def test_roundtrip_format_parse(n, data):
    sp = data.draw(st.sampled_from(["psi", "phi", "psi_level", "phi_level"]))
    t = data.draw(st.sampled_from(enumerate_trees(sp, n)))
    assert parse_tree(str(t)) == t


@given(st.integers(0, 3), st.data())
def test_contractions_lie_below(n, data):
    t = data.draw(st.sampled_from(enumerate_trees("phi", n)))
    for c in all_contractions(t):
        assert is_geq(t, c)
        assert is_geq(c, corolla("phi", n))


def test_maximal_counts():
    for n in range(4):
        binaries = [t for t in enumerate_trees("psi", n) if all(len(v.children) == 2 for _, v in iter_internal(t.root))]
        assert len(binaries) == oracles.catalan(n + 1)
        assert oracles.phi_maximal(n) == math.comb(2 * n, n)
