from __future__ import annotations

import itertools

from hypothesis import given
from hypothesis import strategies as st

from polyfaces import oracles
from polyfaces.posets import (
    FinitePoset,
    face_poset,
    find_isomorphism,
    format_partition,
    hasse_dot,
    is_order_isomorphism,
    order_complex,
    ordered_partitions,
    partition_poset,
    product_poset,
    subposet_geq,
    falling_partition,
)
from polyfaces.trees import corolla, enumerate_trees, is_geq, parse_tree


def test_psi2_face_poset():
    P = face_poset("psi", 2)
    assert len(P) == 11
    assert [P.elements[i] for i in P.minimal()] == ["(0 1 2 3)"]
    assert len(P.maximal()) == 5
    assert order_complex(P).f_vector() == (11, 20, 10)
    assert len(P.covers) == 15


def test_phi1_is_a_v():
    P = face_poset("phi", 1)
    assert len(P) == 3 and len(P.maximal()) == 2 and len(P.minimal()) == 1
    assert len(P.covers) == 2


def test_small_order_complexes():
    K = order_complex(face_poset("psi", 1))
    assert K.f_vector() == (3, 2)
    one = FinitePoset.from_geq_pairs(["x"], [])
    assert order_complex(one).f_vector() == (1,)
    assert len(face_poset("psi_level", 1)) == 3


def test_subposet_geq():
    P = face_poset("psi", 2)
    assert len(subposet_geq(P, "(0 1 2 3)")) == 11
    for m in P.maximal():
        assert len(subposet_geq(P, m)) == 1
    two = [i for i, t in enumerate(P.items) if len(t.internal_paths()) == 2]
    assert all(len(subposet_geq(P, i)) == 3 for i in two)


def test_order_matches_is_geq():
    P = face_poset("phi", 2)
    for i, j in itertools.product(range(len(P)), repeat=2):
        assert P.leq(j, i) == is_geq(P.items[i], P.items[j])


def test_falling_partition_examples():
    assert format_partition(falling_partition(parse_tree("((0 1)@2 2)@1"))) == "({2}, {1})"
    for n in range(4):
        lt = parse_tree(str(corolla("psi", n)) + "@1")
        assert falling_partition(lt) == (frozenset(range(1, n + 2)),)
    P = face_poset("psi_level", 2)
    images = {format_partition(falling_partition(x)) for x in P.items}
    assert len(images) == 13 == len(ordered_partitions(3)) == oracles.ordered_partition_count_brute(3)


def test_partition_poset_iso():
    for n in range(4):
        P, Q = face_poset("psi_level", n), partition_poset(n + 1)
        m = [Q.index[format_partition(falling_partition(x))] for x in P.items]
        assert is_order_isomorphism(P, Q, m)


def test_hasse_dot():
    one = FinitePoset.from_geq_pairs(["x"], [])
    dot = hasse_dot(one)
    assert dot.count("->") == 0 and dot.count("label") == 1
    assert hasse_dot(face_poset("phi", 1)).count("->") == 2
    dot = hasse_dot(face_poset("psi", 2))
    assert dot.count("->") == 15 and dot.count("label") == 11
    assert dot == hasse_dot(face_poset("psi", 2))


def test_maxima_counts():
    for n in range(5):
        assert len(face_poset("psi", n).maximal()) == oracles.catalan(n + 1)
        assert len(face_poset("phi", n).maximal()) == oracles.phi_maximal(n)
    assert oracles.cycle_tubings(3) == (13, 6)


def test_product_and_find_isomorphism():
    V = face_poset("phi", 1)
    P = product_poset([V, V])
    assert len(P) == 9
    Q = product_poset([V, V])
    m = find_isomorphism(P, Q)
    assert m is not None and is_order_isomorphism(P, Q, m)
    assert find_isomorphism(face_poset("psi", 1), face_poset("psi", 2)) is None


@given(st.integers(0, 3), st.sampled_from(["psi", "phi", "psi_level"]))
def test_order_complex_is_contractible_by_euler(n, sp):
    assert order_complex(face_poset(sp, n)).euler_characteristic() == 1


@given(st.integers(0, 3), st.data())
def test_poset_axioms(n, data):
    P = face_poset(data.draw(st.sampled_from(["psi", "phi", "phi_level"])), n)
    a, b, c = (data.draw(st.integers(0, len(P) - 1)) for _ in range(3))
    assert P.leq(a, a)
    if P.leq(a, b) and P.leq(b, a):
        assert a == b
    if P.leq(a, b) and P.leq(b, c):
        assert P.leq(a, c)


def test_enumeration_matches_poset():
    for sp in ("psi", "phi"):
        assert [str(t) for t in enumerate_trees(sp, 3)] == list(face_poset(sp, 3).elements)
