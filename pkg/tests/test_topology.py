from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from polyfaces.errors import PreconditionError
from polyfaces.functors import fiber_poset, functor_map
from polyfaces.posets import FinitePoset, PosetMap, SimplicialComplex, chains, face_poset, order_complex
from polyfaces.topology import (
    boundary_squares_to_zero,
    cofinality_report,
    comma_poset,
    contractibility,
    greedy_collapse,
    homology_ranks,
    prism_fiber_complex,
    verify_collapse,
)
from polyfaces.trees import parse_tree
from polyfaces.words import word_poset



def _K(maximal) -> SimplicialComplex:
    maximal = [tuple(m) for m in maximal]
    top = max((v for m in maximal for v in m), default=-1)
    return SimplicialComplex.from_maximal([str(v) for v in range(top + 1)], maximal)


def _rp2() -> SimplicialComplex:
    # six-vertex projective plane
    tri = [
        (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5),
        (1, 2, 4), (2, 3, 5), (1, 3, 4), (1, 3, 5), (2, 4, 5),
    ]
    return _K(tri)


def test_small_complexes():
    point = _K([(0,)])
    assert homology_ranks(point) == [0]
    circle = _K([(0, 1), (1, 2), (0, 2)])
    assert homology_ranks(circle, "Q") == [0, 1] == homology_ranks(circle, "F2")
    two_points = _K([(0,), (1,)])
    assert homology_ranks(two_points) == [1]


def test_torsion_is_seen_only_mod_2():
    K = _rp2()
    assert boundary_squares_to_zero(K)
    assert homology_ranks(K, "Q") == [0, 0, 0]
    assert homology_ranks(K, "F2") == [0, 1, 1]
    rep = contractibility(K)
    assert rep.acyclic_Q and not rep.acyclic_F2 and not rep.collapsible


def test_empty_complex_rejected():
    with pytest.raises(PreconditionError):
        homology_ranks(_K([]))


def test_simplex_and_cone_collapse():
    for d in range(5):
        K = _K([tuple(range(d + 1))])
        pairs = greedy_collapse(K)
        assert pairs is not None and verify_collapse(K, pairs)
    P = face_poset("psi", 2)  # has a minimum, so its order complex is a cone
    assert contractibility(order_complex(P)).collapsible


def test_word_poset_acyclic():
    rep = contractibility(order_complex(word_poset(2, 2)))
    assert rep.acyclic and rep.collapsible
    rep = contractibility(order_complex(fiber_poset(parse_tree("(((0 1) 2) (3 (4 5)))"))))
    assert rep.acyclic


def test_verify_collapse_rejects_bad_sequences():
    K = _K([(0, 1), (1, 2), (0, 2)])
    assert greedy_collapse(K) is None
    assert not verify_collapse(K, [((0,), (0, 1))])


def test_comma_posets():
    F = functor_map("pi", 2)
    assert len(comma_poset(F, "(0 1 2 3)")) == 13
    q = F.target.maximal()[0]
    C = comma_poset(F, q)
    assert set(C.elements) == {F.source.elements[x] for x in range(len(F.source)) if F(x) == q}
    P = face_poset("psi", 2)
    ident = PosetMap(P, P, list(range(len(P))), "id")
    for y in range(len(P)):
        assert set(comma_poset(ident, y).elements) == {P.elements[i] for i in P.up_set(y)}


@pytest.mark.parametrize("name,n,targets", [("pi", 1, 3), ("pi", 2, 11), ("pi-double-prime", 1, 3)])
def test_cofinality(name, n, targets):
    rep = cofinality_report(functor_map(name, n))
    assert len(rep.reports) == targets and rep.all_acyclic


def test_prism_examples():
    F = functor_map("pi", 2)
    bottom = F.target.index["(0 1 2 3)"]
    for y in range(len(F.target)):
        P = prism_fiber_complex(F, [y])
        chains_of_fiber = [c for c in chains(F.source.subposet(F.preimage(y)))]
        assert len(P) == len(chains_of_fiber)
        assert homology_ranks(order_complex(P)) == homology_ranks(order_complex(F.source.subposet(F.preimage(y))))
    top = F.target.maximal()[0]
    P = prism_fiber_complex(F, [bottom, top])
    assert contractibility(order_complex(P)).acyclic
    Q = face_poset("psi", 2)
    ident = PosetMap(Q, Q, list(range(len(Q))), "id")
    assert len(prism_fiber_complex(ident, [bottom, top])) == 1
    with pytest.raises(PreconditionError):
        prism_fiber_complex(F, [top, bottom])


@given(st.lists(st.tuples(st.integers(0, 6), st.integers(0, 6), st.integers(0, 6)), min_size=1, max_size=8))
def test_f2_and_q_agree_on_euler(tris):
    K = _K([tuple(sorted(set(t))) for t in tris])
    for coeffs in ("Q", "F2"):
        b = homology_ranks(K, coeffs)
        assert sum((-1) ** d * x for d, x in enumerate(b)) == K.euler_characteristic() - 1
    assert boundary_squares_to_zero(K)


@given(st.integers(1, 6), st.data())
def test_cone_is_acyclic(m, data):
    base = data.draw(st.lists(st.sets(st.integers(0, m - 1), min_size=1, max_size=3), min_size=1, max_size=6))
    K = _K([tuple(sorted(s | {m})) for s in base])
    rep = contractibility(K)
    assert rep.acyclic and rep.collapsible


def test_homology_of_poset_chain():
    P = FinitePoset.from_geq_pairs(list("abcd"), [(1, 0), (2, 1), (3, 2)])
    assert homology_ranks(order_complex(P)) == [0, 0, 0, 0]
    assert list(itertools.chain(order_complex(P).f_vector())) == [4, 6, 4, 1]
