from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from polyfaces.charts import (
    INF,
    BlendConfig,
    blend_entry,
    blend_projection,
    chart,
    face_path,
    identify_stratum,
    include_face,
    parse_config,
    path_limit,
    random_local,
    s_variants,
    split_projection,
    tau_fiber_point,
)
from polyfaces.errors import PolyfacesError, PreconditionError
from polyfaces.functors import pi
from polyfaces.laurent import Laurent, parse_path
from polyfaces.trees import corolla, enumerate_trees, parse_tree

F = Fraction
e = Laurent.monomial(1, 1)


def test_alpha_table():
    p = chart("alpha", [F(1, 4), F(1, 2)])
    assert p.table == {(0, 1, 2): F(1, 2), (0, 1, 3): F(1, 4), (0, 2, 3): F(1, 2), (1, 2, 3): F(1, 3)}


def test_other_charts():
    b = chart("beta", [F(1, 4), F(1, 2)])
    assert abs(b.table[(0, 1, 2)] - 2 ** -0.5) < 1e-12
    d = chart("delta", [F(1, 4), F(1, 2)])
    assert d.ratios[(0, 1, 2, 3)] == F(1, 2)
    g = chart("gamma", [F(1, 4), F(1, 2)])
    assert g.ratios[(1, 2)] == F(1, 2)


@pytest.mark.parametrize("bad", [[F(1, 2), F(1, 4)], [F(0)], [F(1)], [F(1, 3), F(1, 3)]])
def test_chart_rejects_non_interior(bad):
    with pytest.raises(PreconditionError):
        chart("alpha", bad)


def test_parse_config():
    assert parse_config("1/4, 1/2") == (F(1, 4), F(1, 2))
    with pytest.raises(PolyfacesError):
        parse_config("1/4,x")


def test_s_variants():
    assert s_variants(F(1, 2)) == {"ikj": 2, "jik": 1, "jki": 1, "kij": 2, "kji": F(1, 2)}
    assert s_variants(F(0)) == {"ikj": INF, "jik": 0, "jki": INF, "kij": 1, "kji": 1}
    assert s_variants(F(1)) == {"ikj": 1, "jik": INF, "jki": 0, "kij": INF, "kji": 0}


def test_blend_examples():
    p = blend_projection(chart("beta", [F(1, 4), F(1, 2)]))
    assert abs(p.table[(0, 1, 2)] - 0.5) < 1e-12
    assert blend_entry(F(1, 3), F(1, 3), F(1, 3), F(0)) == 0
    assert abs(blend_entry(F(0), F(2, 7), F(1), None) - 2 / 7) < 1e-15


@given(st.integers(1, 6), st.sampled_from(["exp", "exp2"]), st.randoms(use_true_random=False))
def test_blend_identity(n, bump, rng):
    t = sorted(F(x, 10**6) for x in rng.sample(range(1, 10**6), n))
    a = chart("alpha", t)
    b = blend_projection(chart("beta", t), BlendConfig(bump))
    assert all(abs(float(v) - b.table[k]) <= 1e-12 for k, v in a.table.items())
    assert all(a.table[(0, j, n + 1)] == t[j - 1] for j in range(1, n + 1))


def test_split_and_tau():
    a, b = split_projection(chart("alpha", [F(1, 2)]), 1)
    assert a.table == {} and b.table == {}
    assert tau_fiber_point([], [], F(1, 2)).table == {(0, 1, 2): F(1, 2)}
    u, v = [F(1, 3)], [F(2, 5)]
    pts = []
    for k in range(11):
        p = tau_fiber_point(u, v, F(k, 10))
        x1, x2 = split_projection(p, 2)
        assert x1.table == chart("alpha", u).table and x2.table == chart("alpha", v).table
        pts.append(tuple(sorted(p.table.items())))
    assert len(set(pts)) == 11
    # the left block shrinks to a point at tau = 0
    T = parse_tree("((0 1 2) 3 4)")
    face = include_face("assoc", T, {(): (F(2, 5),), (0,): (F(1, 3),)})
    assert tau_fiber_point(u, v, 0).table == face.table


def test_include_face_examples():
    t = (F(1, 5), F(3, 7))
    assert include_face("assoc", corolla("psi", 2), {(): t}).table == chart("alpha", t).table
    T = parse_tree("(((0 1) 2) (3 (4 5)))")
    p = include_face("assoc", T, random_local(T, random.Random(0)))
    assert p.table[(0, 1, 5)] == 0 and p.table[(3, 4, 5)] == 1


def test_cycl_face_values_are_degenerate():
    f = parse_tree("<(* 1) 2>")  # * and 1 are closer to each other than to 2
    p = include_face("cycl", f, random_local(f, random.Random(0)))
    assert p.table[(0, 1, 2)] == 0 and p.table[(0, 2, 1)] == INF
    assert p.table[(2, 0, 1)] == 1


def test_path_limits():
    path = parse_path("e^2, e, 1-e, 1-e^2")
    lim = path_limit(path, "alpha")
    assert lim.table[(1, 2, 3)] == 0 and lim.table[(0, 1, 3)] == 0
    assert lim.table[(0, 2, 3)] == 0 and lim.table[(0, 1, 2)] == 0
    assert lim.table[(3, 4, 5)] == 1
    const = [Laurent.const(F(1, 4)), Laurent.const(F(1, 2))]
    assert path_limit(const, "alpha").table == chart("alpha", [F(1, 4), F(1, 2)]).table


def test_strata_examples():
    assert str(identify_stratum(parse_path("e^2, e, 1-e, 1-e^2"), "assoc")) == "(((0 1) 2) (3 (4 5)))"
    assert str(identify_stratum(parse_path("e, 2e, 1/2"), "assoc")) == "((0 1 2) 3 4)"
    assert str(identify_stratum(parse_path("e^2, 1-e"), "perm")) == "((0 1)@3 (2 3)@2)@1"
    with pytest.raises(PreconditionError):
        identify_stratum(parse_path("1-e, e"), "assoc")


@given(st.integers(0, 4), st.data(), st.randoms(use_true_random=False))
def test_stratum_roundtrip(n, data, rng):
    species, space = data.draw(st.sampled_from([("psi", "assoc"), ("phi", "cycl"), ("psi_level", "perm")]))
    label = data.draw(st.sampled_from(enumerate_trees(species, n)))
    base = getattr(label, "base", label)
    path = face_path(label, random_local(base, rng))
    assert identify_stratum(path, space) == label
    if space == "cycl":
        assert identify_stratum(path, "assoc") == pi(label)


@given(st.integers(0, 3), st.data(), st.randoms(use_true_random=False))
def test_include_face_is_path_limit(n, data, rng):
    T = data.draw(st.sampled_from(enumerate_trees("psi", n)))
    local = random_local(T, rng)
    assert include_face("assoc", T, local).table == path_limit(face_path(T, local), "alpha").table
