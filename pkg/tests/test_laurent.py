from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from polyfaces.errors import ParseError, PreconditionError
from polyfaces.laurent import INF, Laurent, format_path, parse_path, ratio_limit

e = Laurent.monomial(1, 1)
one = Laurent.const(1)


def test_parse():
    p = parse_path("e^2, e, 1-e, 1-e^2")
    assert p == [e * e, e, one - e, one - e * e]
    assert parse_path("1/2e")[0] == Laurent.monomial(Fraction(1, 2), 1)
    assert parse_path("2*e + 3")[0] == Laurent.from_dict({0: 3, 1: 2})
    assert parse_path("e^-1")[0].valuation == -1
    assert parse_path("") == []


@pytest.mark.parametrize("bad", ["e^", "1-", "e^x", "2*", "e,,e", "q"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_path(bad)


def test_limits():
    assert ratio_limit(e - e * e, one - e - e * e) == 0
    assert ratio_limit(e, e.scale(2)) == Fraction(1, 2)
    assert ratio_limit(one, e) == INF
    with pytest.raises(PreconditionError):
        ratio_limit(one, Laurent())
    with pytest.raises(PreconditionError):
        ratio_limit(-one, e)


coeffs = st.dictionaries(st.integers(-3, 3), st.fractions(max_denominator=9), max_size=4)


@given(coeffs, coeffs)
def test_ring_laws(a, b):
    p, q = Laurent.from_dict(a), Laurent.from_dict(b)
    assert p + q == q + p
    assert p * q == q * p
    assert (p - q) + q == p
    x = Fraction(1, 7)
    assert (p * q)(x) == p(x) * q(x)


@given(coeffs)
def test_format_roundtrip(a):
    p = Laurent.from_dict(a)
    assert parse_path(format_path([p])) == [p]
