import itertools
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import CATALOG, CATALOG_IDS
from lgcy.geometry import WeightSystem, WeightSystemError, parse_weights, sector_table, weighted_monomial_count


def brute_count(weights, m):
    """Enumerate exponent vectors of the first N-1 variables; the last is forced."""
    if m < 0:
        return 0
    *head, last = weights
    ranges = [range(m // w + 1) for w in head]
    return sum(1 for e in itertools.product(*ranges)
               if (rest := m - sum(a * w for a, w in zip(e, head))) >= 0 and rest % last == 0)


def test_basic_data():
    q = parse_weights("1,1,1,1,1")
    assert (q.d, q.hc) == (5, 3)
    w = parse_weights("1,1,1,1,2")
    assert (w.d, w.hc) == (6, 3)


@pytest.mark.parametrize("text", ["1,1,3", "2,4", "0,1,1", "", "a,b"])
def test_rejects_bad_weights(text):
    with pytest.raises(WeightSystemError):
        parse_weights(text)


def test_catalog_names():
    assert parse_weights("quintic") == parse_weights("1,1,1,1,1")
    assert parse_weights("11114").weights == (1, 1, 1, 1, 4)


def test_sector_tables():
    t = sector_table(parse_weights("quintic"))
    assert t.narrow == (1, 2, 3, 4)
    assert t.frF == (Fraction(0),)
    assert t.conifold == Fraction(1, 3125)
    w = parse_weights("1,1,1,1,2")
    assert w.narrow == (1, 2, 4, 5)
    assert w.frF == (Fraction(0), Fraction(1, 2))
    assert w.fixed_count(3) == 1


@pytest.mark.parametrize("ws", CATALOG, ids=CATALOG_IDS)
def test_index_set_involutions(ws):
    assert 0 not in ws.narrow
    for k in range(1, ws.d):
        assert (k in ws.narrow) == ((ws.d - k) in ws.narrow)
    for f in ws.frF:
        assert ws.bar(f) in ws.frF
    v = Fraction(1)
    for w in ws.weights:
        v *= Fraction(w, ws.d) ** w
    assert ws.conifold == v


def test_monomial_counts():
    q = parse_weights("quintic")
    assert weighted_monomial_count(q, 1) == 5
    assert weighted_monomial_count(q, 5) == 126
    assert weighted_monomial_count(parse_weights("1,1,1,1,2"), 2) == 11


@given(st.sampled_from(CATALOG), st.integers(-3, 14))
def test_monomial_count_brute_force(ws, m):
    assert weighted_monomial_count(ws, m) == brute_count(ws.weights, m)


@given(st.lists(st.integers(1, 6), min_size=2, max_size=6))
def test_gorenstein_check(weights):
    d = sum(weights)
    from math import gcd
    from functools import reduce

    ok = all(d % w == 0 for w in weights) and reduce(gcd, weights) == 1
    if ok:
        assert WeightSystem(tuple(weights)).d == d
    else:
        with pytest.raises(WeightSystemError):
            WeightSystem(tuple(weights))
