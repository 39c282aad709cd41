import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from immcalc.stability import RangeQuery, stabilizer_orders, stabilizer_orders_json, stable_range


@pytest.mark.parametrize("dc,g,kind,mode,want", [
    ("dim3", 13, "closed", "epi", 4),
    ("dimAbove3", 3, "closed", "epi", 1),
    ("dimAbove3", 3, "alpha", "epi", 2),
    ("dimAbove3", 3, "alpha", "iso", 1),
    ("dim3", 3, "beta", "epi", 0),
    ("dim3", 3, "beta", "iso", -1),
    ("dim3", 3, "gamma", "iso", 0),
    ("dim3", 0, "closed", "epi", -1),
    ("dimAbove3", 0, "closed", "iso", -1),
])
def test_stable_range_values(dc, g, kind, mode, want):
    assert stable_range(RangeQuery(dc, g, kind, mode)) == want


kinds = st.sampled_from(["closed", "alpha", "beta", "gamma"])
dims = st.sampled_from(["dim3", "dimAbove3"])


@given(dims, kinds, st.integers(0, 500))
def test_range_properties(dc, kind, g):
    epi = stable_range(RangeQuery(dc, g, kind, "epi"))
    iso = stable_range(RangeQuery(dc, g, kind, "iso"))
    assert epi >= iso >= -1
    assert stable_range(RangeQuery(dc, g + 1, kind, "epi")) >= epi
    assert stable_range(RangeQuery(dc, g + 1, kind, "iso")) >= iso
    assert stable_range(RangeQuery("dim3", g)) <= stable_range(RangeQuery("dimAbove3", g))


@given(st.integers(0, 300))
def test_gamma_follows_beta_epi(g):
    for dc in ("dim3", "dimAbove3"):
        beta = stable_range(RangeQuery(dc, g, "beta", "epi"))
        assert stable_range(RangeQuery(dc, g, "gamma", "iso")) == beta
        assert stable_range(RangeQuery(dc, g, "gamma", "epi")) == beta


def test_closed_matches_fraction_floor():
    for g in range(40):
        assert stable_range(RangeQuery("dim3", g)) == max(math.floor(Fraction(2 * g - 6, 5)), -1)
        assert stable_range(RangeQuery("dimAbove3", g)) == max(math.floor(Fraction(2 * g - 3, 3)), -1)


def test_stabilizer_examples():
    assert stabilizer_orders(2) == {1: 2}
    assert stabilizer_orders(5) == {1: 5, 2: 3, 4: 2}
    assert set(stabilizer_orders(7)) == {1, 2, 3, 6}
    assert stabilizer_orders_json(5) == {"orders": [{"k": 1, "h": 5}, {"k": 2, "h": 3}, {"k": 4, "h": 2}]}
    with pytest.raises(ValueError):
        stabilizer_orders(1)


def _brute_orders(g):
    """k with k*(2-2h) = 2-2g for some h in 0..g, by direct search."""
    return {k for k in range(1, 2 * g) for h in range(0, g + 1) if k * (2 - 2 * h) == 2 - 2 * g}


@pytest.mark.parametrize("g", [2, 3, 4, 9, 12, 13, 25, 60])
def test_stabilizer_orders_brute_force(g):
    assert set(stabilizer_orders(g)) == _brute_orders(g)
    assert all((g - 1) % k == 0 for k in stabilizer_orders(g))
