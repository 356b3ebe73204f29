import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from freesum.configuration import (
    ConfigurationError,
    PointConfiguration,
    cross,
    dp,
    dp_minus,
    free_sum,
    interval,
)

from conftest import random_interval, random_planar


def test_generators_have_expected_sizes():
    assert len(cross(4)) == 9
    assert len(dp(2)) == 7
    assert len(dp(4)) == 11
    assert len(dp_minus(4)) == 10
    for c in (cross(3), dp(2), dp_minus(4)):
        assert c.has_interior_origin
        assert c.points[c.origin_index] == (0,) * c.dim


def test_rejects_bad_input():
    with pytest.raises(ConfigurationError):
        PointConfiguration([])
    with pytest.raises(ConfigurationError):
        PointConfiguration([[1, 0], [1, 0], [0, 1]])
    with pytest.raises(ConfigurationError):
        PointConfiguration([[1, 0], [2, 0]])
    with pytest.raises(ConfigurationError):
        PointConfiguration([[1, 0], [0]])
    with pytest.raises(TypeError):
        PointConfiguration([[0.5]])


def test_interior_origin():
    assert interval([-1, 0, 1]).has_interior_origin
    assert not interval([0, 1, 2]).has_interior_origin
    # origin on an edge of the hull is not interior
    assert not PointConfiguration([[0, 0], [1, 0], [-1, 0], [0, 1]]).has_interior_origin
    # the origin has to be one of the points
    assert not PointConfiguration([[1, 0], [-1, 1], [-1, -1]]).has_interior_origin
    assert PointConfiguration([[1, 0], [-1, 1], [-1, -1], [0, 0]]).has_interior_origin


def test_free_sum_requires_interior_origins():
    with pytest.raises(ConfigurationError):
        free_sum(interval([0, 1]), interval([-1, 0, 1]))


def test_free_sum_layout():
    p = interval([-1, 0, 1, 2])
    q = interval([1, 0, -1])
    s = free_sum(p, q)
    assert len(s) == 6 and s.dim == 2
    assert s.points[:4] == tuple((Fraction(x), 0) for x in (-1, 0, 1, 2))
    assert s.q_index == (4, 1, 5)
    assert s.points[s.q_index[0]] == (0, 1)
    assert [s.side(i) for i in range(6)] == ["P", "0", "P", "P", "Q", "Q"]
    assert s.has_interior_origin


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_free_sum_embeds_both_summands(seed):
    rng = random.Random(seed)
    p = random_interval(rng) if rng.random() < 0.5 else random_planar(rng)
    q = random_interval(rng) if rng.random() < 0.5 else random_planar(rng)
    s = free_sum(p, q)
    assert len(s) == len(p) + len(q) - 1
    assert s.dim == p.dim + q.dim
    for i, x in enumerate(p.points):
        assert s.points[s.p_index[i]] == tuple(x) + (0,) * q.dim
    for j, y in enumerate(q.points):
        assert s.points[s.q_index[j]] == (0,) * p.dim + tuple(y)
    assert s.p_index[p.origin_index] == s.q_index[q.origin_index] == s.origin_index
