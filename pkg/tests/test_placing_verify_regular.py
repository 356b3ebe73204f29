import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.spatial import ConvexHull

from freesum.complex import Triangulation
from freesum.configuration import PointConfiguration, cross, dp, interval
from freesum.exact import barycentric
from freesum.placing import placing_triangulation
from freesum.regularity import is_regular
from freesum.verify import verify_triangulation

from conftest import random_configuration, random_placing


def hull_volume_float(config):
    pts = np.array([[float(x) for x in p] for p in config.points])
    if config.dim == 1:
        return pts.max() - pts.min()
    return ConvexHull(pts).volume


def lower_envelope_holds(t, heights):
    """Every point off a cell is lifted strictly above that cell's affine interpolation."""
    h = [Fraction(x) for x in heights]
    for c in t.cells:
        verts = sorted(c)
        for i, p in enumerate(t.config.points):
            if i in c:
                continue
            lam = barycentric(p, t.points_of(c))
            if h[i] <= sum(l * h[v] for l, v in zip(lam, verts)):
                return False
    return True


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 3))
def test_placing_covers_the_hull(seed, dim):
    rng = random.Random(seed)
    c = random_configuration(rng, dim, rng.randint(dim + 1, 7), with_origin=False, interior_origin=False)
    t = random_placing(c, rng)
    report = verify_triangulation(t)
    assert report.ok, report.failures
    assert float(t.total_volume) == pytest.approx(hull_volume_float(c))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 3))
def test_placing_is_regular_with_valid_heights(seed, dim):
    rng = random.Random(seed)
    c = random_configuration(rng, dim, rng.randint(dim + 1, 7), with_origin=False, interior_origin=False)
    t = random_placing(c, rng)
    res = is_regular(t)
    assert res.regular and res.gap > 0
    assert lower_envelope_holds(t, res.heights)


def test_placing_order_matters():
    c = PointConfiguration([[0, 0], [2, 0], [0, 2], [2, 2], [1, 1]])
    with_center = placing_triangulation(c, [4, 0, 1, 2, 3])
    without = placing_triangulation(c, [0, 1, 2, 3, 4])
    assert len(with_center) == 4
    assert len(without) == 2  # the center lies on the diagonal and is skipped
    assert 4 not in without.vertices
    with pytest.raises(ValueError):
        placing_triangulation(c, [0, 0, 1, 2, 3])


def test_verify_catches_gaps_and_overlaps():
    c = interval([-1, 0, 1, 2])
    assert verify_triangulation(Triangulation(c, [(0, 1), (1, 2), (2, 3)])).ok
    gap = verify_triangulation(Triangulation(c, [(0, 1), (2, 3)]))
    assert not gap.ok and not gap.covering and gap.deficit == 1
    overlap = verify_triangulation(Triangulation(c, [(0, 2), (1, 3), (2, 3)]))
    assert not overlap.ok and not overlap.proper_intersection
    sq = PointConfiguration([[0, 0], [2, 0], [0, 2], [2, 2], [1, 1]])
    # both diagonals: volume is twice the hull, cells cross
    crossing = verify_triangulation(Triangulation(sq, [(0, 1, 3), (0, 2, 3), (0, 1, 2), (1, 2, 3)]))
    assert not crossing.ok and crossing.bad_pairs
    # a vertex of one cell in the relative interior of another's edge
    hanging = verify_triangulation(Triangulation(sq, [(0, 1, 4), (1, 3, 4), (2, 3, 4), (0, 2, 3)]))
    assert not hanging.ok
    assert "failures" in hanging.to_dict()


def test_twisted_triangles_have_two_non_regular_triangulations():
    # inner triangle inside an outer one: 18 triangulations, the two twisted ones are not regular
    from freesum.enumeration import brute_force_triangulations

    c = PointConfiguration([[0, 0], [12, 0], [6, 12], [4, 3], [8, 3], [6, 7]])
    ts = brute_force_triangulations(c)
    assert len(ts) == 18
    bad = [t for t in ts if not is_regular(t)]
    assert sorted(len(t) for t in bad) == [7, 7]
    twisted = Triangulation(c, [(0, 1, 3), (0, 2, 5), (0, 3, 5), (1, 2, 4), (1, 3, 4), (2, 4, 5), (3, 4, 5)])
    assert twisted in bad
    assert verify_triangulation(twisted).ok
    assert is_regular(twisted).heights is None


def test_unused_interior_point_must_sit_above():
    c = dp(2)
    t = placing_triangulation(c, [0, 1, 2, 3, 4, 5, 6])
    res = is_regular(t)
    assert res.regular
    assert lower_envelope_holds(t, res.heights)
    assert len(t.vertices) <= len(c)


def test_cross_polytope_triangulations_are_regular():
    from freesum.enumeration import brute_force_triangulations

    for t in brute_force_triangulations(cross(3), max_dim=3):
        assert verify_triangulation(t).ok
        assert is_regular(t)
