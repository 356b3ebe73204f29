import pytest

from freesum.complex import (
    ComplexError,
    Subcomplex,
    Triangulation,
    boundary,
    boundary_ridges,
    is_pseudomanifold,
    link,
    on_hull_boundary,
    restriction,
    star,
)
from freesum.configuration import PointConfiguration, dp, interval


@pytest.fixture
def hexagon_fan():
    """The six triangles of dp(2) around the origin."""
    c = dp(2)
    o = c.origin_index
    ring = [c.index_of(p) for p in [(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)]]
    cells = [(ring[i], ring[(i + 1) % 6], o) for i in range(6)]
    return Triangulation(c, cells)


def test_construction_checks():
    c = interval([-1, 0, 1])
    with pytest.raises(ComplexError):
        Triangulation(c, [])
    with pytest.raises(ComplexError):
        Triangulation(c, [(0, 1, 2)])
    with pytest.raises(ComplexError):
        Triangulation(c, [(0, 5)])
    c2 = PointConfiguration([[0, 0], [1, 1], [2, 2], [0, 1]])
    with pytest.raises(ComplexError):
        Triangulation(c2, [(0, 1, 2)])


def test_cells_are_sorted_and_comparable():
    c = interval([-1, 0, 1])
    a = Triangulation(c, [(2, 1), (0, 1)])
    b = Triangulation(c, [(1, 0), (1, 2)])
    assert a == b and hash(a) == hash(b)
    assert a.total_volume == 2


def test_star_and_link_at_origin(hexagon_fan):
    t = hexagon_fan
    o = t.config.origin_index
    assert t.origin_face == frozenset([o])
    st = star(t, (0, 0))
    assert len(st) == 6
    lk = link(t, (0, 0))
    assert lk.dim == 1 and len(lk) == 6
    assert lk.euler_characteristic() == 0  # a circle
    assert o not in lk.vertices


def test_star_of_point_inside_an_edge():
    c = PointConfiguration([[1, 0], [-1, 1], [-1, -1], [0, 1]])
    t = Triangulation(c, [(0, 1, 2)])
    assert t.minimal_face((0, 0)) == frozenset([0, 1, 2])
    c2 = PointConfiguration([[1, 0], [-1, 0], [0, 1], [0, -1]])
    t2 = Triangulation(c2, [(0, 1, 2), (0, 1, 3)])
    assert t2.origin_face == frozenset([0, 1])
    assert len(star(t2, (0, 0))) == 2
    assert link(t2, (0, 0)) == Subcomplex(t2, [[2], [3]])


def test_boundary_of_disk(hexagon_fan):
    b = boundary(hexagon_fan.full())
    assert len(b) == 6 and b.f_vector() == [6, 6]
    assert is_pseudomanifold(hexagon_fan.full()) == (True, True)
    assert is_pseudomanifold(b) == (True, False)
    assert all(on_hull_boundary(hexagon_fan, r) for r in b)
    assert len(boundary_ridges(hexagon_fan, hexagon_fan.cells)) == 6


def test_restriction_by_coordinates(hexagon_fan):
    upper = [[(0, 0), (1, 0), (1, 1), (0, 1), (-1, 0)]]
    # the region is not a simplex; use two triangles that cover the upper half
    region = [[(0, 0), (1, 0), (1, 1)], [(0, 0), (1, 1), (0, 1)], [(0, 0), (0, 1), (-1, 0)]]
    r = restriction(hexagon_fan, region)
    assert len(r) == 3
    assert upper  # documents the intended region


def test_faces_and_contains(hexagon_fan):
    s = hexagon_fan.full()
    assert len(s.faces(0)) == 7
    assert len(s.faces(1)) == 12
    assert s.f_vector() == [7, 12, 6]
    assert s.euler_characteristic() == 1
    assert frozenset() in s
