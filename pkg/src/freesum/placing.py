"""Placing (beneath-and-beyond) triangulations."""

from __future__ import annotations

from collections import defaultdict
from typing import Sequence

from .complex import Triangulation, facets_of
from .configuration import PointConfiguration
from .exact import Hyperplane, affine_rank, hyperplane_through


def _outward(config: PointConfiguration, facet: frozenset, inner: int) -> Hyperplane:
    """Hyperplane of ``facet`` oriented so that point ``inner`` is on the negative side."""
    pts = [config.points[i] for i in sorted(facet)]
    h = hyperplane_through(pts)
    if h.value(config.points[inner]) > 0:
        h = Hyperplane(tuple(-a for a in h.normal), -h.offset)
    return h


def placing_triangulation(config: PointConfiguration, order: Sequence[int] | None = None) -> Triangulation:
    """Insert points in ``order``, coning each to the boundary facets it sees.

    Points beneath every facet (inside the current hull) are skipped, so
    they stay unused.  The starting simplex is formed greedily: walking
    along ``order``, a point joins it when it raises the affine rank; the
    others are inserted afterwards in their original relative order.
    """
    d = config.dim
    order = list(range(len(config))) if order is None else [int(i) for i in order]
    if len(set(order)) != len(order):
        raise ValueError("insertion order repeats an index")
    start: list[int] = []
    rest: list[int] = []
    for i in order:
        if len(start) <= d and affine_rank([config.points[j] for j in start + [i]]) == len(start):
            start.append(i)
        else:
            rest.append(i)
    if len(start) != d + 1:
        raise ValueError("the ordered points do not span the ambient space")

    first = frozenset(start)
    cells = [first]
    hull: dict[frozenset, Hyperplane] = {}
    for f in facets_of(first):
        (opp,) = first - f
        hull[f] = _outward(config, f, opp)

    for p in rest:
        x = config.points[p]
        visible = [f for f, h in hull.items() if h.value(x) > 0]
        if not visible:
            continue
        horizon: dict[frozenset, list[frozenset]] = defaultdict(list)
        for f in visible:
            cells.append(f | {p})
            del hull[f]
            for r in facets_of(f):
                horizon[r].append(f)
        for r, fs in horizon.items():
            if len(fs) == 1:
                (inner,) = fs[0] - r
                g = r | {p}
                hull[g] = _outward(config, g, inner)
    return Triangulation(config, cells)
