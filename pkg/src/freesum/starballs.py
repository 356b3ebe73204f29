"""Strictly star-shaped balls around the origin inside a triangulation.

A star ball is a set of full-dimensional cells whose union is a ball with
the origin in its interior such that every ray from the origin leaves the
ball exactly once.  Together with the empty set they form a poset under
inclusion.  Cell sets are handled as bitmasks over the triangulation's cell
indices.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .complex import ComplexError, Subcomplex, Triangulation, cell_key, facets_of
from .exact import affine_hull_membership, full_volume, segment_simplex_interval, vector


def cone_over(sub: Subcomplex) -> Subcomplex:
    """The cone with apex 0 over a subcomplex, as a complex of its own.

    Cells ``F + {origin}`` for each generator ``F``.  The result's parent is
    a new :class:`Triangulation`-like complex over the same configuration
    (it need not cover the hull).
    """
    parent = sub.parent
    config = parent.config
    if not sub.generators:
        return Subcomplex(parent, [])
    o = config.origin_index
    if o is None:
        raise ComplexError("cone degenerate: the configuration has no origin point")
    zero = config.points[o]
    cells = []
    for f in sub.generators:
        if o in f or affine_hull_membership(zero, [config.points[i] for i in sorted(f)]):
            raise ComplexError(f"cone degenerate: the origin lies in the affine hull of {cell_key(f)}")
        cells.append(f | {o})
    host = Triangulation(config, cells, check=False)
    return Subcomplex(host, cells)


class _CellData:
    """Per-triangulation tables for fast star-shape tests on bitmasks."""

    def __init__(self, t: Triangulation):
        self.t = t
        n = len(t.cells)
        d = t.dim
        zero = (Fraction(0),) * d
        self.n = n
        self.volume = [t.volume(c) for c in t.cells]
        ridge_id: dict[frozenset, int] = {}
        self.cell_ridges: list[list[int]] = []
        for c in t.cells:
            ids = []
            for f in facets_of(c):
                if f not in ridge_id:
                    ridge_id[f] = len(ridge_id)
                ids.append(ridge_id[f])
            self.cell_ridges.append(ids)
        self.ridges = [None] * len(ridge_id)
        for f, i in ridge_id.items():
            self.ridges[i] = f
        self.cone_volume: list[Fraction | None] = []
        for f in self.ridges:
            pts = t.points_of(f)
            if affine_hull_membership(zero, pts):
                self.cone_volume.append(None)
            else:
                self.cone_volume.append(full_volume([zero] + pts))
        self.neighbours = [0] * n
        for cs in t.ridges.values():
            for a, b in combinations(cs, 2):
                i, j = t.index[a], t.index[b]
                self.neighbours[i] |= 1 << j
                self.neighbours[j] |= 1 << i
        self.origin_mask = 0
        for c in t.origin_star_cells:
            self.origin_mask |= 1 << t.index[c]

    def connected(self, mask: int) -> bool:
        start = mask & -mask
        seen = start
        frontier = start
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            i = low.bit_length() - 1
            new = self.neighbours[i] & mask & ~seen
            seen |= new
            frontier |= new
        return seen == mask

    def boundary(self, mask: int) -> list[int]:
        count: dict[int, int] = defaultdict(int)
        m = mask
        while m:
            low = m & -m
            m ^= low
            for r in self.cell_ridges[low.bit_length() - 1]:
                count[r] += 1
        return [r for r, k in count.items() if k == 1]

    def is_star_ball(self, mask: int) -> bool:
        if not mask or mask & self.origin_mask != self.origin_mask:
            return False
        if not self.connected(mask):
            return False
        total = Fraction(0)
        for r in self.boundary(mask):
            v = self.cone_volume[r]
            if v is None:
                return False
            total += v
        vol = sum((self.volume[i] for i in _bits(mask)), Fraction(0))
        return total == vol


def _bits(mask: int) -> Iterable[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(t: Triangulation, cells: Iterable) -> int:
    """Bitmask of a set of cells given as vertex sets or cell indices."""
    m = 0
    for c in cells:
        i = c if isinstance(c, int) else t.index[frozenset(c)]
        m |= 1 << i
    return m


def cells_of(t: Triangulation, mask: int) -> list[frozenset]:
    return [t.cells[i] for i in _bits(mask)]


def _data(t: Triangulation) -> _CellData:
    data = t.__dict__.get("_star_tables")
    if data is None:
        data = t.__dict__["_star_tables"] = _CellData(t)
    return data


def is_strictly_star_shaped(t: Triangulation, cells) -> bool:
    """Is the union of ``cells`` a ball strictly star-shaped around the origin?

    Requires: the cells are ridge-connected, include every cell at the
    origin, no boundary facet spans an affine hull through the origin, and
    the cones from the origin over the boundary facets have total volume
    equal to the volume of the cells.  The cones always cover the union, so
    equality means they do not overlap, i.e. no ray leaves twice.
    """
    mask = cells if isinstance(cells, int) else mask_of(t, cells)
    return _data(t).is_star_ball(mask)


def _ray_end(t: Triangulation, direction: Sequence) -> tuple:
    """A point on the ray through ``direction`` beyond the hull of the configuration."""
    direction = vector(direction)
    reach = max(max(abs(x) for x in p) for p in t.config.points) + 1
    size = max(abs(x) for x in direction)
    return tuple(x * reach / size for x in direction)


def ray_crossings(t: Triangulation, cells, direction: Sequence) -> int:
    """Number of times the ray from 0 along ``direction`` leaves the union of ``cells``.

    The ray meets each cell in a parameter interval; the count is the number
    of connected pieces of their union.
    """
    mask = cells if isinstance(cells, int) else mask_of(t, cells)
    zero = (Fraction(0),) * t.dim
    end = _ray_end(t, direction)
    spans = []
    for c in cells_of(t, mask):
        iv = segment_simplex_interval(zero, end, t.points_of(c))
        if iv is not None:
            spans.append(iv)
    spans.sort()
    pieces = 0
    reach = None
    for lo, hi in spans:
        if reach is None or lo > reach:
            pieces += 1
            reach = hi
        else:
            reach = max(reach, hi)
    return pieces


class StarBallPoset:
    """All star balls of a triangulation plus the empty set, ordered by inclusion.

    ``masks`` lists cell bitmasks sorted by size then value; the empty set
    comes first and the whole triangulation last.
    """

    def __init__(self, t: Triangulation, masks: Iterable[int]):
        self.triangulation = t
        self.masks: list[int] = sorted(set(masks), key=lambda m: (bin(m).count("1"), m))
        self.position = {m: i for i, m in enumerate(self.masks)}

    def __len__(self) -> int:
        return len(self.masks)

    def __contains__(self, mask) -> bool:
        if not isinstance(mask, int):
            mask = mask_of(self.triangulation, mask)
        return mask in self.position

    def balls(self) -> list[list[frozenset]]:
        return [cells_of(self.triangulation, m) for m in self.masks]

    @cached_property
    def inclusion(self) -> list[list[bool]]:
        return [[a & b == a for b in self.masks] for a in self.masks]

    def to_dict(self) -> dict:
        t = self.triangulation
        return {
            "cells": [list(cell_key(c)) for c in t.cells],
            "balls": [sorted(_bits(m)) for m in self.masks],
        }


def _down_closed(mask: int, preds: list[int]) -> bool:
    return all(preds[i] & mask == preds[i] for i in _bits(mask))


def enumerate_star_balls(t: Triangulation, method: str = "frontier", poset=None) -> StarBallPoset:
    """All star balls of ``t``, plus the empty set.

    ``frontier`` grows sets from the cells at the origin by adding one cell
    at a time whose stabbing predecessors are already present; every
    nonempty star ball is closed under predecessors, so each one is reached
    through such sets and tested.  ``brute`` tests all supersets of the
    origin cells (at most 20 cells).
    """
    data = _data(t)
    n = data.n
    found = {0}
    if method == "brute":
        if n > 20:
            raise ValueError("brute-force star ball enumeration is limited to 20 cells")
        rest = [i for i in range(n) if not data.origin_mask >> i & 1]
        for k in range(len(rest) + 1):
            for extra in combinations(rest, k):
                m = data.origin_mask
                for i in extra:
                    m |= 1 << i
                if data.is_star_ball(m):
                    found.add(m)
        return StarBallPoset(t, found)
    if method != "frontier":
        raise ValueError(f"unknown method {method!r}")
    if poset is None:
        from .stabbing import build_stabbing_poset

        poset = build_stabbing_poset(t, closure=True)
    preds = [sum(1 << i for i in poset.predecessors[j]) for j in range(n)]
    start = data.origin_mask
    seen = {start}
    stack = [start]
    while stack:
        m = stack.pop()
        if data.is_star_ball(m):
            found.add(m)
        for j in range(n):
            bit = 1 << j
            if m & bit or preds[j] & m != preds[j]:
                continue
            nxt = m | bit
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return StarBallPoset(t, found)


def origin_star_mask(t: Triangulation) -> int:
    return _data(t).origin_mask


def ball_boundary(t: Triangulation, mask: int) -> list[frozenset]:
    """Boundary ridges of a set of cells, as vertex sets."""
    data = _data(t)
    return sorted((data.ridges[r] for r in data.boundary(mask)), key=cell_key)
