"""Triangulations of point configurations and their subcomplexes.

A simplex is a frozenset of point indices.  A :class:`Triangulation` stores
its full-dimensional cells; lower faces are implicit.  A :class:`Subcomplex`
is stored by its inclusion-maximal simplices.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .configuration import PointConfiguration
from .exact import affine_rank, barycentric, full_volume, hyperplane_through, vector

Simplex = frozenset


class ComplexError(ValueError):
    pass


def simplex(indices: Iterable[int]) -> frozenset:
    return frozenset(int(i) for i in indices)


def cell_key(cell: Iterable[int]) -> tuple:
    return tuple(sorted(cell))


def sorted_cells(cells: Iterable[Iterable[int]]) -> list[frozenset]:
    return [frozenset(k) for k in sorted({cell_key(c) for c in cells})]


def facets_of(cell: frozenset) -> list[frozenset]:
    return [cell - {v} for v in sorted(cell)]


class Triangulation:
    """Full-dimensional cells over a configuration.  Points may stay unused.

    Construction only checks that each cell has ``d+1`` affinely independent
    vertices; use :func:`freesum.verify.verify_triangulation` for the rest.
    """

    def __init__(self, config: PointConfiguration, cells: Iterable[Iterable[int]], check: bool = True):
        self.config = config
        self.cells: tuple[frozenset, ...] = tuple(sorted_cells(cells))
        if not self.cells:
            raise ComplexError("a triangulation needs at least one cell")
        if check:
            d, n = config.dim, len(config)
            for c in self.cells:
                if len(c) != d + 1:
                    raise ComplexError(f"cell {cell_key(c)} does not have {d + 1} vertices")
                if min(c) < 0 or max(c) >= n:
                    raise ComplexError(f"cell {cell_key(c)} has an index out of range")
                if self.volume(c) == 0:
                    raise ComplexError(f"cell {cell_key(c)} is degenerate")

    def __len__(self) -> int:
        return len(self.cells)

    def __iter__(self):
        return iter(self.cells)

    def __eq__(self, other) -> bool:
        return isinstance(other, Triangulation) and self.config == other.config and self.cells == other.cells

    def __hash__(self) -> int:
        return hash(self.cells)

    def __repr__(self) -> str:
        return f"Triangulation({[cell_key(c) for c in self.cells]})"

    @property
    def dim(self) -> int:
        return self.config.dim

    @cached_property
    def index(self) -> dict[frozenset, int]:
        return {c: i for i, c in enumerate(self.cells)}

    @cached_property
    def vertices(self) -> frozenset:
        return frozenset().union(*self.cells)

    def points_of(self, face: Iterable[int]) -> list:
        return [self.config.points[i] for i in sorted(face)]

    def volume(self, cell: Iterable[int]) -> Fraction:
        return full_volume(self.points_of(cell))

    @cached_property
    def total_volume(self) -> Fraction:
        return sum((self.volume(c) for c in self.cells), Fraction(0))

    @cached_property
    def ridges(self) -> dict[frozenset, list[frozenset]]:
        """Map each (d-1)-face to the cells containing it."""
        out: dict[frozenset, list[frozenset]] = defaultdict(list)
        for c in self.cells:
            for f in facets_of(c):
                out[f].append(c)
        return dict(out)

    @cached_property
    def adjacency(self) -> dict[frozenset, list[frozenset]]:
        """Cells sharing a ridge."""
        adj: dict[frozenset, list[frozenset]] = {c: [] for c in self.cells}
        for cs in self.ridges.values():
            for a, b in combinations(cs, 2):
                adj[a].append(b)
                adj[b].append(a)
        return adj

    def contains_face(self, face: Iterable[int]) -> bool:
        f = frozenset(face)
        return any(f <= c for c in self.cells)

    def locate(self, x: Sequence) -> list[tuple[frozenset, tuple]]:
        """Cells containing ``x`` with the barycentric coordinates of ``x``."""
        x = vector(x)
        out = []
        for c in self.cells:
            lam = barycentric(x, self.points_of(c))
            if lam is not None and all(t >= 0 for t in lam):
                out.append((c, lam))
        return out

    def minimal_face(self, x: Sequence) -> frozenset:
        """The unique face of the triangulation containing ``x`` in its relative interior."""
        hits = self.locate(x)
        if not hits:
            raise ComplexError("point not covered")
        c, lam = hits[0]
        verts = sorted(c)
        return frozenset(v for v, t in zip(verts, lam) if t > 0)

    @cached_property
    def origin_face(self) -> frozenset:
        return self.minimal_face([0] * self.dim)

    @cached_property
    def origin_star_cells(self) -> frozenset:
        """Full-dimensional cells containing the origin."""
        f = self.origin_face
        return frozenset(c for c in self.cells if f <= c)

    def full(self) -> "Subcomplex":
        return Subcomplex(self, self.cells)


class Subcomplex:
    """A face-closed set of simplices of a triangulation, kept by its maximal members."""

    def __init__(self, parent: Triangulation, generators: Iterable[Iterable[int]] = (), check: bool = False):
        self.parent = parent
        gens = {frozenset(g) for g in generators}
        maximal = [g for g in gens if not any(g < h for h in gens)]
        self.generators: tuple[frozenset, ...] = tuple(sorted_cells(maximal))
        if check:
            for g in self.generators:
                if not parent.contains_face(g):
                    raise ComplexError(f"{cell_key(g)} is not a face of the triangulation")

    def __eq__(self, other) -> bool:
        return isinstance(other, Subcomplex) and self.generators == other.generators

    def __hash__(self) -> int:
        return hash(self.generators)

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __bool__(self) -> bool:
        return bool(self.generators)

    def __repr__(self) -> str:
        return f"Subcomplex({[cell_key(g) for g in self.generators]})"

    def __contains__(self, face) -> bool:
        f = frozenset(face)
        return any(f <= g for g in self.generators)

    @property
    def dim(self) -> int:
        return max((len(g) - 1 for g in self.generators), default=-1)

    @property
    def is_pure(self) -> bool:
        return len({len(g) for g in self.generators}) <= 1

    def faces(self, k: int) -> set[frozenset]:
        """All k-dimensional faces."""
        out: set[frozenset] = set()
        for g in self.generators:
            if len(g) >= k + 1:
                out.update(frozenset(f) for f in combinations(sorted(g), k + 1))
        return out

    def f_vector(self) -> list[int]:
        return [len(self.faces(k)) for k in range(self.dim + 1)]

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.f_vector()))

    @property
    def vertices(self) -> frozenset:
        return frozenset().union(*self.generators) if self.generators else frozenset()

    def full_cells(self) -> frozenset:
        """Generators of full ambient dimension."""
        d = self.parent.dim
        return frozenset(g for g in self.generators if len(g) == d + 1)


def star_of_face(t: Triangulation, face: Iterable[int]) -> Subcomplex:
    f = frozenset(face)
    return Subcomplex(t, [c for c in t.cells if f <= c])


def link_of_face(t: Triangulation, face: Iterable[int]) -> Subcomplex:
    f = frozenset(face)
    return Subcomplex(t, [c - f for c in t.cells if f <= c and c != f])


def star(t: Triangulation, x: Sequence) -> Subcomplex:
    """Star of the minimal face containing the point ``x``."""
    return star_of_face(t, t.minimal_face(x))


def link(t: Triangulation, x: Sequence) -> Subcomplex:
    return link_of_face(t, t.minimal_face(x))


def boundary(s: Subcomplex) -> Subcomplex:
    """Codimension-one faces lying in exactly one generator, with their faces."""
    if not s.generators:
        return Subcomplex(s.parent, [])
    if not s.is_pure:
        raise ComplexError("boundary needs a pure subcomplex")
    count: dict[frozenset, int] = defaultdict(int)
    for g in s.generators:
        for f in facets_of(g):
            count[f] += 1
    return Subcomplex(s.parent, [f for f, n in count.items() if n == 1 and f])


def boundary_ridges(t: Triangulation, cells: Iterable[frozenset]) -> list[frozenset]:
    """(d-1)-faces of a set of full cells that lie in exactly one of them."""
    count: dict[frozenset, int] = defaultdict(int)
    for c in cells:
        for f in facets_of(c):
            count[f] += 1
    return sorted_cells(f for f, n in count.items() if n == 1)


def restriction(t: Triangulation, region) -> Subcomplex:
    """All cells of ``t`` inside ``region``.

    ``region`` is a :class:`Subcomplex` (of ``t`` or of another complex over
    points with coordinates) or a list of simplices given by coordinates; it
    is assumed to be a union of cells of ``t``, so a cell belongs to the
    region exactly when its barycenter does.
    """
    if isinstance(region, Subcomplex):
        if region.parent is t:
            return Subcomplex(t, region.generators)
        pts = region.parent.config.points
        polys = [[pts[i] for i in sorted(g)] for g in region.generators]
    elif isinstance(region, Triangulation):
        pts = region.config.points
        polys = [[pts[i] for i in sorted(g)] for g in region.cells]
    else:
        polys = [[vector(p) for p in g] for g in region]
    d = t.dim
    polys = [p for p in polys if affine_rank(p) == d]
    keep = []
    for c in t.cells:
        verts = t.points_of(c)
        bc = tuple(sum(col, Fraction(0)) / (d + 1) for col in zip(*verts))
        for poly in polys:
            lam = barycentric(bc, poly)
            if lam is not None and all(x >= 0 for x in lam):
                keep.append(c)
                break
    return Subcomplex(t, keep)


def on_hull_boundary(t: Triangulation, ridge: Iterable[int]) -> bool:
    """True iff the (d-1)-face lies in a supporting hyperplane of conv(config)."""
    pts = t.points_of(ridge)
    h = hyperplane_through(pts)
    sides = {h.side(p) for p in t.config.points} - {0}
    return len(sides) <= 1


def is_pseudomanifold(s: Subcomplex) -> tuple[bool, bool]:
    """``(is_pseudomanifold, has_boundary)`` for a pure complex.

    Each codimension-one face must lie in at most two generators; the
    complex has boundary iff some face lies in exactly one.
    """
    if not s.generators:
        return True, False
    if not s.is_pure:
        return False, False
    count: dict[frozenset, int] = defaultdict(int)
    for g in s.generators:
        for f in facets_of(g):
            count[f] += 1
    ok = all(n <= 2 for n in count.values())
    return ok, any(n == 1 for f, n in count.items() if f)
