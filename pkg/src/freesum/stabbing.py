"""The stabbing order on the full-dimensional cells of a triangulation.

``s`` precedes ``u`` when every hyperplane separating them keeps ``s`` on
the closed side of the origin and at least one separator misses the origin.
Geometrically: rays from the origin meet ``s`` before ``u``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations

from .complex import Triangulation, cell_key
from .exact import affine_hull_membership, relative_interior_point, segment_simplex_interval
from .lp import lp_feasible


class StabbingError(ValueError):
    """Raised when the computed relation fails to be a partial order."""

    def __init__(self, message: str, witness: tuple):
        super().__init__(f"{message}: {witness}")
        self.witness = witness


def _check_cells(t: Triangulation, s: frozenset, u: frozenset) -> None:
    if s not in t.index or u not in t.index:
        raise ValueError("both arguments must be full-dimensional cells of the triangulation")
    if s == u:
        raise ValueError("the stabbing comparison needs two distinct cells")


def _contains_origin(t: Triangulation, cell: frozenset) -> bool:
    return cell in t.origin_star_cells


@dataclass
class StabbingWitness:
    """Data from the decision tree: the ray point ``r`` and where it meets ``s``."""

    r: tuple
    entry: tuple  # the part of [0, r] inside s, as parameters (t0, t1)


def stabbing_step(t: Triangulation, s: frozenset, u: frozenset):
    """Run the decision tree; returns ``(answer, witness or None)``."""
    _check_cells(t, s, u)
    d = t.dim
    zero = (Fraction(0),) * d
    # origin in u (and so also origin in s & u): every separator is linear
    if _contains_origin(t, u):
        return False, None
    # every separator keeps s (which holds the origin) on the origin's side,
    # and the common face misses the origin, so some separator is affine
    if _contains_origin(t, s):
        return True, None
    shared = s & u
    if shared and affine_hull_membership(zero, t.points_of(shared)):
        return False, None
    r = relative_interior_point(t.points_of(s), t.points_of(u))
    if r is None:
        return False, None
    span = segment_simplex_interval(zero, r, t.points_of(s))
    if span is None:
        return False, None
    t0, t1 = span
    if t0 != t1:
        return True, StabbingWitness(r, span)
    if t0 != 1:
        return True, StabbingWitness(r, span)
    return False, None


def stabbing_compare_tree(t: Triangulation, s: frozenset, u: frozenset) -> bool:
    """Does ``s`` strictly precede ``u``?  Production path, no separation LPs."""
    return stabbing_step(t, frozenset(s), frozenset(u))[0]


def _separator(t: Triangulation, s: frozenset, u: frozenset, b: int) -> bool:
    """Is there ``a`` with ``a.x <= b`` on ``s`` and ``a.y >= b`` on ``u``?"""
    cons = [(list(p), "<=", b) for p in t.points_of(s)]
    cons += [(list(p), ">=", b) for p in t.points_of(u)]
    return bool(lp_feasible(cons))


def stabbing_compare_lp(t: Triangulation, s: frozenset, u: frozenset) -> bool:
    """Independent oracle built from separation LPs.

    A separator with offset 1 is strictly affine with ``s`` on the origin
    side; a feasible separator with offset -1 puts the origin strictly on
    ``u``'s side, which is forbidden.
    """
    s, u = frozenset(s), frozenset(u)
    _check_cells(t, s, u)
    return _separator(t, s, u, 1) and not _separator(t, s, u, -1)


class StabbingPoset:
    """The strict relation on cells with its Hasse diagram.

    ``less[i][j]`` means cell ``i`` strictly precedes cell ``j``.  Cells
    follow the triangulation's order.  ``relation`` keeps the pairwise
    comparisons as computed; ``less`` equals it unless the poset was built
    with ``closure=True``, in which case ``less`` is its transitive closure
    and ``intransitive`` holds a witness triple if closing changed anything.
    """

    def __init__(self, t: Triangulation, less: list[list[bool]], relation=None, intransitive=None):
        self.triangulation = t
        self.cells = t.cells
        self.less = less
        self.relation = relation if relation is not None else less
        self.intransitive = intransitive

    def __len__(self) -> int:
        return len(self.cells)

    def precedes(self, i: int, j: int) -> bool:
        return self.less[i][j]

    @cached_property
    def minimal(self) -> list[int]:
        n = len(self.cells)
        return [j for j in range(n) if not any(self.less[i][j] for i in range(n))]

    @cached_property
    def predecessors(self) -> list[frozenset]:
        n = len(self.cells)
        return [frozenset(i for i in range(n) if self.less[i][j]) for j in range(n)]

    @cached_property
    def hasse(self) -> list[tuple[int, int]]:
        n = len(self.cells)
        edges = []
        for i in range(n):
            for j in range(n):
                if self.less[i][j] and not any(self.less[i][k] and self.less[k][j] for k in range(n)):
                    edges.append((i, j))
        return edges

    @cached_property
    def linear_extension(self) -> list[int]:
        """Cells sorted by number of predecessors, ties by index."""
        return sorted(range(len(self.cells)), key=lambda j: (len(self.predecessors[j]), j))

    def to_dict(self) -> dict:
        out = {
            "cells": [list(cell_key(c)) for c in self.cells],
            "minimal": self.minimal,
            "hasse": [list(e) for e in self.hasse],
        }
        if self.intransitive:
            out["intransitive_witness"] = [list(w) for w in self.intransitive]
        return out


def _transitivity_witness(less: list[list[bool]]):
    n = len(less)
    for i in range(n):
        for j in range(n):
            if not less[i][j]:
                continue
            for k in range(n):
                if less[j][k] and not less[i][k]:
                    return i, j, k
    return None


def build_stabbing_poset(t: Triangulation, compare=stabbing_compare_tree, closure: bool = False) -> StabbingPoset:
    """Compare every ordered pair and check the result is a strict partial order.

    The relation can fail to be transitive (already in the plane).  By
    default that raises :class:`StabbingError` with a triple ``(a, b, c)``
    where ``a < b < c`` but not ``a < c``.  With ``closure=True`` the poset
    uses the transitive closure instead and records the triple; maps into
    an inclusion order preserve a relation iff they preserve its closure.
    """
    n = len(t.cells)
    rel = [[False] * n for _ in range(n)]
    for i, j in combinations(range(n), 2):
        a, b = t.cells[i], t.cells[j]
        rel[i][j] = compare(t, a, b)
        rel[j][i] = compare(t, b, a)
        if rel[i][j] and rel[j][i]:
            raise StabbingError("stabbing relation is not antisymmetric", (cell_key(a), cell_key(b)))
    bad = _transitivity_witness(rel)
    witness = tuple(cell_key(t.cells[x]) for x in bad) if bad else None
    if bad and not closure:
        raise StabbingError("stabbing relation is not transitive", witness)
    less = [row[:] for row in rel]
    if bad:
        for k in range(n):
            for i in range(n):
                if less[i][k]:
                    row_k = less[k]
                    less[i] = [x or y for x, y in zip(less[i], row_k)]
        for i in range(n):
            if less[i][i]:
                raise StabbingError("stabbing relation has a cycle", (cell_key(t.cells[i]),))
    poset = StabbingPoset(t, less, rel, witness)
    star = {t.index[c] for c in t.origin_star_cells}
    if set(poset.minimal) != star:
        raise StabbingError("minimal cells differ from the cells at the origin", tuple(sorted(poset.minimal)))
    return poset
