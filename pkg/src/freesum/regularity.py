"""Regularity of triangulations via an exact height-function LP."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .complex import Triangulation
from .exact import barycentric
from .lp import maximize


@dataclass
class RegularityResult:
    regular: bool
    heights: tuple | None
    gap: Fraction

    def __bool__(self) -> bool:
        return self.regular


def _fold_row(t: Triangulation, cell: frozenset, apex: int, n: int) -> list[Fraction] | None:
    """Row of ``h[apex] - (lifted affine function of cell)(apex)``."""
    verts = sorted(cell)
    lam = barycentric(t.config.points[apex], t.points_of(cell))
    row = [Fraction(0)] * n
    row[apex] += 1
    for v, l in zip(verts, lam):
        row[v] -= l
    return row


def is_regular(t: Triangulation) -> RegularityResult:
    """Search heights making every interior fold strictly convex.

    Unused points must lie strictly above the lifted surface.  The strict
    inequalities share one gap variable ``g <= 1`` that is maximized; the
    triangulation is regular iff the optimum is positive.  Heights of the
    first cell's vertices are fixed to 0 to remove the affine gauge.
    """
    n = len(t.config)
    nv = n + 1  # heights, gap
    cons = []
    for r, cs in t.ridges.items():
        if len(cs) == 2:
            a, b = cs
            (apex,) = b - r
            row = _fold_row(t, a, apex, n)
            cons.append((row + [Fraction(-1)], ">=", 0))
    for p in range(n):
        if p in t.vertices:
            continue
        c, _ = t.locate(t.config.points[p])[0]
        row = _fold_row(t, c, p, n)
        cons.append((row + [Fraction(-1)], ">=", 0))
    for v in t.cells[0]:
        row = [Fraction(0)] * nv
        row[v] = Fraction(1)
        cons.append((row, "==", 0))
    cap = [Fraction(0)] * n + [Fraction(1)]
    cons.append((cap, "<=", 1))
    res = maximize(cap, cons)
    gap = res.value
    if gap > 0:
        return RegularityResult(True, res.point[:n], gap)
    return RegularityResult(False, None, gap)
