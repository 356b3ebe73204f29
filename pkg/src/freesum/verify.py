"""Independent validity checks for triangulations."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .complex import Triangulation, cell_key, on_hull_boundary
from .exact import hyperplane_through
from .lp import lp_feasible


@dataclass
class VerificationReport:
    proper_intersection: bool
    covering: bool
    ridges: bool
    bad_pairs: list = field(default_factory=list)
    covered_volume: Fraction = Fraction(0)
    hull_volume: Fraction = Fraction(0)
    bad_ridges: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.proper_intersection and self.covering and self.ridges

    def __bool__(self) -> bool:
        return self.ok

    @property
    def deficit(self) -> Fraction:
        return self.hull_volume - self.covered_volume

    @property
    def failures(self) -> list[str]:
        out = [f"cells {a} and {b} do not meet in a common face" for a, b in self.bad_pairs]
        if not self.covering:
            out.append(f"cell volumes sum to {self.covered_volume}, hull volume is {self.hull_volume}")
        out += [f"ridge {r}: {why}" for r, why in self.bad_ridges]
        return out

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "proper_intersection": self.proper_intersection,
            "covering": self.covering,
            "ridges": self.ridges,
            "covered_volume": str(self.covered_volume),
            "hull_volume": str(self.hull_volume),
            "failures": self.failures,
        }


def meet_properly(t: Triangulation, c1: frozenset, c2: frozenset) -> bool:
    """Do two full cells meet in their common face?

    Decided by searching a hyperplane containing the shared vertices with
    the remaining vertices of ``c1`` strictly on one side and those of
    ``c2`` strictly on the other.
    """
    shared = c1 & c2
    d = t.dim
    pts = t.config.points
    if len(shared) == d:
        h = hyperplane_through([pts[i] for i in sorted(shared)])
        (a,) = c1 - shared
        (b,) = c2 - shared
        return h.side(pts[a]) * h.side(pts[b]) < 0
    # variables (normal, offset)
    cons = []
    for i in shared:
        cons.append((list(pts[i]) + [-1], "==", 0))
    for i in c1 - shared:
        cons.append((list(pts[i]) + [-1], "<=", -1))
    for i in c2 - shared:
        cons.append((list(pts[i]) + [-1], ">=", 1))
    return bool(lp_feasible(cons))


def _bbox_apart(t: Triangulation, c1: frozenset, c2: frozenset) -> bool:
    """Cheap sufficient test for disjoint cells: separated along a coordinate axis."""
    if c1 & c2:
        return False
    pts = t.config.points
    for j in range(t.dim):
        a = [pts[i][j] for i in c1]
        b = [pts[i][j] for i in c2]
        if max(a) < min(b) or max(b) < min(a):
            return True
    return False


def hull_volume(config, order=None) -> Fraction:
    """Volume of conv(config) from a placing triangulation in reversed order."""
    from .placing import placing_triangulation

    order = list(reversed(range(len(config)))) if order is None else order
    return placing_triangulation(config, order).total_volume


def verify_triangulation(t: Triangulation, pairwise: bool = True) -> VerificationReport:
    """Pairwise proper intersection, exact volume covering and ridge matching."""
    bad_pairs = []
    if pairwise:
        for c1, c2 in combinations(t.cells, 2):
            if _bbox_apart(t, c1, c2):
                continue
            if not meet_properly(t, c1, c2):
                bad_pairs.append((cell_key(c1), cell_key(c2)))

    covered = t.total_volume
    hull = hull_volume(t.config)

    bad_ridges = []
    for r, cs in sorted(t.ridges.items(), key=lambda kv: cell_key(kv[0])):
        if len(cs) > 2:
            bad_ridges.append((cell_key(r), f"lies in {len(cs)} cells"))
        elif len(cs) == 1 and not on_hull_boundary(t, r):
            bad_ridges.append((cell_key(r), "in one cell but not on the hull boundary"))
        elif len(cs) == 2 and on_hull_boundary(t, r):
            bad_ridges.append((cell_key(r), "in two cells but on the hull boundary"))

    return VerificationReport(
        proper_intersection=not bad_pairs,
        covering=covered == hull,
        ridges=not bad_ridges,
        bad_pairs=bad_pairs,
        covered_volume=covered,
        hull_volume=hull,
        bad_ridges=bad_ridges,
    )
