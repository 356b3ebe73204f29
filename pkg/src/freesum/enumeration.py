"""Exhaustive enumeration of all triangulations of tiny configurations."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from .complex import Triangulation, cell_key, facets_of, on_hull_boundary
from .configuration import PointConfiguration
from .exact import full_volume, hyperplane_through
from .verify import meet_properly


class EnumerationLimitError(ValueError):
    pass


def brute_force_triangulations(
    config: PointConfiguration,
    limit: int | None = None,
    max_points: int = 10,
    max_dim: int = 2,
    mod_symmetry: bool = False,
) -> list[Triangulation]:
    """All triangulations of ``config``, regular or not, unused points allowed.

    Depth-first search: start with a simplex at the lexicographically least
    point (a vertex of every triangulation), then repeatedly close an open
    interior ridge with a compatible simplex on its far side.  Finished
    complexes are exactly the triangulations; duplicates are merged.  With
    ``mod_symmetry`` one representative per linear-symmetry orbit is kept.
    """
    n, d = len(config), config.dim
    if n > max_points or d > max_dim:
        raise EnumerationLimitError(
            f"configuration has {n} points in dimension {d}; brute force is limited to "
            f"{max_points} points and dimension {max_dim}. Enumerate externally and load the files instead"
        )
    pts = config.points
    simplices = [frozenset(s) for s in combinations(range(n), d + 1) if full_volume([pts[i] for i in s]) != 0]
    host = Triangulation(config, [simplices[0]])
    by_ridge: dict[frozenset, list[frozenset]] = {}
    for s in simplices:
        for f in facets_of(s):
            by_ridge.setdefault(f, []).append(s)

    @lru_cache(maxsize=None)
    def on_hull(ridge: frozenset) -> bool:
        return on_hull_boundary(host, ridge)

    @lru_cache(maxsize=None)
    def compatible(a: frozenset, b: frozenset) -> bool:
        return meet_properly(host, a, b)

    def far_side(ridge: frozenset, inside: frozenset, cand: frozenset) -> bool:
        h = hyperplane_through([pts[i] for i in sorted(ridge)])
        (a,) = inside - ridge
        (b,) = cand - ridge
        return h.side(pts[a]) * h.side(pts[b]) < 0

    start = min(range(n), key=lambda i: pts[i])
    found: set[tuple] = set()
    results: list[Triangulation] = []

    def rec(chosen: list[frozenset], count: dict[frozenset, int]):
        if limit is not None and len(results) >= limit:
            return
        open_ridges = [r for r, k in count.items() if k == 1 and not on_hull(r)]
        if not open_ridges:
            key = tuple(sorted(cell_key(c) for c in chosen))
            if key not in found:
                found.add(key)
                results.append(Triangulation(config, chosen, check=False))
            return
        r = min(open_ridges, key=cell_key)
        (inside,) = [c for c in chosen if r <= c]
        for s in by_ridge[r]:
            if s in chosen or not far_side(r, inside, s):
                continue
            if not all(compatible(*sorted((s, c), key=cell_key)) for c in chosen):
                continue
            for f in facets_of(s):
                count[f] = count.get(f, 0) + 1
            chosen.append(s)
            rec(chosen, count)
            chosen.pop()
            for f in facets_of(s):
                count[f] -= 1
                if not count[f]:
                    del count[f]

    for s in simplices:
        if start in s:
            rec([s], {f: 1 for f in facets_of(s)})

    results.sort(key=lambda t: [cell_key(c) for c in t.cells])
    if mod_symmetry:
        from .symmetry import automorphism_group, orbit_representatives

        results = orbit_representatives(results, automorphism_group(config))
    return results
