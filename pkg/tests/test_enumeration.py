from itertools import combinations

import pytest

from freesum.configuration import PointConfiguration, cross, dp, interval
from freesum.enumeration import EnumerationLimitError, brute_force_triangulations
from freesum.exact import full_volume
from freesum.symmetry import automorphism_group, orbit_representatives
from freesum.verify import verify_triangulation


def subsets_oracle(config):
    """Triangulations as verified subsets of full-dimensional simplices."""
    n, d = len(config), config.dim
    simplices = [s for s in combinations(range(n), d + 1) if full_volume([config.points[i] for i in s]) != 0]
    from freesum.complex import Triangulation

    out = set()
    for k in range(1, len(simplices) + 1):
        for sub in combinations(simplices, k):
            t = Triangulation(config, sub, check=False)
            if verify_triangulation(t).ok:
                out.add(frozenset(t.cells))
    return out


@pytest.mark.parametrize(
    "config, count",
    [
        (interval([-1, 0, 1, 2]), 4),
        (interval([-1, 0, 1]), 2),
        (PointConfiguration([[1, 0], [0, 1], [-1, -1], [0, 0]]), 2),
        (cross(2), 3),
    ],
)
def test_counts_match_subset_oracle(config, count):
    ts = brute_force_triangulations(config)
    assert len(ts) == count
    assert {frozenset(t.cells) for t in ts} == subsets_oracle(config)


def test_hexagon_counts():
    ts = brute_force_triangulations(dp(2))
    assert len(ts) == 32
    assert all(verify_triangulation(t).ok for t in ts)
    reps = brute_force_triangulations(dp(2), mod_symmetry=True)
    assert len(reps) == len(orbit_representatives(ts, automorphism_group(dp(2))))


def test_limit_and_guard():
    assert len(brute_force_triangulations(dp(2), limit=5)) == 5
    with pytest.raises(EnumerationLimitError):
        brute_force_triangulations(interval(list(range(-6, 6))))
    with pytest.raises(EnumerationLimitError):
        brute_force_triangulations(cross(3))
    assert len(brute_force_triangulations(cross(3), max_dim=3)) == 4
