import random
from itertools import permutations
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from freesum.catalog import line_case
from freesum.configuration import cross, dp, dp_minus, free_sum, interval
from freesum.enumeration import brute_force_triangulations
from freesum.exact import rank, solve
from freesum.sumtri import construct_sum_triangulation
from freesum.symmetry import (
    SymmetryGroup,
    act_on_triangulation,
    automorphism_group,
    canonical_form,
    canonical_form_naive,
    closure,
    compose,
    inverse,
    orbit_representatives,
    product_group,
    side_preserving,
)
from freesum.webs import enumerate_proper_psum_webs



def linear_perms_brute(config):
    """All point permutations induced by a linear map, by trying every permutation."""
    pts = config.points
    d = config.dim
    basis = []
    for i, p in enumerate(pts):
        if rank([pts[j] for j in basis] + [p]) > len(basis):
            basis.append(i)
        if len(basis) == d:
            break
    out = []
    for perm in permutations(range(len(pts))):
        # the map is pinned by the images of the basis; solve for its rows
        rows = []
        for r in range(d):
            row = solve([list(pts[b]) for b in basis], [pts[perm[b]][r] for b in basis])
            rows.append(row)
        if all(tuple(sum(a * x for a, x in zip(row, p)) for row in rows) == pts[perm[i]] for i, p in enumerate(pts)):
            out.append(perm)
    return out


@pytest.mark.parametrize("config", [dp(2), cross(2), interval([-1, 0, 1, 2]), interval([-2, 0, 2])])
def test_group_matches_exhaustive_search(config):
    g = automorphism_group(config)
    assert sorted(g.elements) == sorted(linear_perms_brute(config))


def test_known_orders():
    assert automorphism_group(dp(2)).order == 12
    assert automorphism_group(dp(4)).order == 240
    for d in (2, 3, 4):
        assert automorphism_group(cross(d)).order == 2**d * factorial(d)
    assert automorphism_group(dp_minus(4)).order == 24


def test_elements_are_linear_and_closed():
    g = automorphism_group(dp(2))
    assert g.is_closed()
    for perm in g.elements:
        sym = g.symmetry(perm)
        for i, p in enumerate(g.config.points):
            assert sym.apply(p) == g.config.points[perm[i]]
        assert sym.apply((0, 0)) == (0, 0)
    gens = g.generator_perms
    assert len(gens) <= 3
    assert closure(gens, len(g.config)) == set(g.elements)
    a, b = g.elements[3], g.elements[7]
    assert compose(a, inverse(a)) == tuple(range(len(g.config)))
    assert compose(a, b) in g


def test_sum_group_contains_product():
    p, q = dp(2), interval([-1, 0, 1])
    fs = free_sum(p, q)
    gp, gq, gs = automorphism_group(p), automorphism_group(q), automorphism_group(fs)
    prod = product_group(gp, gq, fs)
    assert prod.order == gp.order * gq.order
    assert gs.order % prod.order == 0
    assert set(prod.elements) <= set(gs.elements)
    assert side_preserving(gs).order >= prod.order


def test_summand_swap_is_a_symmetry():
    fs = free_sum(dp(2), dp(2))
    gs = automorphism_group(fs)
    assert gs.order == 2 * 12 * 12
    assert side_preserving(gs).order == 144


def test_group_validation():
    c = interval([-1, 0, 1])
    with pytest.raises(ValueError):
        SymmetryGroup(c, [(1, 0, 2)])
    with pytest.raises(ValueError):
        SymmetryGroup(c, [(0, 1)])
    other = interval([-2, 0, 2])
    t = brute_force_triangulations(other)[0]
    with pytest.raises(ValueError):
        canonical_form(t, automorphism_group(c))


def test_orbits_of_hexagon_triangulations():
    c = dp(2)
    g = automorphism_group(c)
    ts = brute_force_triangulations(c)
    assert len(ts) == 32
    reps = orbit_representatives(ts, g)
    assert len(reps) == 8
    # orbit sizes add up
    sizes = [len({canonical_form_naive(act_on_triangulation(r, h), SymmetryGroup(c, [tuple(range(len(c)))]))
                  for h in g.elements}) for r in reps]
    assert sum(sizes) == 32


def test_mirror_images_share_a_key():
    c = dp(2)
    g = automorphism_group(c)
    t = brute_force_triangulations(c)[5]
    for h in g.elements:
        assert canonical_form(act_on_triangulation(t, h), g) == canonical_form(t, g)
    trivial = SymmetryGroup(c, [tuple(range(len(c)))])
    assert canonical_form(t, trivial) == tuple(sorted(sum(1 << i for i in cell) for cell in t.cells))


def test_distinct_line_cases_have_distinct_keys():
    keys = set()
    for label in "abcdef":
        tp, tq, alpha, _, side = line_case(label)
        t = construct_sum_triangulation(tp, tq, alpha, side=side).triangulation
        keys.add(canonical_form(t, automorphism_group(t.config)))
    assert len(keys) == 6


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_vectorized_key_matches_reference(seed):
    rng = random.Random(seed)
    c = rng.choice([dp(2), cross(2), free_sum(interval([-1, 0, 1]), interval([-1, 0, 2, 1]))])
    g = automorphism_group(c)
    ts = brute_force_triangulations(c)
    t = rng.choice(ts)
    assert canonical_form(t, g) == canonical_form_naive(t, g)


def test_web_keys_match_reference_and_are_invariant():
    p = dp(2)
    q = interval([-1, 0, 1])
    fs = free_sum(p, q)
    gs = automorphism_group(fs)
    tq = brute_force_triangulations(q)[0]
    for tp in brute_force_triangulations(p)[:6]:
        for w in enumerate_proper_psum_webs(tp, tq):
            st = construct_sum_triangulation(tp, tq, w, config=fs)
            assert canonical_form(st, gs) == canonical_form_naive(st, gs)
