import random
from fractions import Fraction

import pytest

from freesum.configuration import ConfigurationError, PointConfiguration, interval
from freesum.placing import placing_triangulation


def random_rational(rng, lo=-6, hi=6, den=3):
    return Fraction(rng.randint(lo, hi), rng.randint(1, den))


def random_configuration(rng, dim, n, with_origin=True, interior_origin=True, integral=False):
    """Random distinct points spanning R^dim, retried until the origin is interior."""
    if interior_origin and n < dim + 1 + with_origin:
        raise ValueError(f"{n} points cannot surround the origin in dimension {dim}")
    while True:
        pts = set()
        if with_origin:
            pts.add((Fraction(0),) * dim)
        while len(pts) < n:
            if integral:
                p = tuple(Fraction(rng.randint(-2, 2)) for _ in range(dim))
            else:
                p = tuple(random_rational(rng) for _ in range(dim))
            pts.add(p)
        pts = sorted(pts)
        rng.shuffle(pts)
        try:
            c = PointConfiguration(pts)
            if interior_origin and not with_origin and (Fraction(0),) * dim in pts:
                continue
        except ConfigurationError:
            continue
        if interior_origin:
            probe = c if with_origin else PointConfiguration(pts + [(Fraction(0),) * dim])
            if not probe.has_interior_origin:
                continue
        return c


def random_interval(rng):
    neg = rng.sample(range(-3, 0), rng.randint(1, 2))
    pos = rng.sample(range(1, 4), rng.randint(1, 2))
    vals = neg + [0] + pos
    rng.shuffle(vals)
    return interval(vals)


def random_planar(rng):
    return random_configuration(rng, 2, rng.randint(4, 6), integral=True)


def random_placing(config, rng):
    order = list(range(len(config)))
    rng.shuffle(order)
    return placing_triangulation(config, order)


@pytest.fixture
def rng():
    return random.Random(20261016)
