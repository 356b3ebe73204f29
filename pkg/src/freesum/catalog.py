"""Small worked configurations with known triangulations and webs."""

from __future__ import annotations

from itertools import permutations

from .complex import Triangulation
from .configuration import PointConfiguration, free_sum, interval
from .sumtri import SumError, construct_sum_triangulation
from .webs import WebOfStars

# -- the line: P = {-1, 0, 1, 2}, Q = {-1, 0, 1} -----------------------------

LINE_P = (-1, 0, 1, 2)
LINE_Q = (-1, 0, 1)


def line_pair() -> tuple[PointConfiguration, PointConfiguration]:
    return interval(LINE_P), interval(LINE_Q)


def segments(config: PointConfiguration, *cuts) -> Triangulation:
    """Triangulation of a configuration on the line by consecutive breakpoints (coordinates)."""
    idx = [config.index_of([c]) for c in cuts]
    return Triangulation(config, [(a, b) for a, b in zip(idx, idx[1:])])


def _by_coords(t: Triangulation, segs) -> list:
    cfg = t.config
    return [frozenset(cfg.index_of([x]) for x in s) for s in segs]


def line_cases() -> dict[str, dict]:
    """The six triangulations of ``{-1,0,1,2} (+) {-1,0,1}`` as sum data.

    Each case gives the summand triangulations, the pinned side and both
    webs as coordinate intervals mapped to lists of intervals.
    """
    whole_q = [(-1, 0), (0, 1)]
    return {
        "a": dict(p=(-1, 0, 1, 2), q=(-1, 0, 1), side="P",
                  alpha={(-1, 0): whole_q, (0, 1): whole_q, (1, 2): whole_q},
                  beta={(-1, 0): [], (0, 1): []}),
        "b": dict(p=(-1, 0, 2), q=(-1, 0, 1), side="P",
                  alpha={(-1, 0): whole_q, (0, 2): whole_q},
                  beta={(-1, 0): [], (0, 1): []}),
        "c": dict(p=(-1, 1, 2), q=(-1, 0, 1), side="P",
                  alpha={(-1, 1): whole_q, (1, 2): whole_q},
                  beta={(-1, 0): [], (0, 1): []}),
        "d": dict(p=(-1, 0, 1, 2), q=(-1, 1), side="Q",
                  alpha={(-1, 0): [], (0, 1): [], (1, 2): [(-1, 1)]},
                  beta={(-1, 1): [(-1, 0), (0, 1)]}),
        "e": dict(p=(-1, 2), q=(-1, 0, 1), side="P",
                  alpha={(-1, 2): whole_q},
                  beta={(-1, 0): [], (0, 1): []}),
        "f": dict(p=(-1, 0, 2), q=(-1, 1), side="Q",
                  alpha={(-1, 0): [], (0, 2): []},
                  beta={(-1, 1): [(-1, 0), (0, 2)]}),
    }


def line_case(label: str):
    """``(tp, tq, alpha, beta, side)`` for one of the six cases."""
    case = line_cases()[label]
    p, q = line_pair()
    tp = segments(p, *case["p"])
    tq = segments(q, *case["q"])

    def web(src, tgt, table):
        mapping = {frozenset(_by_coords(src, [k])[0]): _by_coords(tgt, v) for k, v in table.items()}
        return WebOfStars.from_cells(src, tgt, mapping)

    return tp, tq, web(tp, tq, case["alpha"]), web(tq, tp, case["beta"]), case["side"]


# -- the hexagon and the 3x3 grid -------------------------------------------

HEXAGON_P = [(1, 0), (0, 1), (-1, 1), (-1, 0), (1, -1), (0, 0)]
GRID_Q = [(-1, -1), (0, -1), (1, -1), (-1, 0), (0, 0), (1, 0), (-1, 1), (0, 1), (1, 1)]

# sigma_2 holds the origin; the other two share the apex (0, 1)
_HEX_SIGMAS = {
    "s1": ((0, 1), (-1, 1), (-1, 0)),
    "s2": ((0, 1), (-1, 0), (1, -1)),
    "s3": ((0, 1), (1, -1), (1, 0)),
}
# tau_2 holds the origin
_GRID_TAUS = {
    "t1": ((-1, -1), (0, 1), (-1, 1)),
    "t2": ((-1, -1), (1, 0), (0, 1)),
    "t3": ((-1, -1), (1, -1), (1, 0)),
    "t4": ((1, 0), (1, 1), (0, 1)),
}
# images of the web from the hexagon into the grid
HEX_ALPHA = {"s1": ("t1", "t2", "t3"), "s2": ("t2",), "s3": ("t2", "t3", "t4")}


def hexagon_pair():
    return PointConfiguration(HEXAGON_P, name="hexagon"), PointConfiguration(GRID_Q, name="grid")


def _cell(config, coords) -> frozenset:
    return frozenset(config.index_of(c) for c in coords)


def hexagon_example(sigmas=None, taus=None):
    """``(tp, tq, alpha)`` for the hexagon/grid pair, with optional relabelling."""
    sigmas = sigmas or _HEX_SIGMAS
    taus = taus or _GRID_TAUS
    p, q = hexagon_pair()
    tp = Triangulation(p, [_cell(p, c) for c in sigmas.values()])
    tq = Triangulation(q, [_cell(q, c) for c in taus.values()])
    mapping = {_cell(p, sigmas[s]): [_cell(q, taus[t]) for t in ts] for s, ts in HEX_ALPHA.items()}
    return tp, tq, WebOfStars.from_cells(tp, tq, mapping)


def search_hexagon_labels():
    """Labellings of the outer cells for which the hexagon web is valid.

    The outer cells have no canonical names, so the cells away from the
    origin on each side are permuted and every labelling whose web builds a
    valid sum triangulation is returned.
    """
    good = []
    outer_s = [v for k, v in _HEX_SIGMAS.items() if k != "s2"]
    outer_t = [v for k, v in _GRID_TAUS.items() if k != "t2"]
    for ps in permutations(outer_s):
        sig = {"s1": ps[0], "s2": _HEX_SIGMAS["s2"], "s3": ps[1]}
        for pt in permutations(outer_t):
            tau = {"t1": pt[0], "t2": _GRID_TAUS["t2"], "t3": pt[1], "t4": pt[2]}
            tp, tq, alpha = hexagon_example(sig, tau)
            try:
                construct_sum_triangulation(tp, tq, alpha, side="P")
            except SumError:
                continue
            good.append((sig, tau))
    return good


# -- the non-regular example on {-2,...,2} ----------------------------------


def nonregular_example():
    """``(tp, tq, alpha)`` with P = Q = {-2,...,2}; the sum is not regular."""
    p = interval([-2, -1, 0, 1, 2])
    q = interval([-2, -1, 0, 1, 2])
    tp = segments(p, -2, -1, 0, 1, 2)
    tq = segments(q, -2, -1, 0, 1, 2)
    table = {
        (-2, -1): [(-1, 0), (0, 1), (1, 2)],
        (-1, 0): [(-1, 0), (0, 1)],
        (0, 1): [(-1, 0), (0, 1)],
        (1, 2): [(-2, -1), (-1, 0), (0, 1)],
    }
    mapping = {_by_coords(tp, [k])[0]: _by_coords(tq, v) for k, v in table.items()}
    return tp, tq, WebOfStars.from_cells(tp, tq, mapping)


def nonregular_sum():
    tp, tq, alpha = nonregular_example()
    return construct_sum_triangulation(tp, tq, alpha, side="P", config=free_sum(tp.config, tq.config))
