"""Triangulations of free sums: assembling them from two summand
triangulations and a web of stars, and taking them apart again.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .complex import Triangulation, cell_key, restriction
from .configuration import FreeSum, free_sum
from .exact import barycentric
from .starballs import ball_boundary, mask_of
from .webs import (
    WebOfStars,
    complement_transpose,
    is_web_of_stars,
    satisfies_psum_condition,
)


class SumError(ValueError):
    pass


class CellSplit(NamedTuple):
    """Vertex sets of the two parts of a cell, in summand indices."""

    p: frozenset
    q: frozenset

    @property
    def dims(self) -> tuple[int, int]:
        return len(self.p) - 1, len(self.q) - 1


def split_cell(config: FreeSum, cell) -> CellSplit:
    """Split a simplex of the free sum into its P part and its Q part.

    A shared origin vertex belongs to both parts.
    """
    p = frozenset(config.p_of[i] for i in cell if i in config.p_of)
    q = frozenset(config.q_of[i] for i in cell if i in config.q_of)
    return CellSplit(p, q)


def join_cells(config: FreeSum, p_cell, q_cell) -> frozenset:
    """The free-sum simplex with the given summand vertex sets."""
    return frozenset(config.p_index[i] for i in p_cell) | frozenset(config.q_index[j] for j in q_cell)


@dataclass
class SumTriangulation:
    """A triangulation of ``P (+) Q`` together with how it was assembled.

    ``side`` is the summand whose web is pinned at the origin (``"P"`` or
    ``"Q"``).  ``alpha`` always maps cells of ``tp`` to cell sets of ``tq``,
    ``beta`` the other way.
    """

    triangulation: Triangulation
    side: str
    tp: Triangulation
    tq: Triangulation
    alpha: WebOfStars
    beta: WebOfStars

    @property
    def config(self) -> FreeSum:
        return self.triangulation.config

    def to_dict(self) -> dict:
        return {
            "cells": [list(cell_key(c)) for c in self.triangulation.cells],
            "side": self.side,
            "p_cells": [list(cell_key(c)) for c in self.tp.cells],
            "q_cells": [list(cell_key(c)) for c in self.tq.cells],
            "alpha": self.alpha.to_json()["images"],
            "beta": self.beta.to_json()["images"],
        }


def sum_cells(config: FreeSum, alpha: WebOfStars, beta: WebOfStars) -> list[frozenset]:
    """Cells ``s + F`` for boundary ridges ``F`` of ``alpha(s)`` and ``G + u`` for
    boundary ridges ``G`` of ``beta(u)``, skipping empty images."""
    tp, tq = alpha.source, alpha.target
    out = []
    for s, m in zip(tp.cells, alpha.images):
        if m:
            for f in ball_boundary(tq, m):
                out.append(join_cells(config, s, f))
    for u, m in zip(tq.cells, beta.images):
        if m:
            for g in ball_boundary(tp, m):
                out.append(join_cells(config, g, u))
    return out


def construct_sum_triangulation(
    tp: Triangulation,
    tq: Triangulation,
    alpha: WebOfStars,
    side: str = "P",
    config: FreeSum | None = None,
    validate: bool = True,
) -> SumTriangulation:
    """Assemble the triangulation of ``P (+) Q`` encoded by ``alpha``.

    ``alpha`` maps cells of ``tp`` to star balls of ``tq``.  For ``side="P"``
    it must pin the cells at the origin to the origin star; for
    ``side="Q"`` its complement-transpose must do so instead.  Both maps
    must be webs of stars.
    """
    if side not in ("P", "Q"):
        raise ValueError("side must be 'P' or 'Q'")
    if alpha.source is not tp or alpha.target is not tq:
        if alpha.source != tp or alpha.target != tq:
            raise SumError("the web does not map the given triangulations")
    beta = complement_transpose(alpha)
    if validate:
        pinned = alpha if side == "P" else beta
        if not satisfies_psum_condition(pinned):
            raise SumError(f"the web is not pinned to the origin star on the {side} side")
        for name, web in (("alpha", alpha), ("beta", beta)):
            check = is_web_of_stars(web)
            if not check:
                raise SumError(f"{name} is not a web of stars (witness {check.witness})")
    config = config or free_sum(tp.config, tq.config)
    t = Triangulation(config, sum_cells(config, alpha, beta), check=validate)
    return SumTriangulation(t, side, tp, tq, alpha, beta)


def _origin_in(points) -> bool:
    zero = (Fraction(0),) * len(points[0])
    lam = barycentric(zero, points)
    return lam is not None and all(x >= 0 for x in lam)


def origin_part(t: Triangulation) -> str:
    """``"both"`` if the origin is a vertex, else the summand whose part of
    the cells around the origin contains it."""
    config = t.config
    if not isinstance(config, FreeSum):
        raise SumError("origin_part needs a triangulation of a free sum")
    if config.origin_index in t.vertices:
        return "both"
    sides = set()
    for c in t.origin_star_cells:
        sp = split_cell(config, c)
        if len(sp.p) == config.p.dim + 1 and _origin_in([config.p.points[i] for i in sorted(sp.p)]):
            sides.add("P")
        elif len(sp.q) == config.q.dim + 1 and _origin_in([config.q.points[j] for j in sorted(sp.q)]):
            sides.add("Q")
        else:
            raise SumError(f"the origin lies in neither part of cell {cell_key(c)}")
    if len(sides) != 1:
        raise SumError("cells around the origin disagree about which part holds it")
    return sides.pop()


def _link_parts(splits: list[CellSplit], side: str) -> dict[frozenset, list[frozenset]]:
    """For each full part on ``side``, the opposite parts it is joined with."""
    out: dict[frozenset, list[frozenset]] = {}
    for sp in splits:
        a, b = (sp.p, sp.q) if side == "P" else (sp.q, sp.p)
        out.setdefault(a, []).append(b)
    return out


def _cone_image(target: Triangulation, link: list[frozenset], origin: int) -> int:
    """Cells of ``target`` inside the cone from 0 over the given link simplices."""
    pts = target.config.points
    zero = pts[origin]
    region = [[zero] + [pts[i] for i in sorted(f - {origin})] for f in link]
    return mask_of(target, restriction(target, region).full_cells())


def decompose(t, prefer: str = "P", check: bool = True) -> SumTriangulation:
    """Recover summand triangulations and the compatible pair of webs.

    The side holding the origin keeps its induced triangulation; the other
    summand's induced complex misses the cone over the link of a cell at the
    origin, which is filled with cells ``{0} + F``.  If the origin is a
    vertex both induced complexes are triangulations and ``prefer`` picks
    which web is pinned.  With ``check`` the input is verified first and the
    result must rebuild the input exactly.
    """
    if isinstance(t, SumTriangulation):
        t = t.triangulation
    config = t.config
    if not isinstance(config, FreeSum):
        raise SumError("decompose needs a triangulation of a free sum")
    if check:
        from .verify import verify_triangulation

        report = verify_triangulation(t)
        if not report.ok:
            raise SumError("input is not a valid triangulation: " + "; ".join(report.failures))
    where = origin_part(t)
    side = where if where != "both" else prefer
    if side not in ("P", "Q"):
        raise ValueError("prefer must be 'P' or 'Q'")
    P, Q = config.p, config.q
    d, e = P.dim, Q.dim
    splits = [split_cell(config, c) for c in t.cells]
    p_full = {sp.p for sp in splits if len(sp.p) == d + 1}
    q_full = {sp.q for sp in splits if len(sp.q) == e + 1}

    if where != "both":
        # fill the uncovered cone on the side without the origin
        star_cell = t.origin_star_cells and next(iter(sorted(t.origin_star_cells, key=cell_key)))
        sp = split_cell(config, star_cell)
        if side == "P":
            link = _link_parts(splits, "P")[sp.p]
            q_full |= {f | {Q.origin_index} for f in link}
        else:
            link = _link_parts(splits, "Q")[sp.q]
            p_full |= {f | {P.origin_index} for f in link}

    tp = Triangulation(P, p_full)
    tq = Triangulation(Q, q_full)
    p_links = _link_parts(splits, "P")
    q_links = _link_parts(splits, "Q")

    def images(source, target, links, pinned):
        origin_src = source.config.origin_index
        out = []
        for c in source.cells:
            if not pinned and origin_src in c:
                out.append(0)
            elif c in links:
                out.append(_cone_image(target, links[c], target.config.origin_index))
            else:
                out.append(0)
        return out

    if side == "P":
        alpha = WebOfStars(tp, tq, images(tp, tq, p_links, True))
        beta = WebOfStars(tq, tp, images(tq, tp, q_links, False))
    else:
        beta = WebOfStars(tq, tp, images(tq, tp, q_links, True))
        alpha = WebOfStars(tp, tq, images(tp, tq, p_links, False))

    result = SumTriangulation(t, side, tp, tq, alpha, beta)
    if check:
        if complement_transpose(alpha).images != beta.images:
            raise SumError("recovered webs are not complement-transposes of each other")
        rebuilt = construct_sum_triangulation(tp, tq, alpha, side=side, config=config)
        if rebuilt.triangulation.cells != t.cells:
            raise SumError("recovered data does not rebuild the input triangulation")
    return result
