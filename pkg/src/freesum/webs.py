"""Webs of stars: order-preserving maps from cells of one triangulation to
star balls of another, and their complement-transpose partners.

Images are bitmasks over the target triangulation's cell indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .complex import Triangulation, cell_key
from .stabbing import StabbingPoset, build_stabbing_poset
from .starballs import (
    StarBallPoset,
    _bits,
    cells_of,
    enumerate_star_balls,
    is_strictly_star_shaped,
    mask_of,
    origin_star_mask,
)


class WebOfStars:
    """A map from the full cells of ``source`` to cell sets of ``target``.

    ``images[i]`` is the bitmask of target cells assigned to source cell ``i``.
    Construction does not validate anything; see :func:`is_order_preserving`
    and :func:`is_proper`.
    """

    def __init__(self, source: Triangulation, target: Triangulation, images: Sequence):
        if len(images) != len(source.cells):
            raise ValueError("a web needs one image per source cell")
        self.source = source
        self.target = target
        self.images: tuple[int, ...] = tuple(m if isinstance(m, int) else mask_of(target, m) for m in images)

    @classmethod
    def from_cells(cls, source: Triangulation, target: Triangulation, mapping: dict) -> "WebOfStars":
        """Build from ``{source cell (vertex set): iterable of target cells}``."""
        images = [0] * len(source.cells)
        for s, ts in mapping.items():
            images[source.index[frozenset(s)]] = mask_of(target, ts)
        return cls(source, target, images)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, WebOfStars)
            and self.source == other.source
            and self.target == other.target
            and self.images == other.images
        )

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"WebOfStars({self.to_dict()})"

    def image(self, cell) -> list[frozenset]:
        i = cell if isinstance(cell, int) else self.source.index[frozenset(cell)]
        return cells_of(self.target, self.images[i])

    def contains(self, i: int, j: int) -> bool:
        """Is target cell ``j`` in the image of source cell ``i``?"""
        return bool(self.images[i] >> j & 1)

    def to_dict(self) -> dict:
        """Source cell vertex lists mapped to lists of target cell vertex lists."""
        return {
            str(list(cell_key(s))): [list(cell_key(c)) for c in cells_of(self.target, m)]
            for s, m in zip(self.source.cells, self.images)
        }

    def to_json(self) -> dict:
        return {
            "source": [list(cell_key(c)) for c in self.source.cells],
            "target": [list(cell_key(c)) for c in self.target.cells],
            "images": [sorted(_bits(m)) for m in self.images],
        }


@dataclass
class Check:
    ok: bool
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


def is_order_preserving(web: WebOfStars, poset: StabbingPoset | None = None) -> Check:
    """``s < u`` in the source stabbing order must give ``image(s) <= image(u)``.

    The witness is a violating pair of source cells.
    """
    if poset is None:
        poset = build_stabbing_poset(web.source, closure=True)
    n = len(web.source.cells)
    for i in range(n):
        a = web.images[i]
        for j in range(n):
            if poset.less[i][j] and a & web.images[j] != a:
                return Check(False, (cell_key(web.source.cells[i]), cell_key(web.source.cells[j])))
    return Check(True)


def complement_transpose(web: WebOfStars) -> WebOfStars:
    """The unique candidate partner: source cell ``s`` is in ``beta(t)`` iff ``t`` is not in ``alpha(s)``."""
    n_src = len(web.source.cells)
    n_tgt = len(web.target.cells)
    out = []
    for j in range(n_tgt):
        m = 0
        for i in range(n_src):
            if not web.images[i] >> j & 1:
                m |= 1 << i
        out.append(m)
    return WebOfStars(web.target, web.source, out)


def images_are_star_balls(web: WebOfStars, balls: StarBallPoset | None = None) -> Check:
    for i, m in enumerate(web.images):
        ok = m in balls if balls is not None else (m == 0 or is_strictly_star_shaped(web.target, m))
        if not ok:
            return Check(False, (cell_key(web.source.cells[i]),))
    return Check(True)


def is_web_of_stars(web: WebOfStars, poset: StabbingPoset | None = None, balls: StarBallPoset | None = None) -> Check:
    c = images_are_star_balls(web, balls)
    return c if not c else is_order_preserving(web, poset)


def is_proper(web: WebOfStars, target_poset: StabbingPoset | None = None, source_balls: StarBallPoset | None = None) -> Check:
    """Is the complement-transpose a web of stars as well?

    Each of its images must be empty or a star ball of the source
    triangulation, and it must preserve the target's stabbing order.
    """
    beta = complement_transpose(web)
    return is_web_of_stars(beta, target_poset, source_balls)


def satisfies_psum_condition(web: WebOfStars) -> bool:
    """Cells at the origin of the source map onto the whole star of the origin in the target."""
    star = origin_star_mask(web.target)
    return all(web.images[web.source.index[c]] == star for c in web.source.origin_star_cells)


def constant_web(source: Triangulation, target: Triangulation) -> WebOfStars:
    """Every source cell maps to the star of the origin in the target."""
    star = origin_star_mask(target)
    return WebOfStars(source, target, [star] * len(source.cells))


@dataclass
class WebContext:
    """Precomputed posets for enumerating webs from ``tp`` into ``tq``."""

    tp: Triangulation
    tq: Triangulation
    p_poset: StabbingPoset
    q_balls: StarBallPoset
    p_balls: StarBallPoset

    @classmethod
    def build(cls, tp: Triangulation, tq: Triangulation, p_poset=None, q_balls=None, p_balls=None) -> "WebContext":
        if p_poset is None:
            p_poset = build_stabbing_poset(tp, closure=True)
        if q_balls is None:
            q_balls = enumerate_star_balls(tq)
        if p_balls is None:
            p_balls = enumerate_star_balls(tp, poset=p_poset)
        return cls(tp, tq, p_poset, q_balls, p_balls)


def enumerate_proper_psum_webs(tp: Triangulation, tq: Triangulation, context: WebContext | None = None) -> Iterator[WebOfStars]:
    """Stream every proper web from ``tp`` into star balls of ``tq`` that pins
    the cells at the origin to the origin star.

    Source cells are assigned along a linear extension of the stabbing
    order; each candidate ball must contain the images of all predecessors.
    Order preservation of the partner is automatic (star balls are closed
    under stabbing predecessors), so a complete assignment is accepted iff
    each partner image is empty or a star ball of ``tp``.  Output order is
    deterministic.
    """
    ctx = context or WebContext.build(tp, tq)
    yield from (WebOfStars(tp, tq, imgs) for imgs in _psum_images(ctx))


def count_proper_psum_webs(tp: Triangulation, tq: Triangulation, context: WebContext | None = None) -> int:
    ctx = context or WebContext.build(tp, tq)
    return sum(1 for _ in _psum_images(ctx))


def _psum_images(ctx: WebContext) -> Iterator[tuple[int, ...]]:
    tp, tq = ctx.tp, ctx.tq
    n = len(tp.cells)
    m = len(tq.cells)
    star_q = origin_star_mask(tq)
    star_p_cells = {tp.index[c] for c in tp.origin_star_cells}
    preds = [list(ctx.p_poset.predecessors[j]) for j in range(n)]
    order = [j for j in ctx.p_poset.linear_extension if j not in star_p_cells]
    balls = [b for b in ctx.q_balls.masks if b & star_q == star_q]
    p_ok = set(ctx.p_balls.masks)
    targets = [j for j in range(m) if not star_q >> j & 1]

    images = [0] * n
    for i in star_p_cells:
        images[i] = star_q

    def complete() -> bool:
        for j in targets:
            beta = 0
            for i in range(n):
                if not images[i] >> j & 1:
                    beta |= 1 << i
            if beta not in p_ok:
                return False
        return True

    def rec(k: int):
        if k == len(order):
            if complete():
                yield tuple(images)
            return
        j = order[k]
        lower = 0
        for i in preds[j]:
            lower |= images[i]
        for b in balls:
            if b & lower == lower:
                images[j] = b
                yield from rec(k + 1)
        images[j] = 0

    yield from rec(0)
