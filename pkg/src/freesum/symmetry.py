"""Linear symmetries of point configurations and orbit-level deduplication."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .complex import Triangulation
from .configuration import FreeSum, PointConfiguration
from .exact import add, rank, scale, solve, vector

Perm = tuple[int, ...]


@dataclass(frozen=True)
class LinearSymmetry:
    """A permutation of point indices realised by the invertible ``matrix``."""

    permutation: Perm
    matrix: tuple[tuple[Fraction, ...], ...]

    def apply(self, x: Sequence) -> tuple:
        x = vector(x)
        return tuple(sum((a * b for a, b in zip(row, x)), Fraction(0)) for row in self.matrix)


def compose(g: Perm, h: Perm) -> Perm:
    """``g`` after ``h``."""
    return tuple(g[i] for i in h)


def inverse(g: Perm) -> Perm:
    out = [0] * len(g)
    for i, j in enumerate(g):
        out[j] = i
    return tuple(out)


def closure(generators: Iterable[Perm], n: int) -> set[Perm]:
    """The group generated by some permutations of ``range(n)``."""
    gens = [tuple(g) for g in generators]
    identity = tuple(range(n))
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(g, x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


class SymmetryGroup:
    """A finite group of linear symmetries, stored as all its permutations."""

    def __init__(self, config: PointConfiguration, elements: Iterable[Perm]):
        self.config = config
        n = len(config)
        self.elements: list[Perm] = sorted(set(tuple(g) for g in elements))
        identity = tuple(range(n))
        if identity not in self.elements:
            raise ValueError("a symmetry group must contain the identity")
        if any(len(g) != n for g in self.elements):
            raise ValueError("group elements must permute the configuration's point indices")
        self._generators: list[Perm] | None = None

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g) -> bool:
        return tuple(g) in set(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def generator_perms(self) -> list[Perm]:
        """A small generating set, picked greedily in element order."""
        if self._generators is None:
            n = len(self.config)
            gens: list[Perm] = []
            span = {tuple(range(n))}
            for g in self.elements:
                if g not in span:
                    gens.append(g)
                    span = closure(gens, n)
            if span != set(self.elements):
                raise ValueError("elements are not closed under composition")
            self._generators = gens
        return self._generators

    @property
    def generators(self) -> list[LinearSymmetry]:
        return [self.symmetry(g) for g in self.generator_perms]

    def symmetry(self, g: Perm) -> LinearSymmetry:
        return LinearSymmetry(tuple(g), linear_map_of(self.config, g))

    def is_closed(self) -> bool:
        return closure(self.generator_perms, len(self.config)) == set(self.elements)

    def subgroup(self, predicate) -> "SymmetryGroup":
        return SymmetryGroup(self.config, [g for g in self.elements if predicate(g)])

    def stabilizer(self, t: Triangulation) -> "SymmetryGroup":
        cells = set(t.cells)
        return self.subgroup(lambda g: all(frozenset(g[i] for i in c) in cells for c in cells))


def _spanning_basis(points: Sequence[Sequence], candidates: Sequence[int]) -> list[int]:
    basis: list[int] = []
    for i in candidates:
        if rank([points[j] for j in basis + [i]]) == len(basis) + 1:
            basis.append(i)
    return basis


def linear_map_of(config: PointConfiguration, g: Perm) -> tuple[tuple[Fraction, ...], ...]:
    """The matrix ``M`` with ``M p_i = p_{g(i)}``; raises if none exists."""
    pts = config.points
    d = config.dim
    nonzero = [i for i in range(len(pts)) if i != config.origin_index]
    basis = _spanning_basis(pts, nonzero)
    # rows of M: solve B^T m_r = (images' r-th coordinates)
    bt = [[pts[b][k] for b in basis] for k in range(d)]
    bt = [list(col) for col in zip(*bt)]  # rows are basis points
    rows = []
    for r in range(d):
        m = solve(bt, [pts[g[b]][r] for b in basis])
        rows.append(tuple(m))
    matrix = tuple(rows)
    for i, p in enumerate(pts):
        img = tuple(sum((a * b for a, b in zip(row, p)), Fraction(0)) for row in matrix)
        if img != pts[g[i]]:
            raise ValueError("the permutation is not induced by a linear map")
    return matrix


def _point_invariants(pts: Sequence[tuple], nonzero: list[int]) -> dict[int, tuple]:
    """Counts preserved by every linear symmetry: how often a point is a sum
    of two others, and how many points it can be added to."""
    lookup = set(pts)
    inv = {}
    for i in nonzero:
        p = pts[i]
        sums = sum(1 for a in nonzero for b in nonzero if a < b and add(pts[a], pts[b]) == p)
        partners = sum(1 for j in nonzero if j != i and add(p, pts[j]) in lookup)
        has_neg = scale(-1, p) in lookup
        inv[i] = (sums, partners, has_neg)
    return inv


def automorphism_group(config: PointConfiguration) -> SymmetryGroup:
    """All invertible linear maps permuting the configuration.

    A spanning set of nonzero points is mapped to every tuple of distinct
    nonzero points with matching invariants; a candidate survives while all
    points in the span of the basis prefix assigned so far land on
    configuration points.
    """
    pts = config.points
    n = len(pts)
    nonzero = [i for i in range(n) if i != config.origin_index]
    basis = _spanning_basis(pts, nonzero)
    d = len(basis)
    where = {p: i for i, p in enumerate(pts)}
    inv = _point_invariants(pts, nonzero)

    # coordinates of each nonzero point in the basis, grouped by the
    # shortest basis prefix whose span contains it
    basis_mat = [list(col) for col in zip(*[pts[b] for b in basis])]
    coords = {i: solve(basis_mat, pts[i]) for i in nonzero}
    by_level: list[list[int]] = [[] for _ in range(d)]
    for i in nonzero:
        c = coords[i]
        last = max(k for k in range(d) if c[k] != 0)
        by_level[last].append(i)

    found: list[Perm] = []
    images = [0] * d
    perm: dict[int, int] = {}
    if config.origin_index is not None:
        perm[config.origin_index] = config.origin_index

    def rec(k: int):
        if k == d:
            if len(set(perm.values())) == n:
                found.append(tuple(perm[i] for i in range(n)))
            return
        used = set(perm.values())
        for cand in nonzero:
            if cand in used or inv[cand] != inv[basis[k]]:
                continue
            images[k] = cand
            added = []
            ok = True
            for i in by_level[k]:
                c = coords[i]
                img = (Fraction(0),) * config.dim
                for j in range(k + 1):
                    if c[j]:
                        img = add(img, scale(c[j], pts[images[j]]))
                target = where.get(img)
                if target is None or target in used or inv[target] != inv[i]:
                    ok = False
                    break
                perm[i] = target
                used.add(target)
                added.append(i)
            if ok:
                rec(k + 1)
            for i in added:
                used.discard(perm.pop(i))

    rec(0)
    return SymmetryGroup(config, found)


def side_preserving(group: SymmetryGroup) -> SymmetryGroup:
    """Elements of a free sum's group that map each summand to itself."""
    fs = group.config
    if not isinstance(fs, FreeSum):
        raise ValueError("side_preserving needs a group acting on a free sum")
    return group.subgroup(lambda g: all(fs.side(g[i]) == fs.side(i) for i in range(len(g))))


def product_group(gp: SymmetryGroup, gq: SymmetryGroup, fs: FreeSum) -> SymmetryGroup:
    """``Aut(P) x Aut(Q)`` acting blockwise on the points of ``P (+) Q``."""
    elements = []
    n = len(fs)
    for a in gp.elements:
        for b in gq.elements:
            g = [0] * n
            for i, s in enumerate(fs.p_index):
                g[s] = fs.p_index[a[i]]
            for j, s in enumerate(fs.q_index):
                g[s] = fs.q_index[b[j]]
            elements.append(tuple(g))
    return SymmetryGroup(fs, elements)


def _code(cell, g: Perm) -> int:
    return sum(1 << g[i] for i in cell)


def _check_acts(group: SymmetryGroup, config: PointConfiguration) -> None:
    if group.config != config:
        raise ValueError("the group does not act on this configuration's point indices")


def web_encoding(st) -> tuple:
    """``(pinned cells, other cells, pairs)`` of a sum triangulation's webs in free-sum indices.

    ``pairs`` holds ``(a, b)`` whenever cell ``b`` lies in the web image of
    cell ``a``, for both webs.
    """
    fs = st.config
    p_cells = [frozenset(fs.p_index[i] for i in c) for c in st.tp.cells]
    q_cells = [frozenset(fs.q_index[j] for j in c) for c in st.tq.cells]
    pairs = []
    for a, m in zip(p_cells, st.alpha.images):
        for j, b in enumerate(q_cells):
            if m >> j & 1:
                pairs.append((a, b))
    for b, m in zip(q_cells, st.beta.images):
        for i, a in enumerate(p_cells):
            if m >> i & 1:
                pairs.append((b, a))
    pinned, other = (p_cells, q_cells) if st.side == "P" else (q_cells, p_cells)
    return pinned, other, pairs


def _encode(obj) -> tuple[list, list, list]:
    """Cell lists of an object: plain cells, and pairs of cells."""
    from .sumtri import SumTriangulation

    if isinstance(obj, Triangulation):
        return [sorted(c) for c in obj.cells], [], []
    if isinstance(obj, SumTriangulation):
        pinned, other, pairs = web_encoding(obj)
        return [sorted(c) for c in pinned], [sorted(c) for c in other], [(sorted(a), sorted(b)) for a, b in pairs]
    raise TypeError(f"cannot compute a canonical form for {type(obj).__name__}")


def canonical_form_naive(obj, group: SymmetryGroup) -> tuple:
    """Reference implementation of :func:`canonical_form`, one group element at a time."""
    _check_acts(group, obj.config)
    first, second, pairs = _encode(obj)
    n = len(group.config)
    best = None
    for g in group.elements:
        row = (
            sorted(_code(c, g) for c in first)
            + sorted(_code(c, g) for c in second)
            + sorted(_code(a, g) << n | _code(b, g) for a, b in pairs)
        )
        if best is None or row < best:
            best = row
    return tuple(best)


def _perm_array(group: SymmetryGroup) -> np.ndarray:
    arr = group.__dict__.get("_perm_array")
    if arr is None:
        arr = group.__dict__["_perm_array"] = np.array(group.elements, dtype=np.int64)
    return arr


def _codes(perms: np.ndarray, cells: list) -> np.ndarray:
    """Bitmask codes of every cell under every group element, shape (|G|, len(cells))."""
    out = np.zeros((perms.shape[0], len(cells)), dtype=np.int64)
    by_size: dict[int, list[int]] = {}
    for k, c in enumerate(cells):
        by_size.setdefault(len(c), []).append(k)
    for cols in by_size.values():
        idx = np.array([cells[k] for k in cols], dtype=np.int64)
        out[:, cols] = np.left_shift(np.int64(1), perms[:, idx]).sum(axis=2)
    return out


def canonical_form(obj, group: SymmetryGroup) -> tuple:
    """Lexicographically least image of ``obj`` over the group.

    ``obj`` is a :class:`Triangulation` (key: sorted bitmask codes of its
    cells) or a :class:`~freesum.sumtri.SumTriangulation` carrying its webs.
    For the latter the key lists the pinned summand's cells, the other
    summand's cells and the membership pairs of both webs, all in free-sum
    indices, so symmetries that swap the summands are handled.  Equal keys
    mean equal orbits.
    """
    _check_acts(group, obj.config)
    n = len(group.config)
    if 2 * n > 62:
        return canonical_form_naive(obj, group)
    first, second, pairs = _encode(obj)
    perms = _perm_array(group)
    blocks = [np.sort(_codes(perms, first), axis=1), np.sort(_codes(perms, second), axis=1)]
    if pairs:
        a = _codes(perms, [x for x, _ in pairs])
        b = _codes(perms, [y for _, y in pairs])
        blocks.append(np.sort(np.left_shift(a, n) | b, axis=1))
    rows = np.concatenate(blocks, axis=1)
    best = np.lexsort(rows.T[::-1])[0]
    return tuple(rows[best].tolist())


def orbit_representatives(triangulations: Iterable[Triangulation], group: SymmetryGroup) -> list[Triangulation]:
    """First member of each orbit, in input order."""
    seen = set()
    out = []
    for t in triangulations:
        k = canonical_form(t, group)
        if k not in seen:
            seen.add(k)
            out.append(t)
    return out


def act_on_triangulation(t: Triangulation, g: Perm) -> Triangulation:
    return Triangulation(t.config, [frozenset(g[i] for i in c) for c in t.cells], check=False)
