"""Exact rational linear algebra and small polyhedral predicates.

Every number is a :class:`fractions.Fraction`; nothing here rounds.
Vectors are plain tuples of Fractions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence

Rational = Fraction
RatVector = tuple  # tuple[Fraction, ...]


def to_rational(x) -> Fraction:
    """Convert ints, Fractions and strings like ``"3/4"`` to a Fraction.

    Floats are refused: silently importing a binary approximation is the
    one thing this package is built to avoid.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError(f"refusing float coordinate {x!r}; pass a string or Fraction")
    try:  # numpy integers, gmpy2.mpq and similar
        return Fraction(int(x.numerator), int(x.denominator))
    except AttributeError:
        pass
    return Fraction(int(x))


def vector(coords: Iterable) -> RatVector:
    return tuple(to_rational(c) for c in coords)


def sub(a: Sequence, b: Sequence) -> RatVector:
    return tuple(x - y for x, y in zip(a, b))


def add(a: Sequence, b: Sequence) -> RatVector:
    return tuple(x + y for x, y in zip(a, b))


def scale(t, a: Sequence) -> RatVector:
    return tuple(t * x for x in a)


def dot(a: Sequence, b: Sequence) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def is_zero(a: Sequence) -> bool:
    return all(x == 0 for x in a)


def centroid(points: Sequence[Sequence]) -> RatVector:
    n = len(points)
    return tuple(sum(col, Fraction(0)) / n for col in zip(*points))


@dataclass(frozen=True)
class Hyperplane:
    """The set ``{x : normal . x == offset}``."""

    normal: RatVector
    offset: Fraction

    def __post_init__(self):
        if is_zero(self.normal):
            raise ValueError("hyperplane normal must be nonzero")

    @property
    def is_linear(self) -> bool:
        return self.offset == 0

    def value(self, x: Sequence) -> Fraction:
        """Signed slack ``normal . x - offset``."""
        return dot(self.normal, x) - self.offset

    def side(self, x: Sequence) -> int:
        v = self.value(x)
        return (v > 0) - (v < 0)


def _row_echelon(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form (in place on a copy); returns (rows, pivot columns)."""
    m = [list(r) for r in rows]
    pivots: list[int] = []
    if not m:
        return m, pivots
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def determinant(matrix: Sequence[Sequence]) -> Fraction:
    """Exact determinant by Gaussian elimination over the rationals."""
    n = len(matrix)
    m = [[to_rational(x) for x in row] for row in matrix]
    if any(len(row) != n for row in m):
        raise ValueError("determinant needs a square matrix")
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        p = m[c][c]
        det *= p
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / p
                row_c = m[c]
                m[i] = [x - f * y for x, y in zip(m[i], row_c)]
    return det


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    return len(_row_echelon([[to_rational(x) for x in r] for r in rows])[1])


def solve(matrix: Sequence[Sequence], rhs: Sequence) -> RatVector | None:
    """Some solution of ``matrix @ x == rhs`` (free variables set to 0), or None."""
    aug = [[to_rational(x) for x in row] + [to_rational(b)] for row, b in zip(matrix, rhs)]
    if not aug:
        return ()
    ncols = len(aug[0]) - 1
    red, pivots = _row_echelon(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, c in zip(red, pivots):
        x[c] = row[-1]
    return tuple(x)


def nullspace(rows: Sequence[Sequence]) -> list[RatVector]:
    """A basis of ``{x : rows @ x == 0}``."""
    if not rows:
        raise ValueError("nullspace of an empty row list is ambiguous")
    ncols = len(rows[0])
    red, pivots = _row_echelon([[to_rational(x) for x in r] for r in rows])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, c in zip(red, pivots):
            x[c] = -row[f]
        basis.append(tuple(x))
    return basis


def affine_rank(points: Sequence[Sequence]) -> int:
    """Dimension of the affine hull (-1 for no points)."""
    if not points:
        return -1
    p0 = points[0]
    return rank([sub(p, p0) for p in points[1:]]) if len(points) > 1 else 0


def affinely_independent(points: Sequence[Sequence]) -> bool:
    return affine_rank(points) == len(points) - 1


def simplex_volume(vertices: Sequence[Sequence]) -> Fraction:
    """k-dimensional volume of a k-simplex given by k+1 vertices.

    For k below the ambient dimension this is the volume inside the affine
    hull, ``sqrt(det(Gram)) / k!``; it is returned exactly only when the Gram
    determinant is a rational square (always true for k == ambient dim).
    Affinely dependent input gives 0.
    """
    verts = [vector(v) for v in vertices]
    k = len(verts) - 1
    if k <= 0:
        return Fraction(1) if k == 0 else Fraction(0)
    d = len(verts[0])
    edges = [sub(v, verts[0]) for v in verts[1:]]
    if k == d:
        return abs(determinant(edges)) / factorial(k)
    gram = [[dot(a, b) for b in edges] for a in edges]
    g = determinant(gram)
    if g == 0:
        return Fraction(0)
    num, den = g.numerator, g.denominator
    rn, rd = _isqrt_exact(num), _isqrt_exact(den)
    if rn is None or rd is None:
        raise ValueError("lower-dimensional volume is irrational for these vertices")
    return Fraction(rn, rd) / factorial(k)


def _isqrt_exact(n: int) -> int | None:
    from math import isqrt

    r = isqrt(n)
    return r if r * r == n else None


def full_volume(vertices: Sequence[Sequence]) -> Fraction:
    """Unsigned volume of a full-dimensional simplex (d+1 points in R^d)."""
    v0 = vertices[0]
    return abs(determinant([sub(v, v0) for v in vertices[1:]])) / factorial(len(vertices) - 1)


def orientation(vertices: Sequence[Sequence]) -> int:
    v0 = vertices[0]
    det = determinant([sub(v, v0) for v in vertices[1:]])
    return (det > 0) - (det < 0)


def affine_hull_membership(x: Sequence, generators: Sequence[Sequence]) -> bool:
    """True iff ``x`` is an affine combination of ``generators``."""
    if not generators:
        return False
    g0 = generators[0]
    rows = [sub(g, g0) for g in generators[1:]]
    target = sub(vector(x), g0)
    if not rows:
        return is_zero(target)
    return rank(rows + [target]) == rank(rows)


def barycentric(x: Sequence, simplex: Sequence[Sequence]) -> RatVector | None:
    """Affine coordinates of ``x`` w.r.t. an affinely independent vertex list.

    Returns None when ``x`` is not in the affine hull.
    """
    k = len(simplex)
    d = len(x)
    # sum_i l_i v_i = x, sum_i l_i = 1
    matrix = [[simplex[i][j] for i in range(k)] for j in range(d)]
    matrix.append([Fraction(1)] * k)
    rhs = list(x) + [Fraction(1)]
    sol = solve(matrix, rhs)
    if sol is None:
        return None
    return sol


def hyperplane_through(points: Sequence[Sequence]) -> Hyperplane:
    """The unique hyperplane through d affinely independent points of R^d."""
    d = len(points[0])
    if len(points) != d:
        raise ValueError(f"need exactly {d} points in R^{d}")
    # (a, b) with a.p - b = 0 for all p
    rows = [list(p) + [Fraction(-1)] for p in points]
    ns = nullspace(rows)
    if len(ns) != 1:
        raise ValueError("points do not span a hyperplane")
    sol = ns[0]
    normal, offset = sol[:d], sol[d]
    return Hyperplane(tuple(normal), offset)


def segment_simplex_interval(a: Sequence, b: Sequence, simplex: Sequence[Sequence]):
    """Parameter interval ``[t0, t1]`` with ``a + t (b - a)`` in the simplex, or None.

    The simplex may have any dimension; its vertices must be affinely
    independent.
    """
    from .lp import maximize

    a = vector(a)
    b = vector(b)
    d = len(a)
    k = len(simplex)
    direction = sub(b, a)
    # variables: t, mu_0..mu_{k-1}; all nonnegative
    cons = []
    for j in range(d):
        row = [-direction[j]] + [simplex[i][j] for i in range(k)]
        cons.append((row, "==", a[j]))
    cons.append(([Fraction(0)] + [Fraction(1)] * k, "==", Fraction(1)))
    cons.append(([Fraction(1)] + [Fraction(0)] * k, "<=", Fraction(1)))
    hi = maximize([Fraction(1)] + [Fraction(0)] * k, cons, nonneg=True)
    if hi.status == "infeasible":
        return None
    lo = maximize([Fraction(-1)] + [Fraction(0)] * k, cons, nonneg=True)
    return (-lo.value, hi.value)


def segment_face_intersection_dim(a: Sequence, b: Sequence, simplex: Sequence[Sequence]) -> int:
    """Dimension of ``conv{a, b}`` intersected with a simplex: -1, 0 or 1."""
    if tuple(vector(a)) == tuple(vector(b)):
        raise ValueError("segment endpoints must differ")
    interval = segment_simplex_interval(a, b, [vector(v) for v in simplex])
    if interval is None:
        return -1
    return 0 if interval[0] == interval[1] else 1


def relative_interior_point(cone_generators: Sequence[Sequence], simplex: Sequence[Sequence]) -> RatVector | None:
    """A point in the relative interior of ``cone(cone_generators) & conv(simplex)``.

    The set is the image of ``{(l, m) : l >= 0, m >= 0, sum m = 1,
    sum l_i g_i = sum m_j s_j}`` under ``(l, m) -> sum m_j s_j``.  After
    homogenizing (``sum m = h``) the feasible set is a cone, so one LP that
    pushes every coordinate up to a cap of 1 where it can be positive finds
    a point where exactly the implied-zero coordinates vanish.  Its image is
    a relative interior point.  Returns None for an empty intersection.
    """
    from .lp import maximize

    gens = [vector(g) for g in cone_generators]
    verts = [vector(v) for v in simplex]
    d = len(verts[0])
    k, m = len(gens), len(verts)
    nx = k + m + 1  # l, m, h
    n = 2 * nx  # plus one slack-indicator per coordinate
    cons = []
    for j in range(d):
        row = [Fraction(0)] * n
        for i, g in enumerate(gens):
            row[i] = g[j]
        for i, v in enumerate(verts):
            row[k + i] = -v[j]
        cons.append((row, "==", 0))
    row = [Fraction(0)] * n
    for i in range(m):
        row[k + i] = Fraction(1)
    row[k + m] = Fraction(-1)
    cons.append((row, "==", 0))
    for i in range(nx):
        # s_i <= x_i, s_i <= 1
        row = [Fraction(0)] * n
        row[nx + i] = Fraction(1)
        row[i] = Fraction(-1)
        cons.append((row, "<=", 0))
        row = [Fraction(0)] * n
        row[nx + i] = Fraction(1)
        cons.append((row, "<=", 1))
    objective = [Fraction(0)] * nx + [Fraction(1)] * nx
    res = maximize(objective, cons, nonneg=True)
    x = res.point
    h = x[k + m]
    if h == 0:
        return None
    return tuple(sum((x[k + i] * verts[i][j] for i in range(m)), Fraction(0)) / h for j in range(d))
