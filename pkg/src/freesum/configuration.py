"""Point configurations with a marked origin, free sums and standard generators."""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .exact import RatVector, affine_rank, is_zero, rank, vector
from .lp import lp_feasible


class ConfigurationError(ValueError):
    pass


class PointConfiguration:
    """A finite list of distinct rational points spanning R^d.

    The zero vector, when present, is remembered as ``origin_index``.
    """

    def __init__(self, points: Iterable[Sequence], name: str | None = None):
        pts = tuple(vector(p) for p in points)
        if not pts:
            raise ConfigurationError("a configuration needs at least one point")
        d = len(pts[0])
        if d == 0 or any(len(p) != d for p in pts):
            raise ConfigurationError("all points must have the same positive dimension")
        if len(set(pts)) != len(pts):
            raise ConfigurationError("points must be pairwise distinct")
        if rank(list(pts)) != d:
            raise ConfigurationError("points must linearly span the ambient space")
        self.points: tuple[RatVector, ...] = pts
        self.dim = d
        self.name = name
        zero = tuple(Fraction(0) for _ in range(d))
        self.origin_index: int | None = pts.index(zero) if zero in pts else None

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, i: int) -> RatVector:
        return self.points[i]

    def __iter__(self):
        return iter(self.points)

    def __eq__(self, other) -> bool:
        return isinstance(other, PointConfiguration) and self.points == other.points

    def __hash__(self) -> int:
        return hash(self.points)

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"<PointConfiguration{label}: {len(self)} points in R^{self.dim}>"

    @property
    def ambient_dim(self) -> int:
        return self.dim

    @property
    def is_full_dimensional(self) -> bool:
        return affine_rank(list(self.points)) == self.dim

    @cached_property
    def has_interior_origin(self) -> bool:
        """True iff 0 is a point of the configuration in the interior of its hull.

        The nonzero points must span R^d and admit a linear dependence with
        all coefficients positive; by scaling, all coefficients >= 1.
        """
        if self.origin_index is None:
            return False
        others = [p for i, p in enumerate(self.points) if i != self.origin_index]
        if rank(others) != self.dim:
            return False
        k = len(others)
        cons = []
        for j in range(self.dim):
            cons.append(([p[j] for p in others], "==", 0))
        for i in range(k):
            row = [0] * k
            row[i] = 1
            cons.append((row, ">=", 1))
        return bool(lp_feasible(cons))

    def require_interior_origin(self) -> None:
        if not self.has_interior_origin:
            raise ConfigurationError("the origin must be a point in the interior of the configuration")

    def index_of(self, point: Sequence) -> int:
        return self.points.index(vector(point))


class FreeSum(PointConfiguration):
    """``P (+) Q``: P padded with zeros, then Q's nonzero points prefixed with zeros.

    The two copies of the origin are merged.  ``p_index[i]`` / ``q_index[j]``
    give the position of P's i-th and Q's j-th point in the sum.
    """

    def __init__(self, p: PointConfiguration, q: PointConfiguration):
        for name, c in (("P", p), ("Q", q)):
            if not c.has_interior_origin:
                raise ConfigurationError(f"summand {name} must contain the origin as an interior point")
        d, e = p.dim, q.dim
        zq = (Fraction(0),) * e
        zp = (Fraction(0),) * d
        pts = [tuple(x) + zq for x in p.points]
        p_index = list(range(len(p)))
        q_index = []
        for j, y in enumerate(q.points):
            if j == q.origin_index:
                q_index.append(p.origin_index)
            else:
                q_index.append(len(pts))
                pts.append(zp + tuple(y))
        super().__init__(pts, name=f"{p.name or 'P'}+{q.name or 'Q'}")
        self.p = p
        self.q = q
        self.p_index = tuple(p_index)
        self.q_index = tuple(q_index)
        self.p_of = {s: i for i, s in enumerate(self.p_index)}
        self.q_of = {s: j for j, s in enumerate(self.q_index)}

    def side(self, i: int) -> str:
        """``"P"``, ``"Q"`` or ``"0"`` for the shared origin."""
        if i == self.origin_index:
            return "0"
        return "P" if i in self.p_of else "Q"


def free_sum(p: PointConfiguration, q: PointConfiguration) -> FreeSum:
    return FreeSum(p, q)


def _unit(d: int, i: int, s: int = 1) -> list[int]:
    v = [0] * d
    v[i] = s
    return v


def cross(d: int) -> PointConfiguration:
    """Vertices of the d-dimensional cross polytope, ``+e_i`` then ``-e_i``, then 0."""
    if d < 1:
        raise ValueError("dimension must be positive")
    pts = [_unit(d, i) for i in range(d)] + [_unit(d, i, -1) for i in range(d)]
    return PointConfiguration(pts + [[0] * d], name=f"cross({d})")


def dp(d: int) -> PointConfiguration:
    """Del Pezzo configuration: cross polytope vertices, ``+1``, ``-1`` and 0."""
    if d < 1:
        raise ValueError("dimension must be positive")
    pts = [_unit(d, i) for i in range(d)] + [_unit(d, i, -1) for i in range(d)]
    pts += [[1] * d, [-1] * d]
    return PointConfiguration(pts + [[0] * d], name=f"dp({d})")


def dp_minus(d: int) -> PointConfiguration:
    """Pseudo del Pezzo configuration: like :func:`dp` without ``+1``."""
    if d < 1:
        raise ValueError("dimension must be positive")
    pts = [_unit(d, i) for i in range(d)] + [_unit(d, i, -1) for i in range(d)]
    pts += [[-1] * d]
    return PointConfiguration(pts + [[0] * d], name=f"dp_minus({d})")


def interval(values: Iterable) -> PointConfiguration:
    """A configuration on the real line, in the given order."""
    return PointConfiguration([[v] for v in values], name="interval")


def origin_is_zero(p: Sequence) -> bool:
    return is_zero(p)
