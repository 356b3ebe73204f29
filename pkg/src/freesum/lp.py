"""A small exact two-phase simplex solver with Bland's pivot rule.

Constraints are triples ``(coefficients, relation, rhs)`` with relation one of
``"<="``, ``"=="``, ``">="``.  Variables are free unless listed in ``nonneg``.
Arithmetic is exact; gmpy2's ``mpq`` is used internally when available and
results are handed back as :class:`fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

try:  # exact either way; mpq is just several times faster
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover
    _Q = Fraction

RELATIONS = ("<=", "==", ">=")
_FLIP = {"<=": ">=", ">=": "<=", "==": "=="}


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(int(x.numerator), int(x.denominator))


@dataclass
class LPResult:
    status: str  # "optimal" | "unbounded" | "infeasible"
    value: Fraction | None = None
    point: tuple | None = None

    @property
    def feasible(self) -> bool:
        return self.status != "infeasible"


def _nonneg_mask(nonneg, n: int) -> list[bool]:
    if nonneg is True:
        return [True] * n
    if not nonneg:
        return [False] * n
    s = set(nonneg)
    return [j in s for j in range(n)]


class _Tableau:
    def __init__(self, rows, rhs, basis, ncols):
        self.rows = rows  # list of lists of _Q, without rhs
        self.rhs = rhs
        self.basis = basis
        self.ncols = ncols

    def pivot(self, r: int, c: int, obj: list, obj_rhs: list) -> None:
        rows, rhs = self.rows, self.rhs
        prow = rows[r]
        inv = 1 / prow[c]
        if inv != 1:
            prow = [x * inv for x in prow]
            rows[r] = prow
            rhs[r] = rhs[r] * inv
        pr = rhs[r]
        nz = [j for j, x in enumerate(prow) if x != 0]
        for i, row in enumerate(rows):
            if i == r:
                continue
            f = row[c]
            if f != 0:
                for j in nz:
                    row[j] -= f * prow[j]
                rhs[i] -= f * pr
        f = obj[c]
        if f != 0:
            for j in nz:
                obj[j] -= f * prow[j]
            obj_rhs[0] -= f * pr
        self.basis[r] = c

    def run(self, obj: list, obj_rhs: list, allowed: list[bool]) -> str:
        """Maximize; ``obj`` holds reduced costs, ``-obj_rhs[0]`` the value."""
        rows, rhs, basis = self.rows, self.rhs, self.basis
        while True:
            enter = -1
            for j in range(self.ncols):
                if allowed[j] and obj[j] > 0:
                    enter = j
                    break
            if enter < 0:
                return "optimal"
            best = None
            leave = -1
            for i, row in enumerate(rows):
                a = row[enter]
                if a > 0:
                    ratio = rhs[i] / a
                    if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                        best = ratio
                        leave = i
            if leave < 0:
                return "unbounded"
            self.pivot(leave, enter, obj, obj_rhs)


def maximize(objective: Sequence, constraints: Iterable, nonneg=False) -> LPResult:
    """Maximize ``objective . x`` subject to the constraints.

    ``nonneg`` is True (all variables >= 0), False (all free) or a collection
    of variable indices that are sign-constrained.
    """
    constraints = list(constraints)
    n = len(objective)
    mask = _nonneg_mask(nonneg, n)
    # column layout: each variable gets a + column, free ones also a - column
    colmap: list[tuple[int, int]] = []
    ncols = 0
    for j in range(n):
        if mask[j]:
            colmap.append((ncols, -1))
            ncols += 1
        else:
            colmap.append((ncols, ncols + 1))
            ncols += 2
    nstruct = ncols

    raw_rows = []
    for coeffs, rel, rhs in constraints:
        if rel not in RELATIONS:
            raise ValueError(f"unknown relation {rel!r}")
        if len(coeffs) != n:
            raise ValueError("constraint length does not match objective length")
        row = [_Q(0)] * nstruct
        for j, a in enumerate(coeffs):
            if a:
                a = _Q(a)
                p, m = colmap[j]
                row[p] = a
                if m >= 0:
                    row[m] = -a
        b = _Q(rhs)
        if b < 0:
            row = [-x for x in row]
            b = -b
            rel = _FLIP[rel]
        raw_rows.append((row, rel, b))

    n_slack = sum(1 for _, rel, _ in raw_rows if rel != "==")
    n_art = sum(1 for _, rel, _ in raw_rows if rel != "<=")
    ncols = nstruct + n_slack + n_art
    rows, rhs, basis = [], [], []
    artificial = [False] * ncols
    s = nstruct
    a = nstruct + n_slack
    for row, rel, b in raw_rows:
        full = row + [_Q(0)] * (n_slack + n_art)
        if rel == "<=":
            full[s] = _Q(1)
            basis.append(s)
            s += 1
        else:
            if rel == ">=":
                full[s] = _Q(-1)
                s += 1
            full[a] = _Q(1)
            artificial[a] = True
            basis.append(a)
            a += 1
        rows.append(full)
        rhs.append(b)
    tab = _Tableau(rows, rhs, basis, ncols)

    if n_art:
        obj = [_Q(0)] * ncols
        obj_rhs = [_Q(0)]
        for j in range(ncols):
            if artificial[j]:
                obj[j] = _Q(-1)
        for i, bj in enumerate(tab.basis):
            if artificial[bj]:
                for j, x in enumerate(tab.rows[i]):
                    if x != 0:
                        obj[j] += x
                obj_rhs[0] += tab.rhs[i]
        tab.run(obj, obj_rhs, [True] * ncols)
        if obj_rhs[0] != 0:  # minimal artificial sum is positive
            return LPResult("infeasible")
        # drive remaining artificials out of the basis
        i = 0
        while i < len(tab.rows):
            if artificial[tab.basis[i]]:
                row = tab.rows[i]
                col = next((j for j in range(ncols) if not artificial[j] and row[j] != 0), None)
                if col is None:
                    del tab.rows[i]
                    del tab.rhs[i]
                    del tab.basis[i]
                    continue
                tab.pivot(i, col, [_Q(0)] * ncols, [_Q(0)])
            i += 1

    cost = [_Q(0)] * ncols
    for j in range(n):
        cj = _Q(objective[j])
        p, m = colmap[j]
        cost[p] = cj
        if m >= 0:
            cost[m] = -cj
    obj = list(cost)
    obj_rhs = [_Q(0)]
    for i, bj in enumerate(tab.basis):
        cb = cost[bj]
        if cb != 0:
            for j, x in enumerate(tab.rows[i]):
                if x != 0:
                    obj[j] -= cb * x
            obj_rhs[0] -= cb * tab.rhs[i]
    allowed = [not art for art in artificial]
    status = tab.run(obj, obj_rhs, allowed)

    values = [_Q(0)] * ncols
    for i, bj in enumerate(tab.basis):
        values[bj] = tab.rhs[i]
    point = []
    for j in range(n):
        p, m = colmap[j]
        v = values[p] - (values[m] if m >= 0 else 0)
        point.append(_frac(v))
    point = tuple(point)
    if status == "unbounded":
        return LPResult("unbounded", None, point)
    return LPResult("optimal", _frac(-obj_rhs[0]), point)


def check_point(constraints: Iterable, point: Sequence) -> bool:
    """Exact check that ``point`` satisfies every constraint."""
    for coeffs, rel, rhs in constraints:
        lhs = sum((Fraction(a) * x for a, x in zip(coeffs, point)), Fraction(0))
        if rel == "<=" and not lhs <= rhs:
            return False
        if rel == ">=" and not lhs >= rhs:
            return False
        if rel == "==" and lhs != rhs:
            return False
    return True


@dataclass
class Feasibility:
    """Outcome of :func:`lp_feasible`.

    Truthy iff feasible.  ``point`` is an exact feasible point; for an
    infeasible system ``witness`` holds Farkas multipliers ``y`` (one per
    constraint, computed on first access) such that combining the
    constraints with ``y`` yields ``0 <= -1``.
    """

    feasible: bool
    point: tuple | None
    constraints: list = field(repr=False, default_factory=list)
    nonneg: object = field(repr=False, default=False)

    def __bool__(self) -> bool:
        return self.feasible

    @cached_property
    def witness(self) -> tuple | None:
        if self.feasible:
            return None
        return farkas_certificate(self.constraints, self.nonneg)


def lp_feasible(constraints: Iterable, nonneg=False) -> Feasibility:
    """Decide feasibility of a rational linear system exactly."""
    constraints = list(constraints)
    if not constraints:
        raise ValueError("empty constraint system has no dimension")
    n = len(constraints[0][0])
    res = maximize([0] * n, constraints, nonneg=nonneg)
    return Feasibility(res.feasible, res.point if res.feasible else None, constraints, nonneg)


def farkas_certificate(constraints: Sequence, nonneg=False) -> tuple:
    """Multipliers proving infeasibility.

    Constraint ``i`` is read as ``a_i . x (rel) b_i``; the returned ``y`` has
    ``y_i <= 0`` for ``>=`` rows, ``y_i >= 0`` for ``<=`` rows, free for
    equalities, with ``sum y_i a_i`` zero on free variables and nonnegative
    on sign-constrained ones, and ``sum y_i b_i == -1``.
    """
    constraints = list(constraints)
    m = len(constraints)
    n = len(constraints[0][0])
    mask = _nonneg_mask(nonneg, n)
    # substitute y_i = -z_i for >= rows so every multiplier is >= 0 or free
    sign = [(-1 if rel == ">=" else 1) for _, rel, _ in constraints]
    nn = [i for i, (_, rel, _) in enumerate(constraints) if rel != "=="]
    cons = []
    for j in range(n):
        row = [sign[i] * Fraction(constraints[i][0][j]) for i in range(m)]
        cons.append((row, ">=" if mask[j] else "==", 0))
    cons.append(([sign[i] * Fraction(constraints[i][2]) for i in range(m)], "==", -1))
    res = maximize([0] * m, cons, nonneg=nn)
    if not res.feasible:
        raise ValueError("system is feasible; no Farkas certificate exists")
    return tuple(sign[i] * res.point[i] for i in range(m))
