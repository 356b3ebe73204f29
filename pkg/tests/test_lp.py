from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import linprog

from freesum.lp import check_point, farkas_certificate, lp_feasible, maximize

coef = st.integers(-4, 4)
REL = ("<=", ">=", "==")


@st.composite
def systems(draw):
    n = draw(st.integers(1, 3))
    m = draw(st.integers(1, 5))
    cons = []
    for _ in range(m):
        row = draw(st.lists(coef, min_size=n, max_size=n))
        cons.append((row, draw(st.sampled_from(REL)), draw(coef)))
    obj = draw(st.lists(coef, min_size=n, max_size=n))
    nonneg = draw(st.booleans())
    return obj, cons, nonneg


def scipy_status(obj, cons, nonneg):
    a_ub, b_ub, a_eq, b_eq = [], [], [], []
    for row, rel, rhs in cons:
        if rel == "<=":
            a_ub.append(row)
            b_ub.append(rhs)
        elif rel == ">=":
            a_ub.append([-x for x in row])
            b_ub.append(-rhs)
        else:
            a_eq.append(row)
            b_eq.append(rhs)
    res = linprog(
        -np.array(obj, dtype=float),
        A_ub=np.array(a_ub, dtype=float) if a_ub else None,
        b_ub=b_ub or None,
        A_eq=np.array(a_eq, dtype=float) if a_eq else None,
        b_eq=b_eq or None,
        bounds=[(0, None) if nonneg else (None, None)] * len(obj),
        method="highs",
    )
    status = {0: "optimal", 2: "infeasible", 3: "unbounded"}[res.status]
    return status, (-res.fun if res.status == 0 else None)


@settings(max_examples=200, deadline=None)
@given(systems())
def test_simplex_agrees_with_floating_point_solver(system):
    obj, cons, nonneg = system
    ours = maximize(obj, cons, nonneg=nonneg)
    status, value = scipy_status(obj, cons, nonneg)
    assert ours.status == status
    if status == "optimal":
        assert float(ours.value) == pytest.approx(value, abs=1e-7)
        assert check_point(cons, ours.point)
        assert sum(Fraction(c) * x for c, x in zip(obj, ours.point)) == ours.value


@settings(max_examples=150, deadline=None)
@given(systems())
def test_infeasible_systems_carry_farkas_certificates(system):
    _, cons, nonneg = system
    res = lp_feasible(cons, nonneg=nonneg)
    if res:
        assert check_point(cons, res.point)
        return
    y = res.witness
    n = len(cons[0][0])
    combo = [sum(Fraction(yi) * row[j] for yi, (row, _, _) in zip(y, cons)) for j in range(n)]
    for yi, (_, rel, _) in zip(y, cons):
        if rel == "<=":
            assert yi >= 0
        elif rel == ">=":
            assert yi <= 0
    if nonneg:
        assert all(c >= 0 for c in combo)
    else:
        assert all(c == 0 for c in combo)
    assert sum(Fraction(yi) * rhs for yi, (_, _, rhs) in zip(y, cons)) == -1


def test_exact_optimum_is_a_fraction():
    res = maximize([1, 1], [([3, 1], "<=", 1), ([1, 3], "<=", 1)], nonneg=True)
    assert res.status == "optimal"
    assert res.value == Fraction(1, 2)
    assert res.point == (Fraction(1, 4), Fraction(1, 4))


def test_degenerate_cycling_example_terminates():
    # Beale's example cycles under the textbook rule; Bland's rule does not
    cons = [
        ([Fraction(1, 4), -8, -1, 9], "<=", 0),
        ([Fraction(1, 2), -12, Fraction(-1, 2), 3], "<=", 0),
        ([0, 0, 1, 0], "<=", 1),
    ]
    res = maximize([Fraction(3, 4), -20, Fraction(1, 2), -6], cons, nonneg=True)
    assert res.status == "optimal"
    assert res.value == Fraction(5, 4)


def test_statuses():
    assert maximize([1], [([1], ">=", 0)]).status == "unbounded"
    assert maximize([1], [([1], ">=", 2), ([1], "<=", 1)]).status == "infeasible"
    with pytest.raises(ValueError):
        farkas_certificate([([1], "<=", 1)])
