from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.optimize import linprog

from adorbits import rational as rq
from adorbits.polyhedra import lp


def test_to_fraction_accepts_exact_inputs():
    assert rq.to_fraction(3) == 3
    assert rq.to_fraction("7/3") == Fraction(7, 3)
    assert rq.to_fraction(" -2 ") == -2
    assert rq.to_fraction(np.int64(5)) == 5


@pytest.mark.parametrize("bad", [1.5, "1.5", "2e3", True, None, ""])
def test_to_fraction_refuses_inexact(bad):
    with pytest.raises((TypeError, ValueError)):
        rq.to_fraction(bad)


def test_format_is_always_num_over_den():
    assert rq.format_fraction(Fraction(4)) == "4/1"
    assert rq.format_fraction(Fraction(-6, 4)) == "-3/2"


@given(st.fractions(max_denominator=50))
def test_format_parse_round_trip(x):
    assert rq.parse_fraction(rq.format_fraction(x)) == x


def test_primitive_normal():
    assert rq.primitive(rq.vec(["2/3", "4/3", 0])) == (1, 2, 0)
    assert rq.primitive(rq.vec([-3, 6])) == (-1, 2)


def test_rref_prefers_given_pivot_order():
    rows = [rq.vec([1, 1, 1]), rq.vec([0, 1, 2])]
    R, piv = rq.rref(rows, pivot_order=[2, 1, 0])
    assert piv[0] == 2
    assert rq.rank(rows) == 2


small = st.integers(-5, 5)


@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=3))
def test_nullspace_annihilates(rows):
    rows = [rq.vec(r) for r in rows]
    basis = rq.nullspace(rows, 4)
    assert len(basis) == 4 - rq.rank(rows)
    for v in basis:
        assert all(rq.dot(r, v) == 0 for r in rows)


def test_solve_unique_and_singular():
    assert rq.solve([rq.vec([2, 0]), rq.vec([0, 3])], rq.vec([1, 1])) == (Fraction(1, 2), Fraction(1, 3))
    assert rq.solve([rq.vec([1, 1]), rq.vec([2, 2])], rq.vec([1, 2])) is None


def test_lp_statuses():
    ineqs = [((1, 0), 1), ((0, 1), 2), ((-1, -1), -10)]
    res = lp.minimize(rq.vec([1, 1]), [(rq.vec(n), Fraction(b)) for n, b in ineqs], [])
    assert res.status == lp.OPTIMAL and res.value == 3
    res = lp.minimize(rq.vec([-1, 0]), [(rq.vec(n), Fraction(b)) for n, b in ineqs[:2]], [])
    assert res.status == lp.UNBOUNDED
    bad = [(rq.vec([1, 0]), Fraction(2)), (rq.vec([-1, 0]), Fraction(-1))]
    assert lp.minimize(rq.vec([0, 0]), bad, []).status == lp.INFEASIBLE
    assert lp.feasible_point(bad, [], 2) is None


@given(
    st.lists(st.tuples(small, small, small, small), min_size=1, max_size=6),
    st.tuples(small, small, small),
)
def test_lp_agrees_with_scipy(rows, cost):
    # bounded box keeps both solvers on the optimal branch
    ineqs = [(rq.vec(r[:3]), Fraction(r[3])) for r in rows]
    for i in range(3):
        e = [0, 0, 0]
        e[i] = 1
        ineqs.append((rq.vec(e), Fraction(-10)))
        e[i] = -1
        ineqs.append((rq.vec(e), Fraction(-10)))
    ours = lp.minimize(rq.vec(cost), ineqs, [])
    A = -np.array([[float(v) for v in n] for n, _ in ineqs])
    b = -np.array([float(v) for _, v in ineqs])
    ref = linprog(cost, A_ub=A, b_ub=b, bounds=[(None, None)] * 3, method="highs")
    if ref.status == 2:
        assert ours.status == lp.INFEASIBLE
    else:
        assert ours.status == lp.OPTIMAL
        assert abs(float(ours.value) - ref.fun) < 1e-7
        assert all(rq.dot(n, ours.x) >= b0 for n, b0 in ineqs)


def test_lp_with_redundant_equalities():
    # dependent equality rows are dropped after phase 1
    one = (Fraction(1),)
    eqs = [((Fraction(0),), Fraction(0)), (one, Fraction(3)), ((Fraction(2),), Fraction(6))]
    res = lp.minimize(one, [(one, Fraction(2))], eqs)
    assert res.status == lp.OPTIMAL and res.x == (3,)
