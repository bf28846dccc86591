import random
from fractions import Fraction

import numpy as np
import pytest
from scipy.optimize import linprog

from hgraphon.simplex import INFEASIBLE, OPTIMAL, UNBOUNDED, solve_equality_lp

F = Fraction


def check_farkas(result, lhs, rhs):
    y = result.farkas
    assert y is not None
    assert sum(yi * bi for yi, bi in zip(y, rhs)) > 0
    ncols = len(lhs[0])
    for j in range(ncols):
        assert sum(y[i] * lhs[i][j] for i in range(len(lhs))) <= 0


def test_simple_optimum():
    # max x subject to x + y = 1
    res = solve_equality_lp([F(1), F(0)], [[F(1), F(1)]], [F(1)])
    assert res.status == OPTIMAL
    assert res.value == 1
    assert res.solution == (F(1), F(0))


def test_two_constraints_exact():
    # max x + 2y subject to x + y = 3/2, x - y = 1/2  =>  x = 1, y = 1/2
    res = solve_equality_lp(
        [F(1), F(2)],
        [[F(1), F(1)], [F(1), F(-1)]],
        [F(3, 2), F(1, 2)],
    )
    assert res.status == OPTIMAL
    assert res.solution == (F(1), F(1, 2))
    assert res.value == F(2)


def test_infeasible_negative_rhs():
    lhs = [[F(1), F(1)]]
    rhs = [F(-1)]
    res = solve_equality_lp([F(0), F(0)], lhs, rhs)
    assert res.status == INFEASIBLE
    check_farkas(res, lhs, rhs)


def test_infeasible_contradictory_rows():
    lhs = [[F(1), F(1)], [F(1), F(1)]]
    rhs = [F(1), F(2)]
    res = solve_equality_lp([F(1), F(0)], lhs, rhs)
    assert res.status == INFEASIBLE
    check_farkas(res, lhs, rhs)


def test_unbounded():
    # max x subject to y = 1 leaves x free to grow
    res = solve_equality_lp([F(1), F(0)], [[F(0), F(1)]], [F(1)])
    assert res.status == UNBOUNDED


def test_redundant_row_is_dropped():
    lhs = [[F(1), F(1)], [F(2), F(2)]]
    rhs = [F(1), F(2)]
    res = solve_equality_lp([F(1), F(0)], lhs, rhs)
    assert res.status == OPTIMAL
    assert res.value == 1


def test_degenerate_vertex_terminates():
    # multiple constraints meeting at one point; Bland's rule must not cycle
    lhs = [
        [F(1), F(1), F(1)],
        [F(1), F(0), F(0)],
        [F(0), F(1), F(0)],
    ]
    rhs = [F(1), F(1), F(0)]
    res = solve_equality_lp([F(1), F(1), F(-1)], lhs, rhs)
    assert res.status == OPTIMAL
    assert res.solution == (F(1), F(0), F(0))


def test_zero_rows():
    res = solve_equality_lp([F(1)], [], [])
    assert res.status == OPTIMAL and res.value == 0


def test_against_scipy_on_random_feasible_problems():
    rng = random.Random(20240810)
    for _ in range(60):
        m = rng.randint(1, 4)
        n = rng.randint(m, m + 4)
        lhs = [[F(rng.randint(-3, 3)) for _ in range(n)] for _ in range(m)]
        hidden = [F(rng.randint(0, 3)) for _ in range(n)]
        rhs = [sum(row[j] * hidden[j] for j in range(n)) for row in lhs]
        cost = [F(rng.randint(-3, 3)) for _ in range(n)]

        res = solve_equality_lp(cost, lhs, rhs)
        ref = linprog(
            c=[-float(c) for c in cost],
            A_eq=np.array([[float(v) for v in row] for row in lhs]),
            b_eq=np.array([float(v) for v in rhs]),
            bounds=[(0, None)] * n,
            method="highs",
        )
        if res.status == OPTIMAL:
            assert ref.status == 0
            assert abs(float(res.value) - (-ref.fun)) < 1e-8
            # solution must satisfy the constraints exactly
            for row, b in zip(lhs, rhs):
                assert sum(r * s for r, s in zip(row, res.solution)) == b
            assert all(v >= 0 for v in res.solution)
        elif res.status == UNBOUNDED:
            assert ref.status == 3
        else:
            pytest.fail("constructed problems are feasible by design")


def test_against_scipy_on_random_infeasible_problems():
    rng = random.Random(77)
    found = 0
    for _ in range(200):
        m = rng.randint(2, 4)
        n = rng.randint(1, 3)
        lhs = [[F(rng.randint(-2, 2)) for _ in range(n)] for _ in range(m)]
        rhs = [F(rng.randint(-3, 3)) for _ in range(m)]
        res = solve_equality_lp([F(0)] * n, lhs, rhs)
        ref = linprog(
            c=[0.0] * n,
            A_eq=np.array([[float(v) for v in row] for row in lhs]),
            b_eq=np.array([float(v) for v in rhs]),
            bounds=[(0, None)] * n,
            method="highs",
        )
        assert (res.status == INFEASIBLE) == (ref.status == 2)
        if res.status == INFEASIBLE:
            check_farkas(res, lhs, rhs)
            found += 1
    assert found > 20
