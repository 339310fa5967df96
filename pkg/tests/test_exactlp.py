import itertools
from dataclasses import replace
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from pathtrop.exactlp import (Constraint, Infeasible, LinearProgram, LPError, Optimal, Unbounded,
                              outcome_to_json, solve, verify_outcome)


def lp1(obj, *rows, eq=()):
    ge = [Constraint(f"r{i}", a, b) for i, (a, b) in enumerate(rows)]
    eqs = [Constraint(f"e{i}", a, b) for i, (a, b) in enumerate(eq)]
    return LinearProgram(tuple(obj), ge, eqs)


def test_simple_optimum():
    lp = lp1((1,), ((1,), 3))
    out = solve(lp)
    assert isinstance(out, Optimal)
    assert out.x == (3,) and out.objective_value == 3 and out.dual == {"r0": 1}
    assert verify_outcome(lp, out)


def test_unbounded():
    lp = lp1((-1,), ((1,), 0))
    out = solve(lp)
    assert isinstance(out, Unbounded)
    assert out.improving_ray == (1,)
    assert verify_outcome(lp, out)


def test_infeasible():
    lp = lp1((0,), ((1,), 1), ((-1,), 0))
    out = solve(lp)
    assert isinstance(out, Infeasible)
    assert out.farkas == {"r0": 1, "r1": 1}
    assert verify_outcome(lp, out)


def test_perturbed_dual_rejected():
    lp = lp1((1,), ((1,), 3))
    out = solve(lp)
    bad = replace(out, dual={"r0": out.dual["r0"] + 1})
    assert not verify_outcome(lp, bad)


def test_negative_farkas_rejected():
    lp = lp1((0,), ((1,), 1), ((-1,), 0))
    assert not verify_outcome(lp, Infeasible({"r0": Fraction(-1), "r1": Fraction(1)}))


def test_equalities_and_bounds():
    lp = LinearProgram((1, 1), [Constraint("a", (1, 2), 4)], [Constraint("e", (1, -1), 1)],
                       lower=(0, 0), upper=(None, 5))
    out = solve(lp)
    assert isinstance(out, Optimal)
    assert out.x == (2, 1) and out.objective_value == 3
    assert verify_outcome(lp, out)


def test_dimension_mismatch():
    with pytest.raises(LPError):
        LinearProgram((1, 0), [Constraint("a", (1,), 0)])
    with pytest.raises(LPError):
        LinearProgram((1,), [Constraint("a", (1,), 0), Constraint("a", (2,), 0)])


def test_json_uses_exact_rationals():
    out = solve(lp1((3,), ((3,), 1)))
    assert outcome_to_json(out)["objective_value"] == "1"
    out = solve(lp1((1,), ((3,), 1)))
    assert outcome_to_json(out)["objective_value"] == "1/3"


# ---------------------------------------------------------------------------
# vertex enumeration oracle

def _solve_square(a, b):
    n = len(a)
    m = [list(map(Fraction, row)) + [Fraction(rhs)] for row, rhs in zip(a, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col] / m[col][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[i][n] / m[i][i] for i in range(n)]


def vertex_oracle(obj, rows):
    """Minimum of obj over {x : a.x >= b} for a bounded polytope, None if empty."""
    n = len(obj)
    best = None
    for subset in itertools.combinations(rows, n):
        x = _solve_square([a for a, _ in subset], [b for _, b in subset])
        if x is None:
            continue
        if all(sum(ai * xi for ai, xi in zip(a, x)) >= b for a, b in rows):
            val = sum(c * xi for c, xi in zip(obj, x))
            best = val if best is None else min(best, val)
    return best


@st.composite
def boxed_lps(draw):
    n = draw(st.integers(1, 4))
    k = draw(st.integers(0, 6))
    coef = st.integers(-4, 4)
    obj = tuple(draw(st.lists(coef, min_size=n, max_size=n)))
    rows = [(tuple(draw(st.lists(coef, min_size=n, max_size=n))), draw(st.integers(-6, 6))) for _ in range(k)]
    return obj, rows


@settings(max_examples=120, deadline=None)
@given(boxed_lps())
def test_matches_vertex_enumeration(data):
    obj, rows = data
    n = len(obj)
    lp = LinearProgram(obj, [Constraint(f"r{i}", a, b) for i, (a, b) in enumerate(rows)],
                       lower=(0,) * n, upper=(5,) * n)
    out = solve(lp)
    assert verify_outcome(lp, out)
    box = [(tuple(1 if j == i else 0 for j in range(n)), 0) for i in range(n)]
    box += [(tuple(-1 if j == i else 0 for j in range(n)), -5) for i in range(n)]
    expected = vertex_oracle(obj, rows + box)
    if expected is None:
        assert isinstance(out, Infeasible)
    else:
        assert isinstance(out, Optimal) and out.objective_value == expected


@settings(max_examples=60, deadline=None)
@given(boxed_lps())
def test_free_variables_round_trip_and_determinism(data):
    obj, rows = data
    lp = LinearProgram(obj, [Constraint(f"r{i}", a, b) for i, (a, b) in enumerate(rows)])
    first, second = solve(lp), solve(lp)
    assert first == second
    assert verify_outcome(lp, first)
