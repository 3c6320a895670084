from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cliffrep.fields import field
from cliffrep.numeric import (
    NumericError,
    NumericRep,
    SolveOptions,
    fiber_diagnostics,
    is_numerically_nondegenerate,
    jacobian_check,
    numeric_tangent_rank,
    random_form,
    residual,
    solve,
)
from cliffrep.representations import clock_shift, direct_sum

CS3 = NumericRep.from_representation(clock_shift(3, field("cyc3")))


def test_residual_examples():
    assert residual(CS3.A, CS3.B, [1, 0, 0, 1]) < 1e-12
    z = np.zeros((3, 3))
    assert residual(z, z, [1, 0, 0, 1]) == pytest.approx(math.sqrt(6))
    A = CS3.A.copy()
    A[0, 1] += 1e-3
    assert 0 < residual(A, CS3.B, [1, 0, 0, 1]) < 1e-1
    with pytest.raises(NumericError):
        residual(np.zeros((2, 2)), np.zeros((3, 3)), [1, 0, 0, 1])


@given(seed=st.integers(0, 10**6))
def test_residual_stable_under_well_conditioned_conjugation(seed):
    rng = np.random.default_rng(seed)
    X = np.eye(3) + 0.3 * (rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)))
    if np.linalg.cond(X) > 1e3:
        return
    Xi = np.linalg.inv(X)
    assert residual(X @ CS3.A @ Xi, X @ CS3.B @ Xi, CS3.coeffs) <= 1e-8


@given(seed=st.integers(0, 10**6), d=st.sampled_from([2, 3, 4]))
def test_jacobian_matches_finite_differences(seed, d):
    rng = np.random.default_rng(seed)
    m = d
    A = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
    B = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
    assert jacobian_check(A, B, random_form(d, seed)) <= 1e-5


@pytest.mark.parametrize("d,nullity,estimate", [(3, 9, 1), (4, 18, 3)])
def test_numeric_tangent_matches_exact(d, nullity, estimate):
    n = NumericRep.from_representation(clock_shift(d, field(f"cyc{d}")))
    est = numeric_tangent_rank(n)
    assert (est.jacobian_nullity, est.moduli_estimate) == (nullity, estimate)
    assert not est.indeterminate


def test_fiber_diagnostics_on_exact_reps():
    assert fiber_diagnostics(CS3).ok
    s = NumericRep.from_representation(direct_sum(clock_shift(3, field("cyc3")), clock_shift(3, field("cyc3"))))
    d = fiber_diagnostics(s)
    assert d.ok and d.nullities == [2] * 10


def test_solve_fermat_cubic():
    res = solve([1, 0, 0, 1], 3, seed=0)
    assert res.success and res.rep.residual <= 1e-10
    assert res.diagnostics.ok and res.jacobian_error <= 1e-5


def test_solve_is_deterministic():
    f = random_form(4, 2)
    a = solve(f, 4, seed=5)
    b = solve(f, 4, seed=5)
    assert np.array_equal(a.rep.A, b.rep.A) and [x.to_json() for x in a.attempts] == [x.to_json() for x in b.attempts]


def test_degenerate_and_shape_preconditions():
    with pytest.raises(NumericError, match="degenerate"):
        solve([1, 4, 6, 4, 1], 4)  # (u + v)^4
    with pytest.raises(NumericError, match="divide"):
        solve([1, 0, 0, 1], 4)
    assert not is_numerically_nondegenerate([0, 0, 1])
    assert is_numerically_nondegenerate([0, 1, 0])


def test_budget_exhausted_reports_best_residual():
    res = solve([1, 0, 0, 1], 3, seed=0, opts=SolveOptions(max_restarts=1, max_iters=1))
    assert not res.success and res.best_residual > 0 and len(res.attempts) == 1


def test_numeric_tangent_requires_solution():
    z = NumericRep([1, 0, 0, 1], np.zeros((3, 3)), np.zeros((3, 3)))
    with pytest.raises(NumericError):
        numeric_tangent_rank(z)
