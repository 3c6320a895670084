from __future__ import annotations

import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cliffrep.census import (
    CensusError,
    census_report,
    classify,
    enumerate_solution_array,
    enumerate_solutions,
    gl_order,
)
from cliffrep.fields import field
from cliffrep.forms import BinaryForm, curve_points
from cliffrep.gf import GFTables
from cliffrep.matrix import ExactMatrix
from cliffrep.moduli import are_equivalent, is_irreducible
from cliffrep.pencil import MatrixPencil, clifford_check
from cliffrep.representations import Representation, clock_shift, direct_sum, random_equivalent
from cliffrep.vdb import fiber_dimension

F2 = field("gf2")
FERMAT3 = BinaryForm(F2, [1, 0, 0, 1])


def _enc(T, M):
    return np.array([[T.enc(x) for x in r] for r in M.rows], dtype=np.int64)


@pytest.mark.parametrize("name", ["gf2", "gf3", "gf4", "gf7", "gf9", "gf2^3"])
@given(seed=st.integers(0, 10**6), n=st.integers(1, 4))
def test_gf_tables_agree_with_exact(name, seed, n):
    F = field(name)
    T = GFTables(F)
    rng = random.Random(seed)
    X = ExactMatrix(F, [[F.random(rng) for _ in range(n)] for _ in range(n)], raw=True)
    Y = ExactMatrix(F, [[F.random(rng) for _ in range(n)] for _ in range(n)], raw=True)
    assert (T.matmul(_enc(T, X), _enc(T, Y)) == _enc(T, X @ Y)).all()
    assert (T.add(_enc(T, X), _enc(T, Y)) == _enc(T, X + Y)).all()
    assert T.batched_rank(np.stack([_enc(T, X), _enc(T, Y)])).tolist() == [X.rank(), Y.rank()]
    if X.is_invertible():
        assert (T.inverse(_enc(T, X)) == _enc(T, X.inverse())).all()


def test_f2_census():
    rpt = census_report(FERMAT3, r=1)
    assert rpt.curve_point_count == 3
    assert rpt.predicted_irreducible_classes == 2
    assert rpt.irreducible_class_count == 2 and rpt.prediction_matches
    assert rpt.total_solutions == 336 and rpt.reducible_solution_count == 0
    assert rpt.conservation_ok and rpt.orbit_sizes_ok
    assert all(c.orbit_size == gl_order(3, 2) for c in rpt.classes)
    assert rpt.stats.stage1_kept < 512


@pytest.mark.parametrize("m", [2, 4])
def test_divisibility_gives_no_solutions(m):
    sols, _, _ = enumerate_solution_array(FERMAT3, m)
    assert len(sols) == 0


def test_every_solution_satisfies_clifford_and_pipeline_is_complete():
    sols = list(enumerate_solutions(FERMAT3, 3))
    assert len(sols) == 336
    for p in sols:
        assert clifford_check(p, FERMAT3).ok
    # stage 1 keeps exactly the A with A^3 = I, counted here by brute force
    all_A = [ExactMatrix(F2, [[(i >> (8 - 3 * r - c)) & 1 for c in range(3)] for r in range(3)]) for i in range(512)]
    cubes = sum(1 for A in all_A if A**3 == ExactMatrix.identity(F2, 3))
    _, stats, _ = enumerate_solution_array(FERMAT3, 3)
    assert stats.stage1_kept == cubes


def test_m2_brute_force_over_all_pairs():
    # 2^8 pairs: exhaustive oracle for the empty m = 2 stream
    mats = [ExactMatrix(F2, [[(i >> 3) & 1, (i >> 2) & 1], [(i >> 1) & 1, i & 1]]) for i in range(16)]
    assert not any(clifford_check(MatrixPencil(A, B), FERMAT3).ok for A in mats for B in mats)


def test_class_representatives_have_unit_fibers():
    rpt = census_report(FERMAT3, r=1)
    for c in rpt.classes:
        rep = Representation(FERMAT3, c.representative)
        assert is_irreducible(rep)
        for p in curve_points(FERMAT3):
            assert fiber_dimension(rep, p) == 1
    a, b = (Representation(FERMAT3, c.representative) for c in rpt.classes)
    assert not are_equivalent(a, b)


def test_classify_examples():
    F7 = field("gf7")
    rep = clock_shift(3, F7)
    classes, red = classify([rep.pencil, random_equivalent(rep, 3).pencil], rep.form)
    assert len(classes) == 1 and classes[0].orbit_size == 2 and red == 0
    s = direct_sum(rep, rep)
    classes, red = classify([s.pencil, random_equivalent(s, 1).pencil], rep.form)
    assert classes == [] and red == 2


def test_census_errors():
    with pytest.raises(CensusError, match="nondegenerate"):
        next(enumerate_solutions(BinaryForm(field("gf3"), [0, 1, 0, 0]), 2))
    with pytest.raises(CensusError, match="divides"):
        census_report(BinaryForm(field("gf3"), [1, 0, 0, 1]), r=1)
    with pytest.raises(CensusError, match="finite"):
        census_report(BinaryForm(field("qq"), [1, 0, 0, 1]), r=1)
    with pytest.raises(CensusError, match="guard"):
        census_report(BinaryForm(field("gf7"), [1, 0, 0, 1]), r=2)


def test_parallel_matches_serial():
    a = census_report(FERMAT3, r=1, jobs=1).to_json()
    b = census_report(FERMAT3, r=1, jobs=3).to_json()
    assert a == b
