from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from cliffrep.fields import field
from cliffrep.forms import BinaryForm, gl2_transform
from cliffrep.matrix import ExactMatrix
from cliffrep.pencil import MatrixPencil, clifford_check
from cliffrep.representations import (
    Representation,
    RepresentationError,
    clock_shift,
    conjugate,
    direct_sum,
    gl2_pullback,
    random_equivalent,
    random_gl2,
)
from conftest import least_prime_1_mod

QQ = field("qq")
F7 = field("gf7")


def test_clock_shift_d2_over_qq():
    rep = clock_shift(2, QQ)
    assert rep.A == ExactMatrix(QQ, [[1, 0], [0, -1]])
    assert rep.B == ExactMatrix(QQ, [[0, 1], [1, 0]])
    assert rep.form == BinaryForm(QQ, [1, 0, 1])


def test_clock_shift_d3_over_f7():
    rep = clock_shift(3, F7)
    assert rep.A == ExactMatrix.diag(F7, [F7(1), F7(2), F7(4)])
    assert rep.B == ExactMatrix(F7, [[0, 0, 1], [1, 0, 0], [0, 1, 0]])


def test_clock_shift_errors():
    with pytest.raises(RepresentationError):
        clock_shift(3, field("gf5"))
    with pytest.raises(RepresentationError):
        clock_shift(3, field("gf3"))
    with pytest.raises(RepresentationError):
        clock_shift(4, field("cyc4"), power=2)


@pytest.mark.parametrize("d", [2, 3, 4, 5, 6])
def test_clock_shift_suite(d):
    for F in (field(f"cyc{d}"), field(f"gf{least_prime_1_mod(d)}")):
        for k in range(1, d):
            try:
                rep = clock_shift(d, F, k)
            except RepresentationError:
                continue
            assert clifford_check(rep.pencil, rep.form).ok
            # A B = z B A with z a primitive root
            AB, BA = rep.A @ rep.B, rep.B @ rep.A
            assert AB != BA or d == 1


def test_gl2_pullback_examples():
    rep = clock_shift(2, QQ)
    assert gl2_pullback(rep, ExactMatrix.identity(QQ, 2)).pencil == rep.pencil
    sw = gl2_pullback(rep, ExactMatrix(QQ, [[0, 1], [1, 0]]))
    assert sw.A == rep.B and sw.B == rep.A
    sh = gl2_pullback(rep, ExactMatrix(QQ, [[1, 1], [0, 1]]))
    assert sh.form == BinaryForm(QQ, [1, 2, 2])
    assert sh.A == rep.A and sh.B == rep.A + rep.B


@given(seed=st.integers(0, 10**6), d=st.sampled_from([2, 3, 4]))
def test_pullback_and_conjugate_stay_valid(seed, d):
    F = field(f"cyc{d}")
    rep = clock_shift(d, F)
    g = random_gl2(F, random.Random(seed))
    pb = gl2_pullback(rep, g)
    assert pb.form == gl2_transform(rep.form, g)
    assert clifford_check(pb.pencil, pb.form).ok
    eq = random_equivalent(pb, seed)
    assert clifford_check(eq.pencil, eq.form).ok


def test_direct_sum_examples():
    r3 = clock_shift(3, F7)
    s = direct_sum(r3, r3)
    assert (s.m, s.r) == (6, 2)
    t = direct_sum(s, r3)
    assert (t.m, t.r) == (9, 3)
    with pytest.raises(RepresentationError):
        direct_sum(clock_shift(2, F7), r3)


def test_conjugate_examples():
    rep = clock_shift(3, F7)
    assert conjugate(rep, ExactMatrix.identity(F7, 3)) == rep
    assert conjugate(clock_shift(2, QQ), ExactMatrix.scalar(QQ, 2, QQ(2).value)) == clock_shift(2, QQ)
    P = ExactMatrix(F7, [[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    c = conjugate(rep, P)
    assert c.A == ExactMatrix.diag(F7, [F7(2), F7(1), F7(4)])


def test_random_equivalent_deterministic():
    rep = clock_shift(3, F7)
    assert random_equivalent(rep, 1) == random_equivalent(rep, 1)
    assert any(random_equivalent(rep, s) != rep for s in range(1, 6))


def test_construction_rejects_bad_pencils():
    rep = clock_shift(3, F7)
    rows = [list(r) for r in rep.A.rows]
    rows[0][0] = F7.from_int(3)  # 3^3 = 6 != 1
    bad = MatrixPencil(ExactMatrix(F7, rows, raw=True), rep.B)
    with pytest.raises(RepresentationError, match="coefficient 0"):
        Representation(rep.form, bad)
    with pytest.raises(RepresentationError):
        Representation(BinaryForm.fermat(F7, 3), MatrixPencil(ExactMatrix.identity(F7, 2), ExactMatrix.identity(F7, 2)))


def test_immutable():
    rep = clock_shift(2, QQ)
    with pytest.raises(AttributeError):
        rep.r = 5
