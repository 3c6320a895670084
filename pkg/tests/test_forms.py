from __future__ import annotations

import itertools
import math

import pytest
from hypothesis import given, strategies as st

from cliffrep.fields import field
from cliffrep.forms import (
    BinaryForm,
    FormError,
    curve_is_smooth,
    curve_points,
    evaluate,
    genus,
    gl2_transform,
    is_nondegenerate,
)
from cliffrep.matrix import ExactMatrix

QQ = field("qq")


def brute_force_point_count(f):
    """Normalized projective points (a : b : c) with c^d = f(a, b), by full enumeration."""
    F = f.field
    els = list(F.elements())
    d = f.degree
    seen = set()
    for a, b, c in itertools.product(els, repeat=3):
        if a == F.zero and b == F.zero:
            continue
        if F.pow(c, d) != evaluate(f, F.element(a), F.element(b)).value:
            continue
        lead = a if a != F.zero else b
        inv = F.inv(lead)
        seen.add((F.mul(a, inv), F.mul(b, inv), F.mul(c, inv)))
    return len(seen)


def test_evaluate_examples():
    F2 = field("gf2")
    f = BinaryForm.fermat(F2, 3)
    assert evaluate(f, F2(1), F2(1)) == F2(0)
    assert evaluate(f, F2(1), F2(0)) == F2(1)
    g = BinaryForm(QQ, [1, 0, 2, 0, 1])
    assert evaluate(g, QQ(1), QQ(1)) == QQ(4)


def test_nondegeneracy_examples():
    assert is_nondegenerate(BinaryForm(QQ, [1, 0, 0, 1]))
    assert is_nondegenerate(BinaryForm(QQ, [0, 1, 0]))  # u v
    assert not is_nondegenerate(BinaryForm(QQ, [0, 1, 0, 0]))  # u^2 v
    assert not is_nondegenerate(BinaryForm(QQ, [0, 1, 0, 0, 0]))  # u^3 v


@pytest.mark.parametrize("d,g", [(2, 0), (3, 1), (4, 3), (5, 6), (6, 10)])
def test_genus(d, g):
    assert genus(d) == g


def test_smoothness_examples():
    assert curve_is_smooth(BinaryForm(QQ, [1, 0, 0, 1]))
    assert not curve_is_smooth(BinaryForm(field("gf3"), [1, 0, 0, 1]))
    assert not curve_is_smooth(BinaryForm(QQ, [0, 1, 0, 0]))


def test_gl2_examples():
    f = BinaryForm(QQ, [1, 0, 0, 1])
    assert gl2_transform(f, ExactMatrix.identity(QQ, 2)) == f
    assert gl2_transform(f, ExactMatrix(QQ, [[0, 1], [1, 0]])) == f
    g = BinaryForm(QQ, [1, 0, 1])
    assert gl2_transform(g, ExactMatrix(QQ, [[1, 1], [0, 1]])) == BinaryForm(QQ, [1, 2, 2])
    with pytest.raises(Exception):
        gl2_transform(g, ExactMatrix(QQ, [[1, 1], [1, 1]]))


@given(st.lists(st.integers(-4, 4), min_size=3, max_size=6), st.integers(-3, 3), st.integers(-3, 3),
       st.integers(-3, 3), st.integers(-3, 3), st.integers(-5, 5), st.integers(-5, 5))
def test_gl2_transform_is_substitution(coeffs, p, q, r, s, a, b):
    if not any(coeffs) or p * s - q * r == 0:
        return
    f = BinaryForm(QQ, coeffs)
    h = gl2_transform(f, ExactMatrix(QQ, [[p, q], [r, s]]))
    assert evaluate(h, QQ(a), QQ(b)) == evaluate(f, QQ(p * a + q * b), QQ(r * a + s * b))


@pytest.mark.parametrize("name,coeffs,count", [("gf2", [1, 0, 0, 1], 3), ("gf3", [1, 0, 1], 4),
                                               ("gf4", [1, 0, 0, 1], 9)])
def test_curve_point_examples(name, coeffs, count):
    f = BinaryForm(field(name), coeffs)
    assert len(curve_points(f)) == count == brute_force_point_count(f)


def test_curve_points_f2_listing():
    pts = {tuple(p.to_strings()) for p in curve_points(BinaryForm(field("gf2"), [1, 0, 0, 1]))}
    assert pts == {("1", "0", "1"), ("0", "1", "1"), ("1", "1", "0")}


@pytest.mark.parametrize("name,d", [(n, d) for n in ["gf2", "gf4", "gf5", "gf7", "gf8", "gf13"] for d in (3, 4)
                                    if d % field(n).characteristic])
def test_weil_bound_and_brute_force(name, d):
    F = field(name)
    f = BinaryForm.fermat(F, d)
    assert curve_is_smooth(f)
    n = len(curve_points(f))
    assert abs(n - (F.order + 1)) <= 2 * genus(d) * math.sqrt(F.order)
    if F.order <= 8:
        assert n == brute_force_point_count(f)


def test_form_errors():
    with pytest.raises(FormError):
        BinaryForm(QQ, [0, 0, 0])
    with pytest.raises(FormError):
        BinaryForm(QQ, [1, 1])
