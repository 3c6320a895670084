from __future__ import annotations

import itertools

import numpy as np
import pytest
import sympy
from hypothesis import given, strategies as st
from sympy.polys.domains import GF as SymGF
from sympy.polys.matrices import DomainMatrix

from cliffrep.fields import field
from cliffrep.forms import BinaryForm
from cliffrep.matrix import ExactMatrix
from cliffrep.moduli import (
    UndecidedError,
    algebra_dimension,
    are_equivalent,
    intertwiners,
    is_irreducible,
    search_equivalence,
    tangent_matrix,
    tangent_space_dim,
)
from cliffrep.numeric import NumericRep, jacobian
from cliffrep.pencil import MatrixPencil
from cliffrep.representations import (
    Representation,
    RepresentationError,
    clock_shift,
    conjugate,
    direct_sum,
    gl2_pullback,
    random_equivalent,
)

QQ = field("qq")
F7 = field("gf7")


def test_irreducibility_examples():
    assert is_irreducible(clock_shift(3, F7)) and algebra_dimension(clock_shift(3, F7)) == 9
    s = direct_sum(clock_shift(3, F7), clock_shift(3, F7))
    assert not is_irreducible(s) and algebra_dimension(s) <= 18
    assert algebra_dimension(clock_shift(2, QQ)) == 4


@given(seed=st.integers(0, 10**6))
def test_span_is_conjugation_invariant(seed):
    rep = clock_shift(3, F7)
    assert algebra_dimension(random_equivalent(rep, seed)) == 9
    s = direct_sum(rep, clock_shift(3, F7, 2))
    assert algebra_dimension(random_equivalent(s, seed)) == algebra_dimension(s)


def test_intertwiner_examples():
    rep = clock_shift(3, F7)
    basis = intertwiners(rep, rep)
    assert len(basis) == 1 and basis[0].is_scalar(basis[0].rows[0][0])
    X = ExactMatrix(F7, [[1, 2, 0], [0, 1, 3], [1, 0, 2]])
    c = conjugate(rep, X)
    (Y,) = intertwiners(rep, c)
    # Y is proportional to X
    k = next((i, j) for i in range(3) for j in range(3) if not F7.is_zero(X.rows[i][j]))
    ratio = F7.div(Y.rows[k[0]][k[1]], X.rows[k[0]][k[1]])
    assert Y == X.scale(F7.element(ratio))
    with pytest.raises(RepresentationError, match="size mismatch"):
        intertwiners(rep, direct_sum(rep, rep))


def test_equivalence_examples():
    rep = clock_shift(3, F7)
    assert are_equivalent(rep, random_equivalent(rep, 7))
    assert not are_equivalent(rep, clock_shift(3, F7, 2))
    g = ExactMatrix(F7, [[1, 1], [0, 1]])
    with pytest.raises(RepresentationError, match="form mismatch"):
        are_equivalent(rep, gl2_pullback(rep, g))
    s = direct_sum(rep, rep)
    with pytest.raises(UndecidedError):
        are_equivalent(s, random_equivalent(s, 3))
    # semisimple reducible pairs are separated by Hom dimensions
    assert not are_equivalent(s, direct_sum(rep, clock_shift(3, F7, 2)))
    assert not are_equivalent(s, random_equivalent(direct_sum(clock_shift(3, F7, 2), clock_shift(3, F7, 2)), 1))
    assert search_equivalence(s, random_equivalent(s, 3), seed=1) is not None


def test_negated_b_against_brute_force_grid():
    rep = clock_shift(2, QQ)
    other = Representation(rep.form, MatrixPencil(rep.A, -rep.B))
    verdict = are_equivalent(rep, other)
    found = False
    for entries in itertools.product((-1, 0, 1), repeat=4):
        X = ExactMatrix(QQ, [entries[:2], entries[2:]])
        if X.is_invertible() and X @ rep.A == other.A @ X and X @ rep.B == other.B @ X:
            found = True
            break
    assert verdict == found is True


def _numeric_nullity(rep):
    n = NumericRep.from_representation(rep)
    s = np.linalg.svd(jacobian(n.A, n.B, n.d), compute_uv=False)
    s = np.concatenate([s, np.zeros(2 * n.m**2 - len(s))])
    return int(np.sum(s < 1e-9 * s[0]))


@pytest.mark.parametrize("d,tangent,moduli", [(2, 3, 0), (3, 9, 1), (4, 18, 3)])
def test_tangent_dims_against_dense_oracle(d, tangent, moduli):
    rep = clock_shift(d, field(f"cyc{d}"))
    rpt = tangent_space_dim(rep)
    assert rpt.tangent_dim == tangent == _numeric_nullity(rep)
    assert rpt.moduli_dim == moduli == rpt.predicted
    assert rpt.matches


def test_tangent_matrix_against_symbolic_jacobian():
    # differentiate the symbolic coefficient identities and reduce mod 7
    rep = clock_shift(3, F7)
    m, d = 3, 3
    xs = sympy.symbols(f"x0:{2 * m * m}")
    A0 = sympy.Matrix(3, 3, lambda i, j: int(rep.A.rows[i][j]))
    B0 = sympy.Matrix(3, 3, lambda i, j: int(rep.B.rows[i][j]))
    A = A0 + sympy.Matrix(3, 3, xs[:9])
    B = B0 + sympy.Matrix(3, 3, xs[9:])
    u, v = sympy.symbols("u v")
    P = ((u * A + v * B) ** d).applyfunc(sympy.expand)
    rows = []
    for J in range(d + 1):
        C = P.applyfunc(lambda e: sympy.Poly(e, u, v).coeff_monomial(u ** (d - J) * v**J))
        for p in range(m):
            for q in range(m):
                rows.append([sympy.diff(C[p, q], x).subs({y: 0 for y in xs}) for x in xs])
    dm = DomainMatrix([[SymGF(7)(int(e)) for e in r] for r in rows], (len(rows), len(xs)), SymGF(7))
    Jm = tangent_matrix(rep)
    assert [[int(x) for x in r] for r in Jm.rows] == [[int(e) % 7 for e in r] for r in rows]
    assert tangent_space_dim(rep).tangent_dim == 2 * m * m - dm.rank()


def test_tangent_rejects_reducible():
    with pytest.raises(RepresentationError, match="reducible"):
        tangent_space_dim(direct_sum(clock_shift(3, F7), clock_shift(3, F7)))


def test_tangent_is_conjugation_invariant():
    rep = clock_shift(3, field("cyc3"))
    assert tangent_space_dim(random_equivalent(rep, 5)).tangent_dim == 9
