"""Irreducibility, equivalence, and local moduli dimension of representations."""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass

from .forms import genus
from .matrix import ExactMatrix, MatrixError, _matmul_raw, rref_raw
from .pencil import pencil_power_raw
from .representations import Representation, RepresentationError


class UndecidedError(RuntimeError):
    """Both representations are reducible; exact equivalence is not decided here."""


def _vec(M) -> list:
    return [x for r in M for x in r]


class _EchelonBasis:
    """Incremental semi-echelon basis of raw vectors."""

    def __init__(self, F):
        self.F = F
        self.rows: list[tuple[int, list]] = []

    def reduce(self, v: list) -> list:
        F = self.F
        z = F.zero
        v = list(v)
        for piv, row in self.rows:
            c = v[piv]
            if c != z:
                for j in range(len(v)):
                    if row[j] != z:
                        v[j] = F.sub(v[j], F.mul(c, row[j]))
        return v

    def add(self, v: list) -> bool:
        F = self.F
        v = self.reduce(v)
        piv = next((i for i, x in enumerate(v) if x != F.zero), None)
        if piv is None:
            return False
        inv = F.inv(v[piv])
        self.rows.append((piv, [F.mul(inv, x) for x in v]))
        return True

    def __len__(self):
        return len(self.rows)


def algebra_dimension(rep: Representation) -> int:
    """Dimension of the span of all words in A and B (the generated algebra)."""
    F = rep.field
    if not F.is_exact:
        raise MatrixError("word span needs an exact field")
    m = rep.m
    full = m * m
    ident = ExactMatrix.identity(F, m).rows
    basis = _EchelonBasis(F)
    basis.add(_vec(ident))
    queue = [ident]
    gens = (rep.A.rows, rep.B.rows)
    # each accepted word raises the dimension, so at most m^2 rounds
    while queue and len(basis) < full:
        W = queue.pop(0)
        for G in gens:
            P = _matmul_raw(F, G, W)
            if basis.add(_vec(P)):
                queue.append(P)
                if len(basis) == full:
                    break
    return len(basis)


def is_irreducible(rep: Representation) -> bool:
    """Absolute irreducibility: A and B generate all of M_m (Burnside)."""
    return algebra_dimension(rep) == rep.m * rep.m


def _intertwiner_system(rep1: Representation, rep2: Representation) -> list[list]:
    """Rows of the 2m^2 x m^2 system ``X A1 = A2 X``, ``X B1 = B2 X``."""
    F = rep1.field
    m = rep1.m
    rows = []
    for G1, G2 in ((rep1.A.rows, rep2.A.rows), (rep1.B.rows, rep2.B.rows)):
        for p in range(m):
            for q in range(m):
                row = [F.zero] * (m * m)
                # (X G1)[p][q] = sum_j X[p][j] G1[j][q]
                for j in range(m):
                    row[p * m + j] = F.add(row[p * m + j], G1[j][q])
                # (G2 X)[p][q] = sum_i G2[p][i] X[i][q]
                for i in range(m):
                    row[i * m + q] = F.sub(row[i * m + q], G2[p][i])
                rows.append(row)
    return rows


def intertwiners(rep1: Representation, rep2: Representation) -> list[ExactMatrix]:
    """Basis of ``{X : X A1 = A2 X, X B1 = B2 X}``."""
    if rep1.form != rep2.form:
        raise RepresentationError("representations of different forms")
    if rep1.m != rep2.m:
        raise RepresentationError(f"size mismatch: {rep1.m} vs {rep2.m}")
    F = rep1.field
    m = rep1.m
    sys = ExactMatrix(F, _intertwiner_system(rep1, rep2), raw=True)
    out = []
    for v in sys.nullspace_raw():
        out.append(ExactMatrix(F, [v[i * m:(i + 1) * m] for i in range(m)], raw=True))
    return out


def are_equivalent(rep1: Representation, rep2: Representation) -> bool:
    """Exact equivalence test when at least one side is irreducible.

    For two reducible inputs, unequal dimensions of ``Hom(1, 2)``,
    ``End(1)`` and ``End(2)`` still certify inequivalence (an isomorphism
    would identify the three spaces).  Otherwise raises
    :class:`UndecidedError`; see :func:`search_equivalence`.
    """
    if rep1.form != rep2.form:
        raise RepresentationError("form mismatch: representations of different Clifford algebras")
    if rep1.m != rep2.m:
        return False
    basis = intertwiners(rep1, rep2)
    if is_irreducible(rep1) or is_irreducible(rep2):
        return len(basis) == 1 and basis[0].is_invertible()
    dims = {len(basis), len(intertwiners(rep1, rep1)), len(intertwiners(rep2, rep2))}
    if len(dims) > 1:
        return False
    raise UndecidedError("both representations are reducible; use the randomized search")


def search_equivalence(rep1: Representation, rep2: Representation, trials: int = 64, seed: int = 0):
    """Look for an invertible intertwiner among random combinations.

    Returns the intertwiner when found (a certificate of equivalence) and
    ``None`` otherwise, which only means "probably inequivalent".
    """
    basis = intertwiners(rep1, rep2)
    if not basis:
        return None
    F = rep1.field
    rng = random.Random(seed)
    for t in range(trials):
        X = ExactMatrix.zeros(F, rep1.m)
        for Y in basis:
            c = F.one if (t == 0 and len(basis) == 1) else F.random(rng, 5)
            X = X + Y.scale(F.element(c))
        if X.is_invertible():
            return X
    return None


@dataclass(frozen=True)
class TangentReport:
    tangent_dim: int
    orbit_dim: int
    moduli_dim: int
    predicted: int
    matches: bool
    m: int
    r: int
    genus: int

    def to_json(self) -> dict:
        return asdict(self)


def tangent_matrix(rep: Representation) -> ExactMatrix:
    """Linearization of the d + 1 coefficient identities at (A, B).

    Column ``i*m + j`` is the direction ``Adot = E_ij``, column
    ``m^2 + i*m + j`` is ``Bdot = E_ij``; row ``J*m^2 + p*m + q`` is entry
    (p, q) of the ``u^(d-J) v^J`` coefficient of
    ``sum_k M^k (u Adot + v Bdot) M^(d-1-k)``.
    """
    F = rep.field
    m, d = rep.m, rep.d
    m2 = m * m
    A, B = rep.A.rows, rep.B.rows
    ident = ExactMatrix.identity(F, m).rows
    powers = [[ident]] + [pencil_power_raw(F, A, B, k) for k in range(1, d)]
    z = F.zero
    add, mul = F.add, F.mul
    J = [[z] * (2 * m2) for _ in range((d + 1) * m2)]
    for k in range(d):
        left, right = powers[k], powers[d - 1 - k]
        for s, P in enumerate(left):
            for t, Q in enumerate(right):
                for which, shift in ((0, 0), (1, 1)):
                    base_row = (s + t + shift) * m2
                    col0 = which * m2
                    for i in range(m):
                        Pcol = [P[p][i] for p in range(m)]
                        if all(x == z for x in Pcol):
                            continue
                        for j in range(m):
                            Qrow = Q[j]
                            col = col0 + i * m + j
                            for p in range(m):
                                x = Pcol[p]
                                if x == z:
                                    continue
                                rbase = base_row + p * m
                                for q in range(m):
                                    y = Qrow[q]
                                    if y != z:
                                        row = J[rbase + q]
                                        row[col] = add(row[col], mul(x, y))
    return ExactMatrix(F, J, raw=True)


def tangent_space_dim(rep: Representation) -> TangentReport:
    """Exact tangent dimension of the representation variety at an irreducible point."""
    if not is_irreducible(rep):
        raise RepresentationError("tangent_space_dim needs an irreducible representation (reducible input)")
    m, r = rep.m, rep.r
    g = genus(rep.d)
    Jm = tangent_matrix(rep)
    tangent = Jm.ncols - len(rref_raw(rep.field, [list(row) for row in Jm.rows], Jm.ncols)[1])
    orbit = m * m - 1
    predicted = r * r * (g - 1) + 1
    moduli = tangent - orbit
    return TangentReport(tangent, orbit, moduli, predicted, moduli == predicted, m, r, g)
