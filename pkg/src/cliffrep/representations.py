"""Representations of C_f as verified matrix pencils, plus constructors."""

from __future__ import annotations

import math
import random

from .fields import Field, FieldError, primitive_root_of_unity
from .forms import BinaryForm, gl2_transform
from .matrix import ExactMatrix, MatrixError
from .pencil import MatrixPencil, clifford_check, evaluate_pencil


class RepresentationError(ValueError):
    pass


class Representation:
    """A pencil (A, B) of size m = r d satisfying ``(uA + vB)^d = f(u, v) I``.

    The identity is checked on construction, so every instance is valid.
    """

    __slots__ = ("form", "pencil", "r")

    def __init__(self, form: BinaryForm, pencil: MatrixPencil, *, verify: bool = True):
        d, m = form.degree, pencil.m
        if pencil.field != form.field:
            raise FieldError(f"pencil over {pencil.field}, form over {form.field}")
        if m % d:
            raise RepresentationError(f"size {m} is not a multiple of the degree {d}")
        if verify:
            rep = clifford_check(pencil, form)
            if not rep.ok:
                raise RepresentationError(f"Clifford identity violated at coefficient {rep.failing[0]}")
        object.__setattr__(self, "form", form)
        object.__setattr__(self, "pencil", pencil)
        object.__setattr__(self, "r", m // d)

    def __setattr__(self, name, value):
        raise AttributeError("Representation is immutable")

    @property
    def field(self) -> Field:
        return self.form.field

    @property
    def d(self) -> int:
        return self.form.degree

    @property
    def m(self) -> int:
        return self.pencil.m

    @property
    def A(self) -> ExactMatrix:
        return self.pencil.A

    @property
    def B(self) -> ExactMatrix:
        return self.pencil.B

    def specialize(self, a, b) -> ExactMatrix:
        return evaluate_pencil(self.pencil, a, b)

    def __eq__(self, other):
        if not isinstance(other, Representation):
            return NotImplemented
        return self.form == other.form and self.pencil == other.pencil

    def __hash__(self):
        return hash((self.form, self.pencil))

    def __repr__(self):
        return f"<Representation of {self.form} over {self.field}, m={self.m}, r={self.r}>"


def clock_shift(d: int, field: Field, power: int = 1) -> Representation:
    """The clock-shift pair for ``u^d + v^d``.

    ``A = diag(1, z, ..., z^(d-1))`` and ``B`` the cyclic shift ``e_i -> e_(i+1)``,
    where ``z`` is the field's primitive d-th root raised to ``power``
    (coprime to d).  Distinct ``power`` values give inequivalent
    representations because ``A B = z B A``.
    """
    if d < 2:
        raise RepresentationError("d must be at least 2")
    if field.characteristic and d % field.characteristic == 0:
        raise RepresentationError(f"characteristic {field.characteristic} divides d = {d}")
    if math.gcd(power, d) != 1:
        raise RepresentationError(f"power {power} is not coprime to {d}")
    try:
        zeta = primitive_root_of_unity(field, d) ** power
    except FieldError as exc:
        raise RepresentationError(str(exc)) from None
    A = ExactMatrix.diag(field, [zeta**i for i in range(d)])
    z, one = field.zero, field.one
    B = ExactMatrix(field, [[one if i == (j + 1) % d else z for j in range(d)] for i in range(d)], raw=True)
    return Representation(BinaryForm.fermat(field, d), MatrixPencil(A, B))


def gl2_pullback(rep: Representation, g: ExactMatrix) -> Representation:
    """Representation of ``f(pu + qv, ru + sv)``: ``A' = pA + rB``, ``B' = qA + sB``."""
    if g.shape != (2, 2):
        raise MatrixError("g must be 2x2")
    new_form = gl2_transform(rep.form, g)
    (p, q), (r, s) = g.entries()
    A, B = rep.A, rep.B
    return Representation(new_form, MatrixPencil(A.scale(p) + B.scale(r), A.scale(q) + B.scale(s)))


def direct_sum(rep1: Representation, rep2: Representation) -> Representation:
    if rep1.form != rep2.form:
        raise RepresentationError("direct sum needs representations of the same form")
    pencil = MatrixPencil(
        ExactMatrix.block_diag(rep1.A, rep2.A),
        ExactMatrix.block_diag(rep1.B, rep2.B),
    )
    return Representation(rep1.form, pencil)


def conjugate(rep: Representation, X: ExactMatrix) -> Representation:
    """``(X A X^-1, X B X^-1)``, an equivalent representation."""
    if X.shape != (rep.m, rep.m):
        raise MatrixError(f"conjugator must be {rep.m}x{rep.m}")
    try:
        Xi = X.inverse()
    except MatrixError:
        raise MatrixError("conjugator is singular") from None
    return Representation(rep.form, rep.pencil.conjugate_by(X, Xi))


def random_invertible(field: Field, n: int, rng: random.Random, bound: int = 3) -> ExactMatrix:
    """Rejection-sampled invertible matrix with entries from ``field.random``."""
    if not field.is_exact:
        raise FieldError("random_invertible needs an exact field")
    while True:
        X = ExactMatrix(field, [[field.random(rng, bound) for _ in range(n)] for _ in range(n)], raw=True)
        if X.rank() == n:
            return X


def random_equivalent(rep: Representation, seed: int) -> Representation:
    """Conjugate by a seeded random invertible matrix (deterministic in ``seed``)."""
    rng = random.Random(seed)
    return conjugate(rep, random_invertible(rep.field, rep.m, rng))


def random_gl2(field: Field, rng: random.Random, bound: int = 3) -> ExactMatrix:
    return random_invertible(field, 2, rng, bound)
