"""Matrix pencils uA + vB, their formal powers, and the Clifford identity check.

A pencil (A, B) gives a representation of C_f exactly when
``(uA + vB)^d == f(u, v) I`` as a polynomial identity in the commuting
variables u, v, i.e. when the d + 1 homogeneous coefficients agree.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fields import Field, FieldError
from .forms import BinaryForm
from .matrix import ExactMatrix, MatrixError, _matmul_raw


@dataclass(frozen=True)
class MatrixPencil:
    A: ExactMatrix
    B: ExactMatrix

    def __post_init__(self):
        if not (self.A.is_square and self.B.is_square) or self.A.shape != self.B.shape:
            raise MatrixError(f"pencil matrices must be square of equal size, got {self.A.shape}, {self.B.shape}")
        if self.A.field != self.B.field:
            raise FieldError("pencil matrices live in different fields")

    @property
    def field(self) -> Field:
        return self.A.field

    @property
    def m(self) -> int:
        return self.A.nrows

    def conjugate_by(self, X: ExactMatrix, X_inv: ExactMatrix | None = None) -> MatrixPencil:
        Xi = X.inverse() if X_inv is None else X_inv
        return MatrixPencil(X @ self.A @ Xi, X @ self.B @ Xi)


@dataclass(frozen=True)
class HomMatrixPoly:
    """Sum over j of ``coeffs[j] * u^(k-j) v^j`` with matrix coefficients."""

    coeffs: tuple[ExactMatrix, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __mul__(self, other: HomMatrixPoly) -> HomMatrixPoly:
        F = self.coeffs[0].field
        n = self.coeffs[0].nrows
        out = [ExactMatrix.zeros(F, n) for _ in range(self.degree + other.degree + 1)]
        for i, P in enumerate(self.coeffs):
            for j, Q in enumerate(other.coeffs):
                out[i + j] = out[i + j] + P @ Q
        return HomMatrixPoly(tuple(out))

    def evaluate(self, a, b) -> ExactMatrix:
        F = self.coeffs[0].field
        a, b = F.coerce(a), F.coerce(b)
        k = self.degree
        acc = ExactMatrix.zeros(F, self.coeffs[0].nrows)
        for j, C in enumerate(self.coeffs):
            acc = acc + C.scale(F.element(F.mul(F.pow(a, k - j), F.pow(b, j))))
        return acc


def _add_raw(F, x, y):
    add = F.add
    return tuple(tuple(add(a, b) for a, b in zip(r, s)) for r, s in zip(x, y))


def pencil_power_raw(F: Field, A, B, d: int) -> list:
    """Coefficient matrices (raw) of (uA + vB)^d by homogeneous DP.

    Right-multiplying by (uA + vB) maps ``C_j`` to ``C_j A + C_{j-1} B``;
    d - 1 steps of O(k) products each, never the 2^d word expansion.
    """
    coeffs = [A, B]
    for _ in range(d - 1):
        new = [_matmul_raw(F, coeffs[0], A)]
        for j in range(1, len(coeffs)):
            new.append(_add_raw(F, _matmul_raw(F, coeffs[j], A), _matmul_raw(F, coeffs[j - 1], B)))
        new.append(_matmul_raw(F, coeffs[-1], B))
        coeffs = new
    return coeffs


def pencil_power(p: MatrixPencil, d: int) -> HomMatrixPoly:
    if d < 1:
        raise ValueError("d must be >= 1")
    F = p.field
    raw = pencil_power_raw(F, p.A.rows, p.B.rows, d)
    return HomMatrixPoly(tuple(ExactMatrix(F, c, raw=True) for c in raw))


@dataclass(frozen=True)
class CliffordReport:
    ok: bool
    failing: tuple[int, ...]

    def __bool__(self):
        return self.ok


def _is_scalar_raw(F, M, c) -> bool:
    z = F.zero
    for i, r in enumerate(M):
        for j, x in enumerate(r):
            if x != (c if i == j else z):
                return False
    return True


def clifford_check(p: MatrixPencil, f: BinaryForm) -> CliffordReport:
    """Check ``(uA + vB)^d == f(u, v) I`` coefficient by coefficient."""
    if p.field != f.field:
        raise FieldError(f"pencil over {p.field} checked against a form over {f.field}")
    F = p.field
    coeffs = pencil_power_raw(F, p.A.rows, p.B.rows, f.degree)
    failing = tuple(j for j, (C, c) in enumerate(zip(coeffs, f.coeffs)) if not _is_scalar_raw(F, C, c))
    return CliffordReport(not failing, failing)


def evaluate_pencil(p: MatrixPencil, a, b) -> ExactMatrix:
    """``aA + bB``."""
    F = p.field
    a, b = F.coerce(a), F.coerce(b)
    add, mul = F.add, F.mul
    rows = [
        [add(mul(a, x), mul(b, y)) for x, y in zip(ra, rb)]
        for ra, rb in zip(p.A.rows, p.B.rows)
    ]
    return ExactMatrix(F, rows, raw=True)
