"""Dense exact matrices over a :class:`~cliffrep.fields.Field`.

Entries are stored as raw field values in a tuple of row tuples; the public
accessors hand out :class:`~cliffrep.fields.FieldElement` objects.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from . import polys
from .fields import Field, FieldElement, FieldError


class MatrixError(ValueError):
    pass


class ExactMatrix:
    """Immutable rectangular matrix; all entries live in ``self.field``."""

    __slots__ = ("field", "rows", "nrows", "ncols")

    def __init__(self, field: Field, rows: Iterable[Iterable], *, raw: bool = False):
        if raw:
            data = tuple(tuple(r) for r in rows)
        else:
            data = tuple(tuple(field.coerce(x) for x in r) for r in rows)
        ncols = len(data[0]) if data else 0
        if any(len(r) != ncols for r in data):
            raise MatrixError("ragged rows")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rows", data)
        object.__setattr__(self, "nrows", len(data))
        object.__setattr__(self, "ncols", ncols)

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    # -- constructors -----------------------------------------------------
    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int | None = None) -> ExactMatrix:
        ncols = nrows if ncols is None else ncols
        z = field.zero
        return cls(field, [[z] * ncols for _ in range(nrows)], raw=True)

    @classmethod
    def identity(cls, field: Field, n: int) -> ExactMatrix:
        return cls.scalar(field, n, field.one)

    @classmethod
    def scalar(cls, field: Field, n: int, raw_value) -> ExactMatrix:
        z = field.zero
        return cls(field, [[raw_value if i == j else z for j in range(n)] for i in range(n)], raw=True)

    @classmethod
    def diag(cls, field: Field, entries: Sequence) -> ExactMatrix:
        vals = [field.coerce(x) for x in entries]
        n = len(vals)
        z = field.zero
        return cls(field, [[vals[i] if i == j else z for j in range(n)] for i in range(n)], raw=True)

    @classmethod
    def block_diag(cls, a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
        F = a._same_field(b)
        z = F.zero
        top = [list(r) + [z] * b.ncols for r in a.rows]
        bottom = [[z] * a.ncols + list(r) for r in b.rows]
        return cls(F, top + bottom, raw=True)

    # -- basic access -----------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, ij) -> FieldElement:
        i, j = ij
        return self.field.element(self.rows[i][j])

    def entries(self) -> list[list[FieldElement]]:
        return [[self.field.element(x) for x in r] for r in self.rows]

    def to_strings(self) -> list[list[str]]:
        fmt = self.field.format
        return [[fmt(x) for x in r] for r in self.rows]

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.field == other.field and self.rows == other.rows

    def __hash__(self):
        return hash((self.field.spec, self.rows))

    def __repr__(self):
        return f"ExactMatrix({self.field.spec}, {self.to_strings()})"

    def _same_field(self, other: ExactMatrix) -> Field:
        if self.field != other.field:
            raise FieldError(f"matrix field mismatch: {self.field} vs {other.field}")
        return self.field

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other: ExactMatrix) -> ExactMatrix:
        F = self._same_field(other)
        if self.shape != other.shape:
            raise MatrixError(f"shape mismatch {self.shape} vs {other.shape}")
        add = F.add
        return ExactMatrix(F, [[add(x, y) for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)], raw=True)

    def __sub__(self, other: ExactMatrix) -> ExactMatrix:
        F = self._same_field(other)
        if self.shape != other.shape:
            raise MatrixError(f"shape mismatch {self.shape} vs {other.shape}")
        sub = F.sub
        return ExactMatrix(F, [[sub(x, y) for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)], raw=True)

    def __neg__(self) -> ExactMatrix:
        neg = self.field.neg
        return ExactMatrix(self.field, [[neg(x) for x in r] for r in self.rows], raw=True)

    def scale(self, c) -> ExactMatrix:
        F = self.field
        c = F.coerce(c)
        mul = F.mul
        return ExactMatrix(F, [[mul(c, x) for x in r] for r in self.rows], raw=True)

    def __matmul__(self, other: ExactMatrix) -> ExactMatrix:
        F = self._same_field(other)
        if self.ncols != other.nrows:
            raise MatrixError(f"cannot multiply {self.shape} by {other.shape}")
        return ExactMatrix(F, _matmul_raw(F, self.rows, other.rows), raw=True)

    def __pow__(self, e: int) -> ExactMatrix:
        if not self.is_square or e < 0:
            raise MatrixError("power needs a square matrix and e >= 0")
        result = ExactMatrix.identity(self.field, self.nrows)
        base = self
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    def transpose(self) -> ExactMatrix:
        return ExactMatrix(self.field, list(zip(*self.rows)) if self.rows else [], raw=True)

    def is_zero(self) -> bool:
        z = self.field.zero
        return all(x == z for r in self.rows for x in r)

    def is_scalar(self, raw_value) -> bool:
        z = self.field.zero
        return self.is_square and all(
            x == (raw_value if i == j else z) for i, r in enumerate(self.rows) for j, x in enumerate(r)
        )

    def apply(self, vec: Sequence) -> list:
        """Matrix-vector product on raw values."""
        F = self.field
        out = []
        for r in self.rows:
            acc = F.zero
            for x, y in zip(r, vec):
                acc = F.add(acc, F.mul(x, y))
            out.append(acc)
        return out

    # -- elimination ------------------------------------------------------
    def _require_exact(self):
        if not self.field.is_exact:
            raise MatrixError(f"exact linear algebra is not available over {self.field}")

    def rref(self) -> tuple[list[list], list[int]]:
        """Reduced row echelon form (raw rows) and pivot columns."""
        self._require_exact()
        return rref_raw(self.field, [list(r) for r in self.rows], self.ncols)

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace(self) -> list[tuple[FieldElement, ...]]:
        """Basis of ``{x : M x = 0}``; ``len == ncols - rank``."""
        F = self.field
        return [tuple(F.element(x) for x in v) for v in self.nullspace_raw()]

    def nullspace_raw(self) -> list[list]:
        self._require_exact()
        return nullspace_raw(self.field, [list(r) for r in self.rows], self.ncols)

    def det(self) -> FieldElement:
        self._require_exact()
        if not self.is_square:
            raise MatrixError("determinant of a non-square matrix")
        return self.field.element(det_raw(self.field, [list(r) for r in self.rows]))

    def is_invertible(self) -> bool:
        return self.is_square and self.rank() == self.nrows

    def inverse(self) -> ExactMatrix:
        self._require_exact()
        if not self.is_square:
            raise MatrixError("inverse of a non-square matrix")
        F = self.field
        n = self.nrows
        aug = [list(r) + [F.one if i == j else F.zero for j in range(n)] for i, r in enumerate(self.rows)]
        red, piv = rref_raw(F, aug, 2 * n, stop_col=n)
        if len(piv) < n:
            raise MatrixError("matrix is singular")
        return ExactMatrix(F, [r[n:] for r in red], raw=True)

    def char_poly(self) -> list[FieldElement]:
        """Coefficients of ``det(tI - M)``, constant term first (monic)."""
        self._require_exact()
        if not self.is_square:
            raise MatrixError("characteristic polynomial of a non-square matrix")
        F = self.field
        return [F.element(c) for c in char_poly_raw(F, self.rows)]


# ---------------------------------------------------------------------------
# raw kernels


def _matmul_raw(F: Field, a, b):
    add, mul, z = F.add, F.mul, F.zero
    bt = list(zip(*b))
    out = []
    for r in a:
        nz = [(k, x) for k, x in enumerate(r) if x != z]
        row = []
        for col in bt:
            acc = z
            for k, x in nz:
                y = col[k]
                if y != z:
                    acc = add(acc, mul(x, y))
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def rref_raw(F: Field, rows: list[list], ncols: int, stop_col: int | None = None):
    """In-place Gauss-Jordan on ``rows``; pivots searched in ``[0, stop_col)``."""
    stop = ncols if stop_col is None else stop_col
    z, one = F.zero, F.one
    sub, mul = F.sub, F.mul
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(stop):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c] != z), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        if prow[c] != one:
            inv = F.inv(prow[c])
            prow = [mul(inv, x) if x != z else z for x in prow]
            rows[r] = prow
        nzcols = [j for j in range(c, ncols) if prow[j] != z]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f != z:
                    row = rows[i]
                    for j in nzcols:
                        row[j] = sub(row[j], mul(f, prow[j]))
        pivots.append(c)
        r += 1
    return rows, pivots


def nullspace_raw(F: Field, rows: list[list], ncols: int) -> list[list]:
    red, pivots = rref_raw(F, rows, ncols)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [F.zero] * ncols
        v[free] = F.one
        for i, pc in enumerate(pivots):
            v[pc] = F.neg(red[i][free])
        basis.append(v)
    return basis


def det_raw(F: Field, rows: list[list]):
    n = len(rows)
    z = F.zero
    det = F.one
    rows = [list(r) for r in rows]
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c] != z), None)
        if piv is None:
            return z
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = F.neg(det)
        pv = rows[c][c]
        det = F.mul(det, pv)
        inv = F.inv(pv)
        for i in range(c + 1, n):
            f = rows[i][c]
            if f != z:
                f = F.mul(f, inv)
                ri, rc = rows[i], rows[c]
                for j in range(c, n):
                    ri[j] = F.sub(ri[j], F.mul(f, rc[j]))
    return det


def char_poly_raw(F: Field, rows) -> list:
    """Bareiss elimination on ``tI - M`` over ``F[t]``.

    The leading principal minors of ``tI - M`` are monic, so every pivot is a
    nonzero monic polynomial: no row swaps are needed and the Bareiss exact
    divisions never divide by a scalar that could vanish in characteristic p.
    """
    n = len(rows)
    if n == 0:
        return [F.one]
    T = [[[F.neg(rows[i][j])] if i != j else [F.neg(rows[i][j]), F.one] for j in range(n)] for i in range(n)]
    T = [[polys.trim(F, e) for e in r] for r in T]
    prev = [F.one]
    for k in range(n - 1):
        pk = T[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = polys.sub(F, polys.mul(F, pk, T[i][j]), polys.mul(F, T[i][k], T[k][j]))
                q, rem = polys.divmod_(F, num, prev)
                if rem:
                    raise ArithmeticError("inexact Bareiss division")
                T[i][j] = q
        prev = pk
    return T[n - 1][n - 1]


def matrix_from_poly_eval(M: ExactMatrix, coeffs: Sequence) -> ExactMatrix:
    """Evaluate the polynomial with (raw, ascending) ``coeffs`` at the matrix ``M``."""
    F = M.field
    n = M.nrows
    acc = ExactMatrix.zeros(F, n)
    for c in reversed(list(coeffs)):
        if isinstance(c, FieldElement):
            c = F.coerce(c)
        acc = acc @ M + ExactMatrix.scalar(F, n, c)
    return acc
