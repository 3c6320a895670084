"""Vectorized finite-field arithmetic on integer-encoded elements.

Elements of GF(q) are encoded as their index in the field's canonical
element order (the residue for prime fields, ``sum c_i p^i`` for extension
fields).  Arrays of such indices carry batches of matrices of shape
``(..., m, m)``; every operation here acts on whole batches at once.
"""

from __future__ import annotations

import numpy as np

from .fields import Field


class GFTables:
    def __init__(self, F: Field):
        if not F.is_finite:
            raise ValueError(f"{F} is not finite")
        self.field = F
        self.q = q = F.order
        self.p = F.characteristic
        self.is_prime = F.spec.kind == "prime"
        self.char2 = self.p == 2
        self.elements = list(F.elements())
        self.index = {x: i for i, x in enumerate(self.elements)}
        el = self.elements
        dt = np.int64
        self.add_t = np.array([[self.index[F.add(x, y)] for y in el] for x in el], dtype=dt)
        self.mul_t = np.array([[self.index[F.mul(x, y)] for y in el] for x in el], dtype=dt)
        self.neg_t = np.array([self.index[F.neg(x)] for x in el], dtype=dt)
        self.inv_t = np.array([self.index[F.inv(x)] if i else 0 for i, x in enumerate(el)], dtype=dt)

    # -- scalars ------------------------------------------------------------
    def enc(self, raw) -> int:
        return self.index[raw]

    def dec(self, i: int):
        return self.elements[int(i)]

    # -- elementwise ------------------------------------------------------
    def add(self, x, y):
        if self.is_prime:
            return (x + y) % self.p
        if self.char2:
            return np.bitwise_xor(x, y)
        return self.add_t[x, y]

    def sub(self, x, y):
        if self.is_prime:
            return (x - y) % self.p
        if self.char2:
            return np.bitwise_xor(x, y)
        return self.add_t[x, self.neg_t[y]]

    def mul(self, x, y):
        if self.is_prime:
            return (x * y) % self.p
        return self.mul_t[x, y]

    def sum(self, x, axis):
        if self.is_prime:
            return x.sum(axis=axis) % self.p
        if self.char2:
            return np.bitwise_xor.reduce(x, axis=axis)
        x = np.moveaxis(x, axis, 0)
        acc = x[0]
        for k in range(1, x.shape[0]):
            acc = self.add_t[acc, x[k]]
        return acc

    # -- matrices ---------------------------------------------------------
    def matmul(self, X, Y):
        """Batched product over the last two axes (numpy broadcasting rules)."""
        if self.is_prime:
            return np.matmul(X, Y) % self.p
        prod = self.mul_t[X[..., :, :, None], Y[..., None, :, :]]
        return self.sum(prod, axis=-2)

    def matvec(self, X, v):
        if self.is_prime:
            return np.einsum("...ij,...j->...i", X, v) % self.p
        return self.sum(self.mul_t[X, v[..., None, :]], axis=-1)

    def identity(self, m: int):
        return np.eye(m, dtype=np.int64) * self.enc(self.field.one)

    def scalar(self, m: int, raw):
        out = np.zeros((m, m), dtype=np.int64)
        np.fill_diagonal(out, self.enc(raw))
        return out

    def batched_rank(self, M):
        """Rank of each matrix in the batch ``M`` of shape (N, R, C)."""
        M = np.array(M, dtype=np.int64, copy=True)
        N, R, C = M.shape
        avail = np.ones((N, R), dtype=bool)
        rank = np.zeros(N, dtype=np.int64)
        ar = np.arange(N)
        for c in range(C):
            cand = (M[:, :, c] != 0) & avail
            has = cand.any(axis=1)
            if not has.any():
                continue
            piv = np.argmax(cand, axis=1)
            idx = ar[has]
            pr = piv[has]
            prow = M[idx, pr, :]
            inv = self.inv_t[prow[:, c]]
            prow = self.mul(inv[:, None], prow)
            M[idx, pr, :] = prow
            factors = M[idx, :, c].copy()
            factors[np.arange(len(idx)), pr] = 0
            M[idx] = self.sub(M[idx], self.mul(factors[:, :, None], prow[:, None, :]))
            avail[idx, pr] = False
            rank[idx] += 1
        return rank

    # -- small exact helpers on python int lists ----------------------------
    def solve_affine(self, L, rhs):
        """Particular solution and nullspace basis of ``L x = rhs`` (ints), or None."""
        rows = [list(map(int, r)) + [int(b)] for r, b in zip(L, rhs)]
        n = len(rows[0]) - 1
        add, mul, neg, inv = self.add_t, self.mul_t, self.neg_t, self.inv_t
        pivots = []
        r = 0
        for c in range(n):
            piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
            if piv is None:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            iv = inv[rows[r][c]]
            rows[r] = [int(mul[iv, x]) for x in rows[r]]
            for i in range(len(rows)):
                if i != r and rows[i][c]:
                    fct = rows[i][c]
                    rows[i] = [int(add[x, neg[mul[fct, y]]]) for x, y in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
        for i in range(r, len(rows)):
            if rows[i][n]:
                return None
        x0 = [0] * n
        for i, c in enumerate(pivots):
            x0[c] = rows[i][n]
        basis = []
        one = self.enc(self.field.one)
        pivset = set(pivots)
        for free in range(n):
            if free in pivset:
                continue
            v = [0] * n
            v[free] = one
            for i, c in enumerate(pivots):
                v[c] = int(neg[rows[i][free]])
            basis.append(v)
        return x0, basis

    def inverse(self, M):
        """Inverse of a single square int matrix (raises if singular)."""
        n = len(M)
        eye = self.identity(n)
        cols = []
        for j in range(n):
            sol = self.solve_affine(M, eye[:, j])
            if sol is None or sol[1]:
                raise ZeroDivisionError("singular matrix")
            cols.append(sol[0])
        return np.array(cols, dtype=np.int64).T

    def all_vectors(self, n: int):
        """All of GF(q)^n as an array of shape (q^n, n), first coordinate most significant."""
        idx = np.arange(self.q**n, dtype=np.int64)
        out = np.empty((len(idx), n), dtype=np.int64)
        for t in range(n - 1, -1, -1):
            out[:, t] = idx % self.q
            idx //= self.q
        return out

    def projective_vectors(self, n: int):
        """Nonzero vectors whose first nonzero coordinate is 1."""
        one = self.enc(self.field.one)
        vs = self.all_vectors(n)
        keep = []
        for row in vs:
            nz = row[row != 0]
            if len(nz) and nz[0] == one:
                keep.append(row)
        return np.array(keep, dtype=np.int64)
