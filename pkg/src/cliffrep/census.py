"""Exhaustive census of representations of C_f over a small finite field.

Pipeline for all pencils (A, B) of size m with ``(uA + vB)^d = f(u, v) I``:

1. enumerate every A with ``A^d = c_0 I`` (vectorized over index chunks);
2. for each surviving A, the ``u^(d-1) v`` coefficient
   ``sum_k A^k B A^(d-1-k) = c_1 I`` is affine-linear in B: solve it and
   enumerate only its solution space;
3. filter the remaining coefficient identities.

Irreducible solutions are then grouped into simultaneous-conjugacy classes
by intertwiner tests against class representatives.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field

import numpy as np

from .fields import Field, FieldSpec, make_field
from .forms import BinaryForm, curve_points, genus, is_nondegenerate
from .gf import GFTables
from .matrix import ExactMatrix
from .moduli import algebra_dimension
from .pencil import MatrixPencil

GUARD = 2**30
_CHUNK = 1 << 15
_BATCH = 1 << 15


class CensusError(ValueError):
    pass


def gl_order(m: int, q: int) -> int:
    out = 1
    for i in range(m):
        out *= q**m - q**i
    return out


# ---------------------------------------------------------------------------
# enumeration


def _check_form(f: BinaryForm) -> None:
    """Finite field, char not dividing d, f nondegenerate; all violations in one message."""
    F = f.field
    if not F.is_finite:
        raise CensusError(f"census needs a finite field, got {F}")
    problems = []
    if f.degree % F.characteristic == 0:
        problems.append(f"characteristic {F.characteristic} divides d = {f.degree}")
    if not is_nondegenerate(f):
        problems.append("precondition violated: f must be nondegenerate")
    if problems:
        raise CensusError("; ".join(problems))


def _check_preconditions(f: BinaryForm, m: int, force_large: bool):
    F = f.field
    _check_form(f)
    if m < 1:
        raise CensusError("m must be positive")
    if F.order ** (m * m) > GUARD and not force_large:
        raise CensusError(f"q^(m^2) = {F.order}^{m * m} exceeds the 2^30 guard (use force_large)")


def _decode(idx, q: int, m: int):
    """Index array -> batch of matrices, entry (0, 0) most significant."""
    n = m * m
    out = np.empty((len(idx), n), dtype=np.int64)
    idx = idx.copy()
    for t in range(n - 1, -1, -1):
        out[:, t] = idx % q
        idx //= q
    return out.reshape(-1, m, m)


def _power(T: GFTables, X, d: int):
    P = X
    for _ in range(d - 1):
        P = T.matmul(P, X)
    return P


def _stage1(T: GFTables, coeffs, m: int, d: int, lo: int, hi: int):
    A = _decode(np.arange(lo, hi, dtype=np.int64), T.q, m)
    target = T.scalar(m, T.dec(coeffs[0]))
    keep = np.all(_power(T, A, d) == target, axis=(1, 2))
    return A[keep]


def _linear_map(T: GFTables, A, d: int):
    """Matrix of ``B -> sum_k A^k B A^(d-1-k)`` on row-major vec(B)."""
    m = A.shape[0]
    pw = [T.identity(m)]
    for _ in range(d - 1):
        pw.append(T.matmul(pw[-1], A))
    L = np.zeros((m * m, m * m), dtype=np.int64)
    for k in range(d):
        P, Q = pw[k], pw[d - 1 - k]
        # vec(P B Q) = (P kron Q^T) vec(B)
        K = T.mul(P[:, None, :, None], Q.T[None, :, None, :]).reshape(m * m, m * m)
        L = T.add(L, K)
    return L


def _stage23(T: GFTables, coeffs, A, d: int):
    """All B completing a pencil with the given A; returns (candidates, solutions)."""
    m = A.shape[0]
    L = _linear_map(T, A, d)
    rhs = T.scalar(m, T.dec(coeffs[1])).reshape(-1)
    sol = T.solve_affine(L, rhs)
    if sol is None:
        return 0, np.zeros((0, m, m), dtype=np.int64)
    x0, basis = sol
    s = len(basis)
    x0 = np.array(x0, dtype=np.int64)
    basis = np.array(basis, dtype=np.int64).reshape(s, m * m)
    total = T.q**s
    found = []
    targets = [T.scalar(m, T.dec(c)) for c in coeffs]
    grid_all = T.all_vectors(s)
    for lo in range(0, total, _BATCH):
        hi = min(total, lo + _BATCH)
        if s:
            grid = grid_all[lo:hi]
            comb = T.sum(T.mul(grid[:, :, None], basis[None, :, :]), axis=1)
            Bv = T.add(comb, x0[None, :])
        else:
            Bv = x0[None, :]
        Bs = Bv.reshape(-1, m, m)
        ok = _completes(T, A, Bs, d, targets)
        found.append(Bs[ok])
    return total, np.concatenate(found) if found else np.zeros((0, m, m), dtype=np.int64)


def _completes(T: GFTables, A, Bs, d: int, targets):
    """Mask of B's for which every coefficient of (uA + vB)^d is c_j I."""
    N = len(Bs)
    Ab = np.broadcast_to(A, Bs.shape)
    coeffs = [Ab, Bs]
    for _ in range(d - 1):
        new = [T.matmul(coeffs[0], Ab)]
        for j in range(1, len(coeffs)):
            new.append(T.add(T.matmul(coeffs[j], Ab), T.matmul(coeffs[j - 1], Bs)))
        new.append(T.matmul(coeffs[-1], Bs))
        coeffs = new
    ok = np.ones(N, dtype=bool)
    for C, tgt in zip(coeffs, targets):
        ok &= np.all(C == tgt, axis=(1, 2))
    return ok


def _work_item(args):
    spec_json, coeffs, m, d, lo, hi = args
    F = make_field(FieldSpec.from_json(spec_json))
    T = GFTables(F)
    As = _stage1(T, coeffs, m, d, lo, hi)
    n2 = 0
    sols = []
    for A in As:
        cands, Bs = _stage23(T, coeffs, A, d)
        n2 += cands
        for B in Bs:
            sols.append(np.stack([A, B]))
    arr = np.array(sols, dtype=np.int64).reshape(-1, 2, m, m)
    return hi - lo, len(As), n2, arr


@dataclass
class EnumerationStats:
    stage1_candidates: int = 0
    stage1_kept: int = 0
    stage2_candidates: int = 0


def enumerate_solution_array(f: BinaryForm, m: int, *, force_large: bool = False, jobs: int = 1):
    """All solutions as an int array of shape (N, 2, m, m), lexicographically sorted."""
    _check_preconditions(f, m, force_large)
    F = f.field
    T = GFTables(F)
    coeffs = [T.enc(c) for c in f.coeffs]
    total = F.order ** (m * m)
    items = [
        (F.spec.to_json(), coeffs, m, f.degree, lo, min(total, lo + _CHUNK))
        for lo in range(0, total, _CHUNK)
    ]
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_work_item, items))
    else:
        results = [_work_item(it) for it in items]
    stats = EnumerationStats()
    arrays = []
    for c1, k1, c2, arr in results:
        stats.stage1_candidates += c1
        stats.stage1_kept += k1
        stats.stage2_candidates += c2
        arrays.append(arr)
    sols = np.concatenate(arrays) if arrays else np.zeros((0, 2, m, m), dtype=np.int64)
    if len(sols):
        flat = sols.reshape(len(sols), -1)
        order = np.lexsort(flat.T[::-1])
        sols = sols[order]
    return sols, stats, T


def array_to_pencil(T: GFTables, arr) -> MatrixPencil:
    F = T.field
    A = ExactMatrix(F, [[T.dec(x) for x in row] for row in arr[0]], raw=True)
    B = ExactMatrix(F, [[T.dec(x) for x in row] for row in arr[1]], raw=True)
    return MatrixPencil(A, B)


def enumerate_solutions(f: BinaryForm, m: int, *, force_large: bool = False, jobs: int = 1):
    """Stream of every pencil (A, B) of size m satisfying the Clifford identities."""
    sols, _, T = enumerate_solution_array(f, m, force_large=force_large, jobs=jobs)
    for arr in sols:
        yield array_to_pencil(T, arr)


# ---------------------------------------------------------------------------
# classification


def _word_arrays(T: GFTables, sols, length: int):
    """Words in A, B up to ``length`` for each solution: shape (N, W, m, m), BFS order."""
    N, _, m, _ = sols.shape
    A, B = sols[:, 0], sols[:, 1]
    level = [np.broadcast_to(T.identity(m), (N, m, m))]
    words = list(level)
    for _ in range(length):
        nxt = []
        for W in level:
            nxt.append(T.matmul(A, W))
            nxt.append(T.matmul(B, W))
        words.extend(nxt)
        level = nxt
    return np.stack(words, axis=1)


def _word_length(m: int) -> int:
    L = max(m - 1, 1)
    while 2 ** (L + 1) - 1 < 2 * m * m:
        L += 1
    return L


def _irreducible_mask(T: GFTables, sols, words):
    N, _, m, _ = sols.shape
    full = m * m
    mask = np.zeros(N, dtype=bool)
    for lo in range(0, N, _BATCH):
        hi = min(N, lo + _BATCH)
        flat = words[lo:hi].reshape(hi - lo, words.shape[1], full)
        mask[lo:hi] = T.batched_rank(flat) == full
    # a short-word span below m^2 is not conclusive: decide exactly
    for i in np.nonzero(~mask)[0]:
        mask[i] = algebra_dimension(array_to_pencil(T, sols[i])) == full
    return mask


def _trace_keys(T: GFTables, words):
    diag = np.diagonal(words, axis1=-2, axis2=-1)
    return T.sum(diag, axis=-1)


def _cyclic_words(T: GFTables, rep_words, m: int):
    """Indices of words w_1 = I, ... whose images of e_1 form a basis, and that basis."""
    chosen, cols = [], []
    for w in range(rep_words.shape[0]):
        v = rep_words[w][:, 0]
        cand = np.array(cols + [v], dtype=np.int64)
        if T.batched_rank(cand[None])[0] == len(cand):
            chosen.append(w)
            cols.append(v)
            if len(chosen) == m:
                break
    if len(chosen) < m:
        raise CensusError("representative is not cyclic on e_1; it cannot be irreducible")
    P = np.array(cols, dtype=np.int64).T
    return chosen, P


def _equivalent_to(T: GFTables, rep_arr, rep_words, sols, words, xs):
    """Mask of solutions simultaneously conjugate to the representative."""
    m = rep_arr.shape[-1]
    chosen, P = _cyclic_words(T, rep_words, m)
    Pinv = T.inverse(P)
    AR, BR = rep_arr[0], rep_arr[1]
    N = len(sols)
    K = len(xs)
    out = np.zeros(N, dtype=bool)
    step = max(1, _BATCH // max(K, 1))
    for lo in range(0, N, step):
        hi = min(N, lo + step)
        W = words[lo:hi][:, chosen]  # (n, m_words, m, m)
        # Y[n, x, :, i] = W_i(S) x
        cols = T.matvec(W[:, None, :, :, :], xs[None, :, None, :])  # (n, K, m_words, m)
        Y = np.swapaxes(cols, -1, -2)
        X = T.matmul(Y, Pinv)
        AS = sols[lo:hi, 0][:, None]
        BS = sols[lo:hi, 1][:, None]
        okA = np.all(T.matmul(X, AR) == T.matmul(AS, X), axis=(-1, -2))
        okB = np.all(T.matmul(X, BR) == T.matmul(BS, X), axis=(-1, -2))
        ok = okA & okB
        hit = ok.any(axis=1)
        if hit.any():
            first = np.argmax(ok, axis=1)
            Xh = X[np.nonzero(hit)[0], first[hit]]
            inv_ok = T.batched_rank(Xh) == m
            hit_idx = np.nonzero(hit)[0]
            hit[hit_idx[~inv_ok]] = False
        out[lo:hi] = hit
    return out


@dataclass
class ClassInfo:
    representative: MatrixPencil
    orbit_size: int


def classify_arrays(T: GFTables, sols):
    """Group irreducible solutions into conjugacy classes.

    Returns ``(classes, reducible_count)``; classes are ordered by their
    canonical (lexicographically least) member, which is the representative.
    """
    N = len(sols)
    if N == 0:
        return [], 0
    m = sols.shape[-1]
    words = _word_arrays(T, sols, _word_length(m))
    irr = _irreducible_mask(T, sols, words)
    reducible = int((~irr).sum())
    idx_irr = np.nonzero(irr)[0]
    keys = _trace_keys(T, words[idx_irr])
    _, bucket = np.unique(keys, axis=0, return_inverse=True)
    bucket = np.asarray(bucket).reshape(-1)
    xs = T.projective_vectors(m)
    assigned = np.full(len(idx_irr), -1, dtype=np.int64)
    reps = []
    for b in np.unique(bucket):
        members = np.nonzero(bucket == b)[0]
        while True:
            open_ = members[assigned[members] < 0]
            if len(open_) == 0:
                break
            first = open_[0]
            gi = idx_irr[first]
            mask = _equivalent_to(T, sols[gi], words[gi], sols[idx_irr[open_]], words[idx_irr[open_]], xs)
            mask[0] = True
            assigned[open_[mask]] = len(reps)
            reps.append((gi, int(mask.sum())))
    reps.sort(key=lambda t: t[0])
    classes = [ClassInfo(array_to_pencil(T, sols[gi]), size) for gi, size in reps]
    return classes, reducible


def classify(solutions, f: BinaryForm):
    """Classify a list of :class:`MatrixPencil` solutions over a finite field."""
    F = f.field
    T = GFTables(F)
    sols = [p for p in solutions]
    if not sols:
        return [], 0
    m = sols[0].m
    arr = np.array(
        [[[[T.enc(x) for x in row] for row in M.rows] for M in (p.A, p.B)] for p in sols], dtype=np.int64
    ).reshape(-1, 2, m, m)
    flat = arr.reshape(len(arr), -1)
    arr = arr[np.lexsort(flat.T[::-1])]
    return classify_arrays(T, arr)


# ---------------------------------------------------------------------------
# report


@dataclass
class CensusReport:
    field: Field
    form: BinaryForm
    m: int
    total_solutions: int
    irreducible_class_count: int
    reducible_solution_count: int
    predicted_irreducible_classes: int | None
    curve_point_count: int
    classes: list[ClassInfo] = dc_field(default_factory=list)
    stats: EnumerationStats = dc_field(default_factory=EnumerationStats)
    gl_order: int = 0
    wall_time: float = 0.0

    @property
    def q(self) -> int:
        return self.field.order

    @property
    def r(self) -> int:
        return self.m // self.form.degree if self.m % self.form.degree == 0 else 0

    @property
    def conservation_ok(self) -> bool:
        return sum(c.orbit_size for c in self.classes) + self.reducible_solution_count == self.total_solutions

    @property
    def orbit_sizes_ok(self) -> bool:
        """Every irreducible orbit has size |GL_m(q)| / (q - 1) (scalar stabilizer)."""
        expect = self.gl_order // (self.q - 1)
        return all(c.orbit_size == expect and self.gl_order % c.orbit_size == 0 for c in self.classes)

    @property
    def prediction_matches(self) -> bool | None:
        if self.predicted_irreducible_classes is None:
            return None
        return self.predicted_irreducible_classes == self.irreducible_class_count

    def to_json(self, include_timing: bool = False) -> dict:
        from .serialize import pencil_to_json

        out = {
            "field": self.field.spec.to_json(),
            "q": self.q,
            "form": self.form.coeff_strings(),
            "degree": self.form.degree,
            "m": self.m,
            "r": self.r,
            "genus": genus(self.form.degree),
            "curve_point_count": self.curve_point_count,
            "total_solutions": self.total_solutions,
            "irreducible_class_count": self.irreducible_class_count,
            "reducible_solution_count": self.reducible_solution_count,
            "predicted_irreducible_classes": self.predicted_irreducible_classes,
            "prediction_status": "expected" if self.predicted_irreducible_classes is not None else "none",
            "prediction_matches": self.prediction_matches,
            "conservation_ok": self.conservation_ok,
            "orbit_sizes_ok": self.orbit_sizes_ok,
            "gl_order": self.gl_order,
            "stage1_candidates": self.stats.stage1_candidates,
            "stage1_kept": self.stats.stage1_kept,
            "stage2_candidates": self.stats.stage2_candidates,
            "classes": [
                {"orbit_size": c.orbit_size, "representative": pencil_to_json(c.representative)}
                for c in self.classes
            ],
        }
        if include_timing:
            out["wall_time"] = round(self.wall_time, 3)
        return out

    def table(self) -> str:
        rows = [
            ("field", str(self.field.spec)),
            ("q", self.q),
            ("form", " ".join(self.form.coeff_strings())),
            ("degree", self.form.degree),
            ("m", self.m),
            ("r", self.r),
            ("genus", genus(self.form.degree)),
            ("curve_point_count", self.curve_point_count),
            ("total_solutions", self.total_solutions),
            ("irreducible_class_count", self.irreducible_class_count),
            ("reducible_solution_count", self.reducible_solution_count),
            ("predicted_irreducible_classes", self.predicted_irreducible_classes),
            ("prediction_matches", self.prediction_matches),
            ("conservation_ok", self.conservation_ok),
            ("orbit_sizes_ok", self.orbit_sizes_ok),
            ("gl_order", self.gl_order),
            ("stage1_candidates", self.stats.stage1_candidates),
            ("stage1_kept", self.stats.stage1_kept),
            ("stage2_candidates", self.stats.stage2_candidates),
        ]
        w = max(len(k) for k, _ in rows)
        lines = [f"{k:<{w}}  {v}" for k, v in rows]
        for i, c in enumerate(self.classes):
            lines.append(f"{'class ' + str(i):<{w}}  orbit_size={c.orbit_size}")
        return "\n".join(lines)


def predicted_class_count(f: BinaryForm, r: int) -> int | None:
    """Expected number of irreducible classes: #C(F_q) - 1 for r = 1, d = 3."""
    if r != 1 or f.degree != 3:
        return None
    return len(curve_points(f)) - 1


def census_report(f: BinaryForm, r: int | None = None, field: Field | None = None, *, m: int | None = None,
                  force_large: bool = False, jobs: int = 1) -> CensusReport:
    """Enumerate, classify, and compare with the expected class count.

    Give either ``r`` (then m = r d) or ``m`` directly (m need not be a
    multiple of d; the divisibility check is then an output of the run).
    """
    if field is not None and field != f.field:
        f = f.reinterpret(field)
    F = f.field
    _check_form(f)
    if m is None:
        if r is None:
            raise CensusError("give r or m")
        m = r * f.degree
    t0 = time.perf_counter()
    sols, stats, T = enumerate_solution_array(f, m, force_large=force_large, jobs=jobs)
    classes, reducible = classify_arrays(T, sols)
    r_eff = m // f.degree if m % f.degree == 0 else 0
    report = CensusReport(
        field=F,
        form=f,
        m=m,
        total_solutions=len(sols),
        irreducible_class_count=len(classes),
        reducible_solution_count=reducible,
        predicted_irreducible_classes=predicted_class_count(f, r_eff) if r_eff else None,
        curve_point_count=len(curve_points(f)),
        classes=classes,
        stats=stats,
        gl_order=gl_order(m, F.order),
    )
    report.wall_time = time.perf_counter() - t0
    if not report.conservation_ok:
        raise AssertionError("conservation violated: class orbits + reducible != total")
    return report
