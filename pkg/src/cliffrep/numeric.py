"""Complex floating-point search for representations.

Unknowns are the 2m^2 complex entries of (A, B); the equations are the
(d+1) m^2 entries of ``C_j - c_j I`` where ``C_j`` is the ``u^(d-j) v^j``
coefficient of ``(uA + vB)^d``.  The system is overdetermined, so the search
is a Levenberg-damped Gauss-Newton iteration with random restarts.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field

import numpy as np

DEFAULT_TOL = 1e-10
DEFAULT_RESTARTS = 20
DEFAULT_ITERS = 300
GAP = 1e-6
ROOT_SEPARATION = 1e-3


class NumericError(ValueError):
    pass


# ---------------------------------------------------------------------------
# the residual map and its Jacobian


def pencil_powers(A, B, d: int):
    """Coefficient lists of ``(uA + vB)^k`` for k = 0..d (index j <-> u^(k-j) v^j)."""
    m = A.shape[0]
    out = [[np.eye(m, dtype=complex)]]
    cur = [np.eye(m, dtype=complex)]
    for _ in range(d):
        new = [cur[0] @ A]
        for j in range(1, len(cur)):
            new.append(cur[j] @ A + cur[j - 1] @ B)
        new.append(cur[-1] @ B)
        cur = new
        out.append(cur)
    return out


def defects(A, B, coeffs) -> np.ndarray:
    """Stacked ``vec(C_j - c_j I)``, length (d+1) m^2."""
    d = len(coeffs) - 1
    m = A.shape[0]
    C = pencil_powers(A, B, d)[d]
    eye = np.eye(m)
    return np.concatenate([(Cj - c * eye).reshape(-1) for Cj, c in zip(C, coeffs)])


def residual(A, B, f) -> float:
    """Frobenius norm of the stacked coefficient defects."""
    A = np.asarray(A, dtype=complex)
    B = np.asarray(B, dtype=complex)
    if A.shape != B.shape or A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise NumericError(f"shape mismatch: {A.shape} vs {B.shape}")
    return float(np.linalg.norm(defects(A, B, _coeffs(f))))


def jacobian(A, B, d: int) -> np.ndarray:
    """Complex Jacobian of :func:`defects`; columns are row-major vec(Adot), vec(Bdot).

    The derivative of ``(uA + vB)^d`` in direction ``u Adot + v Bdot`` is
    ``sum_k M^k (u Adot + v Bdot) M^(d-1-k)`` with ``M = uA + vB``, and
    ``vec(P X Q) = (P kron Q^T) vec(X)`` row-major.
    """
    m = A.shape[0]
    m2 = m * m
    P = pencil_powers(A, B, d - 1)
    J = np.zeros(((d + 1) * m2, 2 * m2), dtype=complex)
    for k in range(d):
        left, right = P[k], P[d - 1 - k]
        for s, L in enumerate(left):
            for t, R in enumerate(right):
                K = np.kron(L, R.T)
                J[(s + t) * m2:(s + t + 1) * m2, :m2] += K
                J[(s + t + 1) * m2:(s + t + 2) * m2, m2:] += K
    return J


def _coeffs(f) -> np.ndarray:
    if hasattr(f, "coeffs") and hasattr(f, "field"):
        from .forms import BinaryForm  # noqa: F401  (duck-typed exact form)

        F = f.field
        vals = []
        for c in f.coeffs:
            if F.spec.kind == "complex":
                vals.append(complex(c))
            elif F.spec.kind == "rationals":
                vals.append(complex(float(c)))
            else:
                raise NumericError(f"cannot cast a form over {F} to complex")
        return np.array(vals, dtype=complex)
    return np.asarray(f, dtype=complex)


# ---------------------------------------------------------------------------
# numerical nondegeneracy


def form_roots(coeffs) -> tuple[np.ndarray, int]:
    """Finite roots of f(t, 1) and the multiplicity of the root at infinity."""
    c = np.asarray(coeffs, dtype=complex)
    scale = np.max(np.abs(c))
    lead = 0
    while lead < len(c) and abs(c[lead]) <= 1e-14 * scale:
        lead += 1
    return np.roots(c[lead:]) if len(c) - lead > 1 else np.array([], dtype=complex), lead


def is_numerically_nondegenerate(coeffs, sep: float = ROOT_SEPARATION) -> bool:
    """No repeated roots: pairwise root distances (on the sphere) exceed ``sep``."""
    c = np.asarray(coeffs, dtype=complex)
    if not np.any(np.abs(c) > 0):
        return False
    roots, at_inf = form_roots(c)
    if at_inf > 1:
        return False
    # chordal distance treats the point at infinity uniformly
    pts = [(z, 1.0) for z in roots] + [(1.0, 0.0)] * at_inf
    for i in range(len(pts)):
        for j in range(i):
            (a1, b1), (a2, b2) = pts[i], pts[j]
            num = abs(a1 * b2 - a2 * b1)
            den = math.hypot(abs(a1), abs(b1)) * math.hypot(abs(a2), abs(b2))
            if num / den < sep:
                return False
    return True


def random_form(d: int, seed: int) -> np.ndarray:
    """Seeded nondegenerate form with complex standard normal coefficients."""
    rng = np.random.default_rng(seed)
    while True:
        c = (rng.standard_normal(d + 1) + 1j * rng.standard_normal(d + 1)) / math.sqrt(2)
        if is_numerically_nondegenerate(c):
            return c


# ---------------------------------------------------------------------------
# representation and diagnostics


@dataclass
class NumericRep:
    coeffs: np.ndarray
    A: np.ndarray
    B: np.ndarray
    residual: float = dc_field(init=False)

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=complex)
        self.A = np.asarray(self.A, dtype=complex)
        self.B = np.asarray(self.B, dtype=complex)
        self.residual = float(np.linalg.norm(defects(self.A, self.B, self.coeffs)))

    @property
    def d(self) -> int:
        return len(self.coeffs) - 1

    @property
    def m(self) -> int:
        return self.A.shape[0]

    @property
    def r(self) -> int:
        return self.m // self.d

    @classmethod
    def from_representation(cls, rep) -> "NumericRep":
        """Cast an exact representation (over QQ, a cyclotomic field, or CC) to complex."""
        F = rep.field
        kind = F.spec.kind
        if kind == "cyclotomic":
            z = np.exp(2j * np.pi / F.n)

            def cast(x):
                nums, den = x
                return sum(c * z**i for i, c in enumerate(nums)) / den
        elif kind == "rationals":
            def cast(x):
                return complex(float(x))
        elif kind == "complex":
            def cast(x):
                return complex(x)
        else:
            raise NumericError(f"cannot cast {F} to complex")
        conv = lambda M: np.array([[cast(x) for x in row] for row in M.rows], dtype=complex)
        return cls(np.array([cast(c) for c in rep.form.coeffs]), conv(rep.A), conv(rep.B))


def sample_curve_points(coeffs, n: int, seed: int):
    """``n`` seeded points (a, b, c) with c^d = f(a, b), (a, b) on the unit sphere."""
    rng = np.random.default_rng([seed, 7919])
    d = len(coeffs) - 1
    pts = []
    for _ in range(n):
        a, b = (rng.standard_normal(2) + 1j * rng.standard_normal(2))
        nrm = math.hypot(abs(a), abs(b))
        a, b = a / nrm, b / nrm
        fab = sum(c * a ** (d - j) * b**j for j, c in enumerate(coeffs))
        k = int(rng.integers(d))
        c = abs(fab) ** (1 / d) * np.exp(1j * (np.angle(fab) + 2 * np.pi * k) / d)
        pts.append((a, b, c))
    return pts


@dataclass
class FiberDiagnostics:
    ok: bool
    nullities: list[int]
    gaps: list[float]

    def to_json(self) -> dict:
        return {"ok": self.ok, "nullities": self.nullities, "gaps": [float(f"{g:.6e}") for g in self.gaps]}


def fiber_diagnostics(nrep: NumericRep, n_points: int = 10, seed: int = 0, gap: float = GAP) -> FiberDiagnostics:
    """Numerical nullity of ``aA + bB - cI`` at sampled curve points must be r.

    ``gaps`` records ``sigma_{m-r} / sigma_max`` (the smallest singular value
    that should be nonzero); a healthy fiber has every ``sigma`` in the
    kernel below ``gap * sigma_max`` and this ratio well above it.
    """
    m, r = nrep.m, nrep.r
    nulls, gaps = [], []
    ok = True
    for a, b, c in sample_curve_points(nrep.coeffs, n_points, seed):
        s = np.linalg.svd(a * nrep.A + b * nrep.B - c * np.eye(m), compute_uv=False)
        null = int(np.sum(s < gap * s[0]))
        nulls.append(null)
        gaps.append(float(s[m - r - 1] / s[0]) if m - r >= 1 else 1.0)
        ok = ok and null == r
    return FiberDiagnostics(ok, nulls, gaps)


def jacobian_check(A, B, coeffs, h: float = 1e-7) -> float:
    """Largest relative error of Jacobian columns against central differences.

    Both real and imaginary directions are checked for every unknown.
    """
    A = np.asarray(A, dtype=complex)
    B = np.asarray(B, dtype=complex)
    d = len(coeffs) - 1
    m = A.shape[0]
    m2 = m * m
    J = jacobian(A, B, d)
    z = np.concatenate([A.reshape(-1), B.reshape(-1)])

    def F(w):
        return defects(w[:m2].reshape(m, m), w[m2:].reshape(m, m), coeffs)

    worst = 0.0
    for k in range(2 * m2):
        for unit in (1.0, 1j):
            e = np.zeros(2 * m2, dtype=complex)
            e[k] = unit * h
            fd = (F(z + e) - F(z - e)) / (2 * h)
            an = unit * J[:, k]
            scale = max(np.linalg.norm(an), np.linalg.norm(fd), 1e-300)
            worst = max(worst, float(np.linalg.norm(fd - an) / scale))
    return worst


@dataclass
class TangentEstimate:
    jacobian_nullity: int
    moduli_estimate: int
    indeterminate: bool
    predicted: int

    def to_json(self) -> dict:
        return {
            "jacobian_nullity": self.jacobian_nullity,
            "moduli_estimate": self.moduli_estimate,
            "indeterminate": self.indeterminate,
            "predicted": self.predicted,
        }


def numeric_tangent_rank(nrep: NumericRep, tol: float = DEFAULT_TOL, gap: float = GAP) -> TangentEstimate:
    """Complex nullity of the Jacobian at a solution and the implied moduli dimension.

    The gap is called indeterminate when some singular value lies within
    two decades of the threshold on either side.
    """
    if nrep.residual > max(tol, 1e-8):
        raise NumericError(f"residual {nrep.residual:.3e} above tolerance")
    s = np.linalg.svd(jacobian(nrep.A, nrep.B, nrep.d), compute_uv=False)
    s = np.concatenate([s, np.zeros(2 * nrep.m**2 - len(s))])
    rel = s / s[0]
    nullity = int(np.sum(rel < gap))
    indeterminate = bool(np.any((rel > gap / 100) & (rel < gap * 100)))
    g = (nrep.d - 1) * (nrep.d - 2) // 2
    return TangentEstimate(nullity, nullity - (nrep.m**2 - 1), indeterminate, nrep.r**2 * (g - 1) + 1)


# ---------------------------------------------------------------------------
# the solver


@dataclass
class SolveOptions:
    max_restarts: int = DEFAULT_RESTARTS
    max_iters: int = DEFAULT_ITERS
    tol: float = DEFAULT_TOL
    damping: float = 1e-3
    increase: float = 10.0
    decrease: float = 3.0
    root_separation: float = ROOT_SEPARATION
    gap: float = GAP

    def to_json(self) -> dict:
        return dict(self.__dict__)


@dataclass
class Attempt:
    restart: int
    residual: float
    iterations: int
    converged: bool
    diagnostics_ok: bool | None

    def to_json(self) -> dict:
        return {
            "restart": self.restart,
            "residual": float(f"{self.residual:.6e}"),
            "iterations": self.iterations,
            "converged": self.converged,
            "diagnostics_ok": self.diagnostics_ok,
        }


@dataclass
class SolveResult:
    success: bool
    seed: int
    m: int
    coeffs: np.ndarray
    attempts: list[Attempt]
    rep: NumericRep | None
    best_residual: float
    diagnostics: FiberDiagnostics | None = None
    jacobian_error: float | None = None
    options: SolveOptions = dc_field(default_factory=SolveOptions)


def _lm(coeffs, m: int, seed: int, restart: int, opts: SolveOptions):
    """One damped Gauss-Newton run from a seeded random start."""
    d = len(coeffs) - 1
    m2 = m * m
    rng = np.random.default_rng([seed, restart])
    scale = np.linalg.norm(coeffs) ** (1 / d)
    z = scale * (rng.standard_normal(2 * m2) + 1j * rng.standard_normal(2 * m2)) / math.sqrt(2)

    def split(w):
        return w[:m2].reshape(m, m), w[m2:].reshape(m, m)

    Fz = defects(*split(z), coeffs)
    cost = np.linalg.norm(Fz)
    lam = opts.damping
    it = 0
    for it in range(1, opts.max_iters + 1):
        if cost <= opts.tol:
            break
        J = jacobian(*split(z), d)
        JH = J.conj().T
        G = JH @ J
        g = JH @ Fz
        diag = np.real(np.diag(G)).copy()
        accepted = False
        while lam < 1e16:
            step = np.linalg.solve(G + lam * np.diag(np.maximum(diag, 1e-12)), -g)
            zn = z + step
            Fn = defects(*split(zn), coeffs)
            cn = np.linalg.norm(Fn)
            if cn < cost:
                z, Fz, cost = zn, Fn, cn
                lam = max(lam / opts.decrease, 1e-15)
                accepted = True
                break
            lam *= opts.increase
        if not accepted:
            break
    return z, float(cost), it


def _restart_task(args):
    coeffs, m, seed, restart, opts = args
    z, cost, it = _lm(coeffs, m, seed, restart, opts)
    m2 = m * m
    A, B = z[:m2].reshape(m, m), z[m2:].reshape(m, m)
    converged = cost <= opts.tol
    diag = None
    if converged:
        nrep = NumericRep(coeffs, A, B)
        diag = fiber_diagnostics(nrep, seed=seed, gap=opts.gap)
    return restart, A, B, cost, it, converged, diag


def solve(f, m: int, seed: int = 0, opts: SolveOptions | None = None, jobs: int = 1) -> SolveResult:
    """Search for (A, B) of size m with residual <= tol and clean fiber diagnostics.

    Restart k starts from ``default_rng([seed, k])``.  The report lists
    restarts 0..k* where k* is the first success, so it does not depend on
    how many worker processes ran restarts ahead.
    """
    opts = opts or SolveOptions()
    coeffs = _coeffs(f)
    d = len(coeffs) - 1
    if d < 2:
        raise NumericError("degree must be at least 2")
    if not is_numerically_nondegenerate(coeffs, opts.root_separation):
        raise NumericError("precondition violated: f is numerically degenerate (near-repeated roots)")
    if m % d:
        raise NumericError(f"d = {d} does not divide m = {m}")
    tasks = [(coeffs, m, seed, k, opts) for k in range(opts.max_restarts)]
    attempts: list[Attempt] = []
    best = math.inf
    found = None

    def consume(res):
        nonlocal best, found
        restart, A, B, cost, it, converged, diag = res
        best = min(best, cost)
        attempts.append(Attempt(restart, cost, it, converged, diag.ok if diag else None))
        if converged and diag.ok:
            found = (A, B, diag)
            return True
        return False

    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            for lo in range(0, len(tasks), jobs):
                if any(consume(res) for res in ex.map(_restart_task, tasks[lo:lo + jobs])):
                    break
    else:
        for t in tasks:
            if consume(_restart_task(t)):
                break
    if found is None:
        return SolveResult(False, seed, m, coeffs, attempts, None, best, options=opts)
    A, B, diag = found
    nrep = NumericRep(coeffs, A, B)
    return SolveResult(True, seed, m, coeffs, attempts, nrep, nrep.residual, diag,
                       jacobian_check(A, B, coeffs), opts)
