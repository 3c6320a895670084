"""Bundle-side invariants attached to a representation.

A representation of size m = r d determines a rank-r bundle on the curve
C: w^d = f(u, v) whose fiber at a point (a : b : c) is the kernel of
``aA + bB - cI``.  Degree and Euler characteristic come from the closed
formulas; the fiber ranks and the characteristic polynomial of ``aA + bB``
are what gets checked empirically.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from . import polys
from .fields import Field, FieldError, FieldSpec, make_field, is_prime, primitive_root_of_unity
from .forms import BinaryForm, CurvePoint, curve_points, evaluate_raw, genus, is_nondegenerate, projective_line
from .matrix import ExactMatrix, char_poly_raw, det_raw, nullspace_raw, _matmul_raw
from .moduli import is_irreducible
from .pencil import MatrixPencil
from .representations import Representation

STABLE = "stable"
STRICTLY_SEMISTABLE = "strictly_semistable"


class BundleError(RuntimeError):
    """An empirical fiber check failed: the input is not a valid representation."""


@dataclass(frozen=True)
class BundleInvariants:
    rank: int
    degree: int
    euler_char: int
    slope: Fraction
    pushforward_splitting: tuple[int, ...]
    genus: int

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "degree": self.degree,
            "euler_char": self.euler_char,
            "slope": str(self.slope),
            "pushforward_splitting": list(self.pushforward_splitting),
            "genus": self.genus,
        }


def _shifted(rep: Representation, a, b, c):
    """Raw rows of ``aA + bB - cI``."""
    F = rep.field
    add, mul, sub = F.add, F.mul, F.sub
    rows = []
    for i, (ra, rb) in enumerate(zip(rep.A.rows, rep.B.rows)):
        row = [add(mul(a, x), mul(b, y)) for x, y in zip(ra, rb)]
        row[i] = sub(row[i], c)
        rows.append(row)
    return rows


def fiber_dimension(rep: Representation, pt: CurvePoint) -> int:
    """``dim ker(aA + bB - cI)`` at a point of C."""
    F = rep.field
    if pt.field != F:
        raise FieldError(f"point over {pt.field}, representation over {F}")
    if F.pow(pt.c, rep.d) != evaluate_raw(rep.form, pt.a, pt.b):
        raise ValueError(f"{pt} is not on the curve of {rep.form}")
    return len(nullspace_raw(F, _shifted(rep, pt.a, pt.b, pt.c), rep.m))


def offcurve_invertibility(rep: Representation, a, b, c) -> bool:
    """Whether ``aA + bB - cI`` is invertible for ``c^d != f(a, b)``."""
    F = rep.field
    a, b, c = F.coerce(a), F.coerce(b), F.coerce(c)
    if F.pow(c, rep.d) == evaluate_raw(rep.form, a, b):
        raise ValueError("point is on curve: c^d == f(a, b)")
    return not F.is_zero(det_raw(F, _shifted(rep, a, b, c)))


def _expected_charpoly(F: Field, d: int, r: int, fab) -> list:
    """Ascending coefficients of ``(t^d - fab)^r``."""
    base = [F.neg(fab)] + [F.zero] * (d - 1) + [F.one]
    out = [F.one]
    for _ in range(r):
        out = polys.mul(F, out, base)
    return out


def _charpoly_at(rep: Representation, a, b):
    F = rep.field
    return char_poly_raw(F, _shifted(rep, a, b, F.zero))


def charpoly_identity_check(rep: Representation, a, b) -> bool:
    """``char_poly(aA + bB) == (t^d - f(a, b))^r``."""
    F = rep.field
    a, b = F.coerce(a), F.coerce(b)
    fab = evaluate_raw(rep.form, a, b)
    return _charpoly_at(rep, a, b) == _expected_charpoly(F, rep.d, rep.r, fab)


def displayed_charpoly_check(rep: Representation, a, b) -> bool:
    """The single-power reading ``char_poly(aA + bB) == t^(rd) - f(a, b)``."""
    F = rep.field
    a, b = F.coerce(a), F.coerce(b)
    fab = evaluate_raw(rep.form, a, b)
    return _charpoly_at(rep, a, b) == _expected_charpoly(F, rep.m, 1, fab)


def is_nilpotent_at(rep: Representation, a, b) -> bool:
    F = rep.field
    M = tuple(tuple(r) for r in _shifted(rep, F.coerce(a), F.coerce(b), F.zero))
    P = M
    for _ in range(rep.m - 1):
        P = _matmul_raw(F, P, M)
    return all(x == F.zero for row in P for x in row)


def formula_invariants(r: int, d: int) -> BundleInvariants:
    g = genus(d)
    degree = r * (d + g - 1)
    return BundleInvariants(
        rank=r,
        degree=degree,
        euler_char=r * (1 - g) + degree,
        slope=Fraction(degree, r),
        pushforward_splitting=(0,) * (r * d),
        genus=g,
    )


# ---------------------------------------------------------------------------
# reduction of representations over QQ / QQ(zeta_n) to a finite field


def _reduce_map(F: Field, p: int):
    """Ring map from ``F`` (QQ or QQ(zeta_n)) to GF(p), or None if impossible."""
    Fp = make_field(FieldSpec.prime(p))
    if F.spec.kind == "rationals":
        def red(x: Fraction):
            if x.denominator % p == 0:
                raise ZeroDivisionError
            return x.numerator * pow(x.denominator, -1, p) % p
        return Fp, red
    n = F.n
    if (p - 1) % n:
        return None
    z = primitive_root_of_unity(Fp, n).value
    zp = [pow(z, i, p) for i in range(F.deg)]

    def red(x):
        nums, den = x
        if den % p == 0:
            raise ZeroDivisionError
        s = sum(c * w for c, w in zip(nums, zp))
        return s * pow(den, -1, p) % p

    return Fp, red


def reduce_mod_prime(rep: Representation, start: int = 3, limit: int = 10_000) -> Representation:
    """Image of a QQ or cyclotomic representation in GF(p) for the least good prime.

    A prime is good when it does not divide d or any denominator, is
    ``1 mod n`` for QQ(zeta_n), and keeps the form nondegenerate.
    """
    F = rep.field
    if F.is_finite:
        return rep
    if F.spec.kind not in ("rationals", "cyclotomic"):
        raise FieldError(f"no reduction available for {F}")
    for p in range(start, limit):
        if not is_prime(p) or rep.d % p == 0:
            continue
        got = _reduce_map(F, p)
        if got is None:
            continue
        Fp, red = got
        try:
            coeffs = [red(c) for c in rep.form.coeffs]
            A = [[red(x) for x in row] for row in rep.A.rows]
            B = [[red(x) for x in row] for row in rep.B.rows]
        except ZeroDivisionError:
            continue
        if all(c == 0 for c in coeffs):
            continue
        form = BinaryForm(Fp, coeffs, raw=True)
        if not is_nondegenerate(form):
            continue
        pencil = MatrixPencil(ExactMatrix(Fp, A, raw=True), ExactMatrix(Fp, B, raw=True))
        return Representation(form, pencil)
    raise FieldError("no good prime found for reduction")


@dataclass
class FiberProfile:
    field: Field
    entries: list[tuple[CurvePoint, int]] = dc_field(default_factory=list)
    nilpotent_ok: bool = True

    def to_json(self) -> list[dict]:
        return [{"point": pt.to_strings(), "dim": k} for pt, k in self.entries]


def fiber_profile(rep: Representation, max_points: int = 256) -> FiberProfile:
    """Fiber dimensions over the points of C (reducing mod a good prime if needed)."""
    frep = reduce_mod_prime(rep)
    pts = curve_points(frep.form)
    if len(pts) > max_points:
        step = len(pts) / max_points
        pts = [pts[int(i * step)] for i in range(max_points)]
    prof = FiberProfile(frep.field)
    for pt in pts:
        prof.entries.append((pt, fiber_dimension(frep, pt)))
        if frep.field.is_zero(pt.c) and not is_nilpotent_at(frep, pt.a, pt.b):
            prof.nilpotent_ok = False
    return prof


def bundle_invariants(rep: Representation, max_points: int = 256,
                      profile: FiberProfile | None = None) -> BundleInvariants:
    """Formula invariants, cross-checked against fiber ranks at curve points."""
    if not rep.field.is_exact:
        raise FieldError("bundle invariants need an exact field")
    inv = formula_invariants(rep.r, rep.d)
    if inv.euler_char != rep.m:
        raise BundleError("Euler characteristic disagrees with r d")
    prof = profile if profile is not None else fiber_profile(rep, max_points)
    bad = [(str(pt), k) for pt, k in prof.entries if k != rep.r]
    if bad:
        raise BundleError(f"fiber rank differs from r = {rep.r} at {bad[:3]}")
    if not prof.nilpotent_ok:
        raise BundleError("aA + bB is not nilpotent at a branch point")
    return inv


def stability_verdict(rep: Representation) -> str:
    return STABLE if is_irreducible(rep) else STRICTLY_SEMISTABLE


def charpoly_points(rep: Representation, n_random: int = 20, seed: int = 0, max_pairs: int = 4096):
    """Points (a, b) at which the characteristic-polynomial identity is tested.

    Finite fields: every pair in F^2 (or the projective line if that is too
    many).  Infinite fields: ``n_random`` seeded small rational points.
    """
    F = rep.field
    if F.is_finite:
        e = F.element
        if F.order**2 <= max_pairs:
            elems = list(F.elements())
            return [(e(a), e(b)) for a in elems for b in elems]
        return [(e(a), e(b)) for a, b in projective_line(F)]
    rng = random.Random(seed)

    def rand():
        return F(Fraction(rng.randint(-9, 9), rng.randint(1, 5)))

    return [(rand(), rand()) for _ in range(n_random)]


def analyze(rep: Representation, max_points: int = 256, seed: int = 0) -> dict:
    """Everything the ``analyze`` command reports, as a JSON-ready dict."""
    prof = fiber_profile(rep, max_points)
    inv = bundle_invariants(rep, max_points, prof)
    pts = charpoly_points(rep, seed=seed)
    power_ok = all(charpoly_identity_check(rep, a, b) for a, b in pts)
    displayed_ok = all(displayed_charpoly_check(rep, a, b) for a, b in pts)
    frep = reduce_mod_prime(rep)
    if frep is not rep:
        fpts = charpoly_points(frep)
        power_ok = power_ok and all(charpoly_identity_check(frep, a, b) for a, b in fpts)
        displayed_ok = displayed_ok and all(displayed_charpoly_check(frep, a, b) for a, b in fpts)
    return {
        "invariants": inv.to_json(),
        "fiber_profile": prof.to_json(),
        "fiber_field": prof.field.spec.to_json(),
        "nilpotent_at_branch_points": prof.nilpotent_ok,
        "charpoly_ok": power_ok,
        # for r >= 2 only the power reading can hold; it is the one tested
        "charpoly_convention": "(t^d - f(a,b))^r",
        "charpoly_readings": {
            "(t^d - f(a,b))^r": power_ok,
            "t^(rd) - f(a,b)": displayed_ok,
        },
        "verdict": stability_verdict(rep),
    }
