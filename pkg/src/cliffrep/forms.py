"""Binary forms f(u, v) and the plane curve C: w^d = f(u, v).

Coefficient convention (shared by every module and every serialized file):
``coeffs[i]`` multiplies ``u**(d - i) * v**i``, so ``coeffs[0]`` is the
coefficient of ``u**d`` and ``coeffs[d]`` that of ``v**d``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import polys
from .fields import Field, FieldElement, FieldError
from .matrix import ExactMatrix


class FormError(ValueError):
    pass


def _hom_mul(F: Field, p, q):
    """Product of homogeneous forms stored as coefficient lists in v-degree order."""
    out = [F.zero] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        for j, y in enumerate(q):
            out[i + j] = F.add(out[i + j], F.mul(x, y))
    return out


class BinaryForm:
    """Degree-d binary form over a field, stored as raw coefficients."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs: Sequence, *, raw: bool = False):
        vals = tuple(coeffs) if raw else tuple(field.coerce(c) for c in coeffs)
        if len(vals) < 3:
            raise FormError("a binary form needs degree d >= 2 (d + 1 coefficients)")
        if all(field.is_zero(c) for c in vals):
            raise FormError("zero form")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", vals)

    def __setattr__(self, name, value):
        raise AttributeError("BinaryForm is immutable")

    @classmethod
    def fermat(cls, field: Field, d: int) -> BinaryForm:
        """``u^d + v^d``."""
        return cls(field, [1] + [0] * (d - 1) + [1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, i: int) -> FieldElement:
        return self.field.element(self.coeffs[i])

    def coeff_strings(self) -> list[str]:
        return [self.field.format(c) for c in self.coeffs]

    def reinterpret(self, field: Field) -> BinaryForm:
        """Same coefficient strings read in another field (e.g. QQ -> GF(p))."""
        return BinaryForm(field, [field.parse(s) for s in self.coeff_strings()], raw=True)

    def __eq__(self, other):
        if not isinstance(other, BinaryForm):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field.spec, self.coeffs))

    def __str__(self):
        d = self.degree
        terms = []
        for i, c in enumerate(self.coeffs):
            if self.field.is_zero(c):
                continue
            mono = "*".join(
                m for m in (_pow_str("u", d - i), _pow_str("v", i)) if m
            )
            cs = self.field.format(c)
            if cs == "1":
                terms.append(mono or "1")
            else:
                terms.append(f"({cs})*{mono}" if mono else cs)
        return " + ".join(terms)

    def __repr__(self):
        return f"BinaryForm({self.field.spec}, {self.coeff_strings()})"


def _pow_str(var: str, e: int) -> str:
    if e == 0:
        return ""
    return var if e == 1 else f"{var}^{e}"


def evaluate_raw(f: BinaryForm, a, b):
    F = f.field
    acc = F.zero
    bp = F.one
    # sum c_i a^(d-i) b^i, Horner in a with running powers of b
    terms = []
    for c in f.coeffs:
        terms.append(F.mul(c, bp))
        bp = F.mul(bp, b)
    for t in terms:
        acc = F.add(F.mul(acc, a), t)
    return acc


def evaluate(f: BinaryForm, a, b) -> FieldElement:
    F = f.field
    return F.element(evaluate_raw(f, F.coerce(a), F.coerce(b)))


def dehomogenize(f: BinaryForm) -> list:
    """``f(t, 1)`` as an ascending raw coefficient list."""
    return polys.trim(f.field, list(reversed(f.coeffs)))


def is_nondegenerate(f: BinaryForm) -> bool:
    """Squarefree test: gcd(f(t,1), f'(t,1)) constant and v^2 does not divide f."""
    F = f.field
    if not F.is_exact:
        raise FormError("nondegeneracy is decided exactly; use the numeric check for complex forms")
    if F.is_zero(f.coeffs[0]) and F.is_zero(f.coeffs[1]):
        return False
    g = dehomogenize(f)
    return len(polys.gcd(F, g, polys.derivative(F, g))) == 1


def genus(d: int) -> int:
    if d < 1:
        raise FormError("degree must be at least 1")
    return (d - 1) * (d - 2) // 2


def curve_is_smooth(f: BinaryForm) -> bool:
    p = f.field.characteristic
    if p and f.degree % p == 0:
        return False
    return is_nondegenerate(f)


def gl2_transform_raw(f: BinaryForm, p, q, r, s) -> BinaryForm:
    F = f.field
    d = f.degree
    lin1, lin2 = [p, q], [r, s]
    pw1 = [[F.one]]
    pw2 = [[F.one]]
    for _ in range(d):
        pw1.append(_hom_mul(F, pw1[-1], lin1))
        pw2.append(_hom_mul(F, pw2[-1], lin2))
    out = [F.zero] * (d + 1)
    for i, c in enumerate(f.coeffs):
        if F.is_zero(c):
            continue
        term = _hom_mul(F, pw1[d - i], pw2[i])
        out = [F.add(o, F.mul(c, t)) for o, t in zip(out, term)]
    return BinaryForm(F, out, raw=True)


def gl2_transform(f: BinaryForm, g: ExactMatrix) -> BinaryForm:
    """``f(p u + q v, r u + s v)`` for ``g = [[p, q], [r, s]]``."""
    if g.shape != (2, 2):
        raise FormError("g must be 2x2")
    if g.field != f.field:
        raise FieldError("form and matrix live in different fields")
    if g.det().is_zero():
        raise FormError("g is singular")
    (p, q), (r, s) = g.rows
    return gl2_transform_raw(f, p, q, r, s)


@dataclass(frozen=True)
class CurvePoint:
    """Normalized projective point (a : b : c) on w^d = f(u, v)."""

    field: Field
    a: object
    b: object
    c: object

    @classmethod
    def on(cls, f: BinaryForm, a, b, c) -> CurvePoint:
        F = f.field
        a, b, c = (F.coerce(x) for x in (a, b, c))
        if F.is_zero(a) and F.is_zero(b):
            raise FormError("(a, b) must not both vanish")
        lead = a if not F.is_zero(a) else b
        if lead != F.one:
            inv = F.inv(lead)
            a, b, c = F.mul(inv, a), F.mul(inv, b), F.mul(inv, c)
        if F.pow(c, f.degree) != evaluate_raw(f, a, b):
            raise FormError(f"point ({F.format(a)}:{F.format(b)}:{F.format(c)}) is not on the curve")
        return cls(F, a, b, c)

    def coords(self) -> tuple[FieldElement, FieldElement, FieldElement]:
        e = self.field.element
        return e(self.a), e(self.b), e(self.c)

    def to_strings(self) -> list[str]:
        fmt = self.field.format
        return [fmt(self.a), fmt(self.b), fmt(self.c)]

    def sort_key(self):
        k = self.field.key
        return (k(self.a), k(self.b), k(self.c))

    def __str__(self):
        return "(" + ":".join(self.to_strings()) + ")"


def curve_points(f: BinaryForm, field: Field | None = None) -> list[CurvePoint]:
    """All normalized points of C over a finite field, lexicographically sorted."""
    if field is not None and field != f.field:
        f = f.reinterpret(field)
    F = f.field
    if not F.is_finite:
        raise FormError(f"cannot enumerate points over the infinite field {F}")
    elems = list(F.elements())
    d = f.degree
    # d-th power table: c^d -> list of c
    roots: dict = {}
    for c in elems:
        roots.setdefault(F.pow(c, d), []).append(c)
    pts = []
    ab = [(F.zero, F.one)] + [(F.one, b) for b in elems]
    for a, b in ab:
        val = evaluate_raw(f, a, b)
        for c in roots.get(val, ()):
            pts.append(CurvePoint(F, a, b, c))
    pts.sort(key=CurvePoint.sort_key)
    return pts


def projective_line(F: Field) -> list[tuple]:
    """Normalized (a, b) representatives of P^1(F), raw values."""
    return [(F.zero, F.one)] + [(F.one, b) for b in F.elements()]
