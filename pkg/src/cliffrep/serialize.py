"""JSON documents for forms, pencils and representations.

Field elements are written as strings in each field's own grammar, so
exact values round-trip losslessly.  Loading a representation re-runs the
Clifford check.
"""

from __future__ import annotations

import json
from typing import Any

from .fields import Field, FieldError, FieldSpec, make_field
from .forms import BinaryForm, FormError
from .matrix import ExactMatrix
from .pencil import MatrixPencil
from .representations import Representation


class SchemaError(ValueError):
    """Malformed document; the message names the offending field path."""


def _loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _require(obj, key: str, path: str):
    if not isinstance(obj, dict):
        raise SchemaError(f"{path or 'document'}: expected an object")
    if key not in obj:
        raise SchemaError(f"{path + '.' if path else ''}{key}: missing required field {key!r}")
    return obj[key]


def _int(obj, key: str, path: str) -> int:
    v = _require(obj, key, path)
    if isinstance(v, bool) or not isinstance(v, int):
        raise SchemaError(f"{path + '.' if path else ''}{key}: expected an integer, got {v!r}")
    return v


def _field(obj, path: str) -> Field:
    spec = _require(obj, "field", path)
    try:
        return make_field(FieldSpec.from_json(spec))
    except (FieldError, TypeError, ValueError) as exc:
        raise SchemaError(f"{path + '.' if path else ''}field: {exc}") from None


def _element(F: Field, s, where: str):
    if not isinstance(s, str):
        raise SchemaError(f"{where}: field elements are strings, got {s!r}")
    try:
        return F.parse(s)
    except (FieldError, ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"{where}: {exc}") from None


# ---------------------------------------------------------------------------
# forms


def form_to_json(f: BinaryForm) -> dict:
    return {"field": f.field.spec.to_json(), "degree": f.degree, "coeffs": f.coeff_strings()}


def form_from_json(obj, path: str = "") -> BinaryForm:
    F = _field(obj, path)
    d = _int(obj, "degree", path)
    coeffs = _require(obj, "coeffs", path)
    p = f"{path + '.' if path else ''}coeffs"
    if not isinstance(coeffs, list):
        raise SchemaError(f"{p}: expected a list")
    if len(coeffs) != d + 1:
        raise SchemaError(f"{p}: expected {d + 1} coefficients for degree {d}, got {len(coeffs)}")
    raw = [_element(F, c, f"{p}[{i}]") for i, c in enumerate(coeffs)]
    try:
        return BinaryForm(F, raw, raw=True)
    except FormError as exc:
        raise SchemaError(f"{p}: {exc}") from None


# ---------------------------------------------------------------------------
# pencils


def _matrix_from_json(F: Field, rows, m: int, where: str) -> ExactMatrix:
    if not isinstance(rows, list) or len(rows) != m:
        raise SchemaError(f"{where}: expected {m} rows")
    out = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != m:
            raise SchemaError(f"{where}[{i}]: expected {m} entries")
        out.append([_element(F, x, f"{where}[{i}][{j}]") for j, x in enumerate(row)])
    return ExactMatrix(F, out, raw=True)


def pencil_to_json(p: MatrixPencil) -> dict:
    return {"field": p.field.spec.to_json(), "m": p.m, "A": p.A.to_strings(), "B": p.B.to_strings()}


def pencil_from_json(obj, path: str = "") -> MatrixPencil:
    F = _field(obj, path)
    m = _int(obj, "m", path)
    if m < 1:
        raise SchemaError(f"{path + '.' if path else ''}m: must be positive")
    pre = path + "." if path else ""
    A = _matrix_from_json(F, _require(obj, "A", path), m, pre + "A")
    B = _matrix_from_json(F, _require(obj, "B", path), m, pre + "B")
    return MatrixPencil(A, B)


# ---------------------------------------------------------------------------
# representations


def representation_to_json(rep: Representation) -> dict:
    return {"form": form_to_json(rep.form), "r": rep.r, "pencil": pencil_to_json(rep.pencil)}


def representation_from_json(obj) -> Representation:
    """Build and verify; raises SchemaError or RepresentationError."""
    form = form_from_json(_require(obj, "form", ""), "form")
    r = _int(obj, "r", "")
    pencil = pencil_from_json(_require(obj, "pencil", ""), "pencil")
    if pencil.field != form.field:
        raise SchemaError(f"pencil.field: {pencil.field} does not match form.field {form.field}")
    if pencil.m != r * form.degree:
        raise SchemaError(f"r: r * degree = {r * form.degree} but pencil.m = {pencil.m}")
    return Representation(form, pencil)


def serialize_representation(rep: Representation) -> str:
    return dumps(representation_to_json(rep))


def parse_representation(text: str) -> Representation:
    return representation_from_json(_loads(text))


def parse_form(text: str) -> BinaryForm:
    return form_from_json(_loads(text))


def dumps(obj) -> str:
    """Canonical document text: two-space indent, insertion order, trailing newline."""
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def loads(text: str):
    return _loads(text)
