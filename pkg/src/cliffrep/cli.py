"""Command-line front end.

Every command writes one JSON document (stdout or ``--out``) that embeds a
manifest of the invocation.  Exit codes: 0 success or prediction match,
1 verification false, 2 undecided, 3 prediction mismatch, 64 usage or
input error.
"""

from __future__ import annotations

import argparse
import random
import sys
import time

from . import __version__
from .census import CensusError, census_report
from .fields import FieldError, FieldSpec, field as parse_field, make_field
from .forms import BinaryForm, FormError
from .matrix import MatrixError
from .moduli import (
    UndecidedError,
    are_equivalent,
    intertwiners,
    search_equivalence,
    tangent_space_dim,
)
from .numeric import NumericError, SolveOptions, numeric_tangent_rank, random_form, solve
from .representations import (
    RepresentationError,
    clock_shift,
    direct_sum,
    gl2_pullback,
    random_equivalent,
    random_gl2,
)
from .serialize import (
    SchemaError,
    dumps,
    form_from_json,
    form_to_json,
    loads,
    representation_from_json,
    representation_to_json,
)
from .vdb import BundleError, analyze

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_UNDECIDED = 2
EXIT_MISMATCH = 3
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# ---------------------------------------------------------------------------
# helpers


def _read_doc(arg: str):
    """Inline JSON when the argument starts with '{', else a file path."""
    text = arg
    if not arg.lstrip().startswith("{"):
        try:
            with open(arg, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {arg}: {exc.strerror}") from None
    return loads(text)


def _manifest(args, field_spec=None, seeds=None, timing=None) -> dict:
    inputs = {}
    for k, v in sorted(vars(args).items()):
        if k in ("func", "command", "out", "jobs", "timing"):
            continue
        inputs[k] = v
    out = {
        "command": args.command,
        "inputs": inputs,
        "seeds": seeds or [],
        "tool_version": __version__,
        "field": field_spec.to_json() if field_spec is not None else None,
    }
    if timing is not None:
        out["timing"] = timing
    return out


def _emit(args, doc: dict) -> None:
    text = dumps(doc)
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _timing(args, t0: float):
    return {"wall_time": round(time.perf_counter() - t0, 3)} if getattr(args, "timing", False) else None


# ---------------------------------------------------------------------------
# commands


def cmd_verify(args) -> int:
    obj = _read_doc(args.rep)
    try:
        rep = representation_from_json(obj)
    except RepresentationError as exc:
        _emit(args, {"manifest": _manifest(args), "valid": False, "error": str(exc)})
        print(f"verify: {exc}", file=sys.stderr)
        return EXIT_FALSE
    doc = {"manifest": _manifest(args, rep.field.spec), "valid": True, "d": rep.d, "m": rep.m, "r": rep.r}
    _emit(args, doc)
    return EXIT_OK


def cmd_construct(args) -> int:
    F = parse_field(args.field)
    rep = clock_shift(args.d, F, args.power)
    if args.sum_with_power is not None:
        rep = direct_sum(rep, clock_shift(args.d, F, args.sum_with_power))
    seeds = []
    if args.pullback_seed is not None:
        seeds.append(args.pullback_seed)
        rep = gl2_pullback(rep, random_gl2(F, random.Random(args.pullback_seed)))
    if args.conjugate_seed is not None:
        seeds.append(args.conjugate_seed)
        rep = random_equivalent(rep, args.conjugate_seed)
    doc = {"manifest": _manifest(args, F.spec, seeds)}
    doc.update(representation_to_json(rep))
    _emit(args, doc)
    return EXIT_OK


def cmd_analyze(args) -> int:
    rep = representation_from_json(_read_doc(args.rep))
    try:
        result = analyze(rep, max_points=args.max_points, seed=args.seed)
    except BundleError as exc:
        _emit(args, {"manifest": _manifest(args, rep.field.spec, [args.seed]), "error": str(exc)})
        return EXIT_FALSE
    doc = {"manifest": _manifest(args, rep.field.spec, [args.seed])}
    doc.update(result)
    _emit(args, doc)
    return EXIT_OK if result["charpoly_ok"] else EXIT_FALSE


def cmd_equiv(args) -> int:
    a = representation_from_json(_read_doc(args.a))
    b = representation_from_json(_read_doc(args.b))
    doc = {"manifest": _manifest(args, a.field.spec, [args.seed])}
    try:
        eq = are_equivalent(a, b)
        doc.update({"equivalent": eq, "method": "exact"})
        if a.m == b.m:
            doc["intertwiner_dim"] = len(intertwiners(a, b))
        code = EXIT_OK if eq else EXIT_FALSE
    except UndecidedError:
        X = search_equivalence(a, b, trials=args.trials, seed=args.seed)
        if X is not None:
            doc.update({"equivalent": True, "method": "randomized", "certificate": X.to_strings()})
            code = EXIT_OK
        else:
            doc.update({"equivalent": None, "method": "undecided",
                        "detail": "both reducible and no invertible intertwiner found"})
            code = EXIT_UNDECIDED
    _emit(args, doc)
    return code


def cmd_tangent(args) -> int:
    rep = representation_from_json(_read_doc(args.rep))
    report = tangent_space_dim(rep)
    doc = {"manifest": _manifest(args, rep.field.spec)}
    doc.update(report.to_json())
    _emit(args, doc)
    return EXIT_OK if report.matches else EXIT_MISMATCH


def cmd_census(args) -> int:
    t0 = time.perf_counter()
    f = form_from_json(_read_doc(args.form), "form")
    F = parse_field(args.field) if args.field else f.field
    if F != f.field:
        try:
            f = f.reinterpret(F)
        except (FieldError, FormError) as exc:
            raise UsageError(f"cannot read the form over {F}: {exc}") from None
    report = census_report(f, field=F, m=args.m, force_large=args.force_large, jobs=args.jobs)
    doc = {"manifest": _manifest(args, F.spec, timing=_timing(args, t0))}
    doc.update(report.to_json(include_timing=args.timing))
    _emit(args, doc)
    print(report.table(), file=sys.stderr)
    if report.prediction_matches is False:
        return EXIT_MISMATCH
    return EXIT_OK


def _complex_str(z) -> str:
    return f"({float(z.real)!r},{float(z.imag)!r})"


def _cmatrix(M) -> list[list[str]]:
    return [[_complex_str(x) for x in row] for row in M]


def cmd_solve(args) -> int:
    t0 = time.perf_counter()
    if args.form is None and args.random_degree is None:
        raise UsageError("solve: give --form or --random-degree")
    if args.form is not None:
        f = form_from_json(_read_doc(args.form), "form")
        if f.field.spec.kind not in ("complex", "rationals"):
            raise UsageError(f"solve: form must be over CC or QQ, not {f.field}")
        coeffs = [complex(c) if f.field.spec.kind == "complex" else complex(float(c)) for c in f.coeffs]
    else:
        coeffs = list(random_form(args.random_degree, args.seed))
    opts = SolveOptions(max_restarts=args.restarts, max_iters=args.max_iters, tol=args.tol)
    res = solve(coeffs, args.m, seed=args.seed, opts=opts, jobs=args.jobs)
    CC = make_field(FieldSpec.complex_double())
    form_doc = form_to_json(BinaryForm(CC, [complex(c) for c in coeffs], raw=True))
    doc = {"manifest": _manifest(args, CC.spec, [args.seed], _timing(args, t0))}
    doc["form"] = form_doc
    doc["m"] = args.m
    doc["success"] = res.success
    doc["residual"] = float(f"{res.best_residual:.6e}")
    doc["attempts"] = [a.to_json() for a in res.attempts]
    doc["options"] = opts.to_json()
    if res.success:
        nrep = res.rep
        est = numeric_tangent_rank(nrep, tol=opts.tol)
        doc["A"] = _cmatrix(nrep.A)
        doc["B"] = _cmatrix(nrep.B)
        doc["diagnostics"] = {
            "fibers": res.diagnostics.to_json(),
            "jacobian_fd_error": float(f"{res.jacobian_error:.3e}"),
            "jacobian_ok": res.jacobian_error <= 1e-5,
            "tangent": est.to_json(),
        }
        _emit(args, doc)
        return EXIT_OK
    _emit(args, doc)
    print(f"solve: restart budget exhausted; best residual {res.best_residual:.3e}", file=sys.stderr)
    return EXIT_FALSE


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="cliffrep", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"cliffrep {__version__}")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def common(sp):
        sp.add_argument("--out", help="write the JSON document here instead of stdout")

    sp = sub.add_parser("verify", help="load a representation and re-check the Clifford identities")
    sp.add_argument("--rep", required=True, help="representation JSON (path or inline)")
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("construct", help="build a clock-shift representation")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--field", required=True, help="qq, gf7, gf4, gf2^3, cyc3, ...")
    sp.add_argument("--power", type=int, default=1, help="root-of-unity exponent (coprime to d)")
    sp.add_argument("--sum-with-power", type=int, default=None, help="direct sum with another clock-shift")
    sp.add_argument("--pullback-seed", type=int, default=None, help="apply a seeded random GL2 change of variables")
    sp.add_argument("--conjugate-seed", type=int, default=None, help="conjugate by a seeded random matrix")
    common(sp)
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("analyze", help="fiber profile, characteristic polynomial, bundle invariants")
    sp.add_argument("--rep", required=True)
    sp.add_argument("--max-points", type=int, default=256)
    sp.add_argument("--seed", type=int, default=0)
    common(sp)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("equiv", help="decide equivalence of two representations")
    sp.add_argument("--a", required=True)
    sp.add_argument("--b", required=True)
    sp.add_argument("--trials", type=int, default=64)
    sp.add_argument("--seed", type=int, default=0)
    common(sp)
    sp.set_defaults(func=cmd_equiv)

    sp = sub.add_parser("tangent", help="exact tangent-space and moduli dimension")
    sp.add_argument("--rep", required=True)
    common(sp)
    sp.set_defaults(func=cmd_tangent)

    sp = sub.add_parser("census", help="enumerate and classify all representations over a finite field")
    sp.add_argument("--form", required=True, help="form JSON (path or inline)")
    sp.add_argument("--field", default=None, help="read the form over this finite field")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--force-large", action="store_true")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--timing", action="store_true", help="include wall time (breaks byte-identity)")
    common(sp)
    sp.set_defaults(func=cmd_census)

    sp = sub.add_parser("solve", help="numeric search for a representation over CC")
    sp.add_argument("--form", default=None, help="form JSON over CC or QQ")
    sp.add_argument("--random-degree", type=int, default=None, help="use a seeded random form of this degree")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--restarts", type=int, default=SolveOptions.max_restarts)
    sp.add_argument("--max-iters", type=int, default=SolveOptions.max_iters)
    sp.add_argument("--tol", type=float, default=SolveOptions.tol)
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--timing", action="store_true")
    common(sp)
    sp.set_defaults(func=cmd_solve)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "func", None):
            raise UsageError("cliffrep: a subcommand is required")
        if getattr(args, "jobs", 1) < 1:
            raise UsageError("--jobs must be at least 1")
        return args.func(args)
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except (SchemaError, FieldError, FormError, MatrixError, CensusError, NumericError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RepresentationError as exc:
        # a document that fails verification on load
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FALSE


if __name__ == "__main__":
    sys.exit(main())
