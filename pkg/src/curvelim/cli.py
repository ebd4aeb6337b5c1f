"""``curvelim`` command-line interface.

Every command reads one JSON object (``--json TEXT`` or ``--input FILE``,
``-`` for stdin) and writes one JSON object to stdout.  Exit status is 0 on
success, 1 when a mathematical check fails, 2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from typing import Callable

from . import classical, curve, detrep, ratmap
from .errors import (
    CurveElimError,
    DegeneratePencil,
    DisagreementDetected,
    PolySyntaxError,
    TheoremViolation,
)
from .jsonio import (
    InputError,
    detrep_from_json,
    detrep_to_json,
    form_from_json,
    map_from_json,
    matrix_to_json,
    point_from_json,
    scalar_to_json,
    vector_to_json,
)
from .poly import parse_poly

__all__ = ["main", "COMMANDS"]


class CheckFailed(Exception):
    """Carries the JSON payload of a failed check (exit status 1)."""

    def __init__(self, payload: dict):
        super().__init__(payload)
        self.payload = payload


def _field(data: dict, name: str):
    if name not in data:
        raise InputError(f"missing field {name!r}")
    return data[name]


def _uni(data: dict, names):
    texts = [_field(data, k) for k in names]
    for k, t in zip(names, texts):
        if not isinstance(t, str):
            raise InputError("polynomials are given as text", k)
    var = data.get("variable", "x")
    polys = [parse_poly(t, (var,)) for t in texts]
    degree = data.get("degree", max(p.degree for p in polys))
    return [classical.UniPoly(p.coeffs, degree) for p in polys]


def _forms(data: dict, names):
    forms = [form_from_json(_field(data, k), k) for k in names]
    degree = max(f.degree for f in forms)
    out = []
    for k, f in zip(names, forms):
        if f.degree != degree:
            if not f.is_zero():
                raise InputError(f"degree {f.degree}, expected {degree}", k)
            f = detrep.HomPoly3({}, degree)
        out.append(f)
    return out


def _detrep(data: dict, args) -> detrep.DetRep:
    return detrep_from_json(_field(data, "detrep"), args.backend == "exact")


def cmd_resultant(data, args):
    p, q = _uni(data, ("p", "q"))
    return {"resultant": scalar_to_json(classical.resultant(p, q))}


def cmd_bezout(data, args):
    p, q = _uni(data, ("p", "q"))
    return {"bezout": matrix_to_json(classical.bezout(p, q))}


def cmd_sylvester(data, args):
    p, q = _uni(data, ("p", "q"))
    return {"sylvester": matrix_to_json(classical.sylvester(p, q))}


def cmd_kravitsky_check(data, args):
    p, q, f, g = _uni(data, ("p", "q", "f", "g"))
    convention = data.get("convention", "consistent")
    ok = classical.kravitsky_check(p, q, f, g, convention)
    out = {"holds": ok, "convention": convention}
    if not ok:
        raise CheckFailed(out)
    return out


def cmd_line_image(data, args):
    vars_ = tuple(data.get("variables", ["s", "t"]))
    texts = [_field(data, k) for k in ("p0", "p1", "p2")]
    forms = [classical.parse_binary_form(t, vars_) for t in texts]
    degree = data.get("degree", max(f.degree for f in forms))
    forms = [classical.parse_binary_form(t, vars_, degree) for t in texts]
    mats = classical.line_image_pencil(*forms)
    delta = detrep.det_poly(mats, allow_degenerate=True)
    return {
        "M0": matrix_to_json(mats[0]),
        "M1": matrix_to_json(mats[1]),
        "M2": matrix_to_json(mats[2]),
        "det": delta.to_text(),
    }


def cmd_detpoly(data, args):
    D = _detrep(data, args)
    delta = detrep.det_poly(D)
    return {"m": D.m, "det": delta.to_text() if D.exact else _float_poly(delta)}


def _float_poly(p) -> dict:
    return {"x0^%d*x1^%d*x2^%d" % e: scalar_to_json(c) for e, c in sorted(p.coeffs.items(), reverse=True)}


def cmd_validate_rep(data, args):
    try:
        D = _detrep(data, args)
    except DegeneratePencil as exc:
        raise CheckFailed({"valid": False, "reason": str(exc)})
    delta = detrep.det_poly(D)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        irreducible = detrep.check_irreducible(D, warn=False)
    return {
        "valid": True,
        "m": D.m,
        "hermitian": D.hermitian,
        "det": delta.to_text() if D.exact else _float_poly(delta),
        "irreducible_over_Q": irreducible,
    }


def cmd_kernel_at(data, args):
    D = _detrep(data, args)
    pt = point_from_json(_field(data, "point"), args.backend == "exact")
    pk = detrep.kernel_at(D, pt, tol=args.tol)
    out = {"point": vector_to_json(pk.point), "e": vector_to_json(pk.e), "multidim": pk.multidim}
    if pk.multidim:
        out["kernel"] = matrix_to_json(pk.basis)
    return out


def cmd_principal_dim(data, args):
    D = _detrep(data, args)
    n = _field(data, "n")
    if not isinstance(n, int) or n < 1:
        raise InputError("n must be a positive integer", "n")
    try:
        dim = curve.principal_subspace(D, n).dim
    except TheoremViolation as exc:
        raise CheckFailed({"dim": None, "expected": n * D.m, "error": str(exc)})
    return {"dim": dim, "expected": n * D.m}


def cmd_curve_count(data, args):
    D = _detrep(data, args)
    p, q = _forms(data, ("p", "q"))
    out = curve.curve_count(D, p, q)
    if not out["agree"]:
        raise CheckFailed(out)
    return out


def cmd_pairing_check(data, args):
    D = _detrep(data, args)
    exact = args.backend == "exact"
    pk1 = detrep.kernel_at(D, point_from_json(_field(data, "x"), exact, "x"), tol=args.tol)
    pk2 = detrep.kernel_at(D, point_from_json(_field(data, "y"), exact, "y"), tol=args.tol)
    ratios, _, _ = curve.pairing_ratios(D, pk1, pk2)
    out = {"ratios": [None if r is None else scalar_to_json(r) for r in ratios]}
    try:
        out["value"] = scalar_to_json(curve.pairing(D, pk1, pk2, tol=args.tol))
        out["agree"] = True
    except DisagreementDetected as exc:
        out.update(agree=False, error=str(exc))
        raise CheckFailed(out)
    return out


def cmd_gen_kravitsky_check(data, args):
    D = _detrep(data, args)
    p, q, f, g = _forms(data, ("p", "q", "f", "g"))
    ok = curve.generalized_kravitsky_check(D, p, q, f, g, tol=args.tol)
    out = {"holds": ok}
    if not ok:
        raise CheckFailed(out)
    return out


def cmd_image_curve(data, args):
    D = _detrep(data, args)
    r = map_from_json(_field(data, "map"), D.exact)
    pencil = ratmap.image_pencil(D, r)
    samples = data.get("samples", 20)
    backend = args.backend if D.exact else "float"
    report = ratmap.verify_image(pencil, samples=samples, seed=args.seed, backend=backend, tol=args.float_tol)
    delta = pencil.det_poly()
    out = {
        "size": pencil.size,
        "M0": matrix_to_json(pencil.M0),
        "M1": matrix_to_json(pencil.M1),
        "M2": matrix_to_json(pencil.M2),
        "det": delta.to_text() if D.exact else _float_poly(delta),
        "report": report.as_dict(),
    }
    if not report.passed:
        raise CheckFailed(out)
    return out


def cmd_compose_check(data, args):
    D = _detrep(data, args)
    r = map_from_json(_field(data, "r"), D.exact, "r")
    s = map_from_json(_field(data, "s"), D.exact, "s")
    report = ratmap.compose_check(D, r, s, tau=bool(data.get("tau", False)))
    report["scalar"] = None if report["scalar"] is None else scalar_to_json(report["scalar"])
    if not report["proportional"] or not report.get("tau_ok", True):
        raise CheckFailed(report)
    return report


COMMANDS: dict[str, Callable] = {
    "resultant": cmd_resultant,
    "bezout": cmd_bezout,
    "sylvester": cmd_sylvester,
    "kravitsky-check": cmd_kravitsky_check,
    "line-image": cmd_line_image,
    "detpoly": cmd_detpoly,
    "validate-rep": cmd_validate_rep,
    "kernel-at": cmd_kernel_at,
    "principal-dim": cmd_principal_dim,
    "curve-count": cmd_curve_count,
    "pairing-check": cmd_pairing_check,
    "gen-kravitsky-check": cmd_gen_kravitsky_check,
    "image-curve": cmd_image_curve,
    "compose-check": cmd_compose_check,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="curvelim", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=sorted(COMMANDS))
    src = parser.add_mutually_exclusive_group(required=True)
    src.add_argument("--json", help="inline JSON input")
    src.add_argument("--input", help="JSON input file ('-' for stdin)")
    parser.add_argument("--backend", choices=("exact", "float"), default="exact")
    parser.add_argument("--tol", type=float, default=1e-9, help="float tolerance")
    parser.add_argument("--seed", type=int, default=0, help="seed for sampled verifications")
    return parser


def _emit(payload: dict, stream) -> None:
    stream.write(json.dumps(payload) + "\n")


def _read_input(args) -> str:
    if args.json is not None:
        return args.json
    if args.input == "-":
        return sys.stdin.read()
    with open(args.input, encoding="utf-8") as fh:
        return fh.read()


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.float_tol = max(args.tol, 1e-8) if args.backend == "float" else args.tol
    try:
        text = _read_input(args)
    except OSError as exc:
        _emit({"error": "InputError", "message": str(exc)}, sys.stderr)
        return 2
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        _emit({"error": "JSONDecodeError", "message": exc.msg, "line": exc.lineno, "column": exc.colno, "position": exc.pos}, sys.stderr)
        return 2
    if not isinstance(data, dict):
        _emit({"error": "InputError", "message": "top-level JSON value must be an object"}, sys.stderr)
        return 2
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            out = COMMANDS[args.command](data, args)
    except CheckFailed as exc:
        _emit(exc.payload, sys.stdout)
        return 1
    except PolySyntaxError as exc:
        _emit({"error": "PolySyntaxError", "message": str(exc), "position": exc.pos}, sys.stderr)
        return 2
    except TheoremViolation as exc:
        _emit({"error": "TheoremViolation", "message": str(exc)}, sys.stdout)
        return 1
    except (InputError, CurveElimError, ValueError, TypeError) as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)}, sys.stderr)
        return 2
    _emit(out, sys.stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())
