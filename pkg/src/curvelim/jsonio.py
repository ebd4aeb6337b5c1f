"""JSON encoding of scalars, matrices, polynomials and pencils.

Exact scalars are strings ``"a"``, ``"a/b"`` or ``"a/b+c/d*i"`` (plain JSON
integers are accepted on input).  Float scalars are numbers, or ``[re, im]``
pairs when complex.  Matrices are lists of rows.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

import numpy as np

from . import linalg
from .detrep import DetRep
from .errors import DegeneratePencil
from .poly import HomPoly3, parse_poly
from .scalars import GaussianRational, format_scalar, to_exact

__all__ = [
    "InputError",
    "scalar_to_json",
    "scalar_from_json",
    "matrix_to_json",
    "matrix_from_json",
    "vector_to_json",
    "point_from_json",
    "detrep_to_json",
    "detrep_from_json",
    "form_from_json",
    "map_from_json",
]


class InputError(ValueError):
    """Malformed JSON payload; ``where`` names the offending field."""

    def __init__(self, message: str, where: str = ""):
        super().__init__(f"{where}: {message}" if where else message)
        self.where = where


def scalar_to_json(x) -> Any:
    if isinstance(x, (Fraction, GaussianRational, int)) and not isinstance(x, bool):
        return format_scalar(x)
    z = complex(x)
    if z.imag == 0:
        return z.real
    return [z.real, z.imag]


def scalar_from_json(v, exact: bool = True, where: str = ""):
    if isinstance(v, bool):
        raise InputError("booleans are not scalars", where)
    if exact:
        if isinstance(v, float):
            raise InputError(f"float {v!r} in exact mode; write it as a rational string", where)
        try:
            return to_exact(v)
        except (TypeError, ValueError) as exc:
            raise InputError(str(exc), where) from exc
    if isinstance(v, list):
        if len(v) != 2 or not all(isinstance(t, (int, float)) for t in v):
            raise InputError("complex scalars are [re, im]", where)
        return complex(v[0], v[1])
    if isinstance(v, str):
        try:
            return complex(to_exact(v))
        except (TypeError, ValueError) as exc:
            raise InputError(str(exc), where) from exc
    if isinstance(v, (int, float)):
        return complex(v)
    raise InputError(f"not a scalar: {v!r}", where)


def matrix_to_json(A) -> list:
    A = np.asarray(A)
    return [[scalar_to_json(v) for v in row] for row in A]


def vector_to_json(v) -> list:
    return [scalar_to_json(x) for x in np.asarray(v).ravel()]


def matrix_from_json(data, exact: bool = True, where: str = "matrix") -> np.ndarray:
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise InputError("a matrix is a list of rows", where)
    widths = {len(r) for r in data}
    if len(widths) > 1:
        raise InputError("rows have different lengths", where)
    rows = [[scalar_from_json(v, exact, f"{where}[{i}][{j}]") for j, v in enumerate(r)] for i, r in enumerate(data)]
    if exact:
        return linalg.exact_matrix(rows) if rows else linalg.zeros(0, 0)
    return np.array(rows, dtype=complex).reshape(len(rows), widths.pop() if widths else 0)


def point_from_json(data, exact: bool = True, where: str = "point") -> tuple:
    if not isinstance(data, list) or len(data) != 3:
        raise InputError("a point is a list of three homogeneous coordinates", where)
    pt = tuple(scalar_from_json(v, exact, f"{where}[{k}]") for k, v in enumerate(data))
    if all(v == 0 for v in pt):
        raise InputError("the zero vector is not a projective point", where)
    return pt


def detrep_to_json(D: DetRep) -> dict:
    return {
        "m": D.m,
        "D0": matrix_to_json(D.D0),
        "D1": matrix_to_json(D.D1),
        "D2": matrix_to_json(D.D2),
        "hermitian": D.hermitian,
    }


def detrep_from_json(data, exact: bool = True, where: str = "detrep") -> DetRep:
    if not isinstance(data, dict):
        raise InputError("expected an object with D0, D1, D2", where)
    mats = []
    for name in ("D0", "D1", "D2"):
        if name not in data:
            raise InputError(f"missing {name}", where)
        mats.append(matrix_from_json(data[name], exact, f"{where}.{name}"))
    try:
        D = DetRep(*mats)
    except DegeneratePencil:
        raise
    except ValueError as exc:
        raise InputError(str(exc), where) from exc
    if "m" in data and data["m"] != D.m:
        raise InputError(f"m = {data['m']} but the matrices are {D.m} x {D.m}", where)
    return D


def form_from_json(text, where: str = "form", degree: int | None = None) -> HomPoly3:
    if not isinstance(text, str):
        raise InputError("polynomials are given as text", where)
    return parse_poly(text, ("x0", "x1", "x2"), degree)


def map_from_json(data, exact: bool = True, where: str = "map"):
    from .ratmap import RationalMap

    if not isinstance(data, dict):
        raise InputError("expected an object with p0, p1, p2", where)
    forms = []
    for name in ("p0", "p1", "p2"):
        if name not in data:
            raise InputError(f"missing {name}", where)
        forms.append(form_from_json(data[name], f"{where}.{name}"))
    degree = max(f.degree for f in forms)
    forms = [f if f.degree == degree or not f.is_zero() else HomPoly3({}, degree) for f in forms]
    bps = data.get("basepoints", [])
    if not isinstance(bps, list):
        raise InputError("basepoints must be a list of points", where)
    pts = [point_from_json(b, exact, f"{where}.basepoints[{k}]") for k, b in enumerate(bps)]
    return RationalMap(*forms, basepoints=pts)
