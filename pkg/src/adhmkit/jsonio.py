"""JSON serialization of data and reports.

Datum schema::

    {"c": 2, "r": 1, "B1": [[lf, lf], [lf, lf]], "B2": ..., "i": ..., "j": ...}

where a linear form ``lf`` is ``{"x0": "<scalar>", "x1": "<scalar>"}``
with absent keys meaning zero. Scalars use the canonical text grammar.
Reports carry polynomials printed in the canonical monomial order, so
identical inputs always produce byte-identical output.
"""

from __future__ import annotations

import json
from typing import Any, Mapping

from .adhm import AdhmDatum, P1Point, UnstableLocus
from .linalg import Matrix, Subspace
from .monad import LineLocus, P3Point
from .polymatrix import PolyMatrix
from .scalars import Scalar, ScalarParseError, ZERO, parse_scalar


class DatumSchemaError(ValueError):
    """A datum document violates the schema; the message carries the path."""


def scalar_str(s: Scalar) -> str:
    return str(s)


def _parse_scalar_at(text: Any, path: str) -> Scalar:
    if not isinstance(text, str):
        raise DatumSchemaError(f"{path}: expected a scalar string, got {text!r}")
    try:
        return parse_scalar(text)
    except ScalarParseError as exc:
        raise DatumSchemaError(f"{path}: {exc}") from None


def _parse_linear_form(obj: Any, path: str,
                       variables: tuple[str, ...]) -> dict[str, Scalar]:
    if not isinstance(obj, Mapping):
        raise DatumSchemaError(f"{path}: expected a linear-form object, got {obj!r}")
    out = {}
    for key, value in obj.items():
        if key not in variables:
            raise DatumSchemaError(
                f"{path}: unknown coordinate {key!r} (allowed: {', '.join(variables)})"
            )
        out[key] = _parse_scalar_at(value, f"{path}.{key}")
    return out


def _parse_block(obj: Any, path: str, rows: int, cols: int,
                 variables: tuple[str, ...]) -> dict[str, Matrix]:
    if not isinstance(obj, list) or len(obj) != rows:
        raise DatumSchemaError(f"{path}: expected {rows} rows")
    grids = {v: [] for v in variables}
    for i, row in enumerate(obj):
        if not isinstance(row, list) or len(row) != cols:
            raise DatumSchemaError(f"{path}[{i}]: expected {cols} entries")
        slot_rows = {v: [] for v in variables}
        for j, entry in enumerate(row):
            coeffs = _parse_linear_form(entry, f"{path}[{i}][{j}]", variables)
            for v in variables:
                slot_rows[v].append(coeffs.get(v, ZERO))
        for v in variables:
            grids[v].append(tuple(slot_rows[v]))
    return {
        v: Matrix(rows, cols, tuple(grids[v])) for v in variables
    }


def parse_datum(obj: Any) -> AdhmDatum:
    if not isinstance(obj, Mapping):
        raise DatumSchemaError("top level: expected an object")
    for key in ("c", "r"):
        if key not in obj or not isinstance(obj[key], int) or obj[key] < 0:
            raise DatumSchemaError(f"top level: {key!r} must be a nonnegative integer")
    c, r = obj["c"], obj["r"]
    for key in ("B1", "B2", "i", "j"):
        if key not in obj:
            raise DatumSchemaError(f"top level: missing {key!r}")
    p1 = ("x0", "x1")
    b1 = _parse_block(obj["B1"], "B1", c, c, p1)
    b2 = _parse_block(obj["B2"], "B2", c, c, p1)
    i = _parse_block(obj["i"], "i", c, r, p1)
    j = _parse_block(obj["j"], "j", r, c, p1)
    return AdhmDatum(
        c, r,
        b1["x0"], b1["x1"], b2["x0"], b2["x1"],
        i["x0"], i["x1"], j["x0"], j["x1"],
    )


def _linear_form_json(coeffs: dict[str, Scalar]) -> dict[str, str]:
    return {name: str(value) for name, value in coeffs.items() if not value.is_zero()}


def _pencil_block_json(m0: Matrix, m1: Matrix) -> list[list[dict[str, str]]]:
    return [
        [
            _linear_form_json({"x0": m0.entries[i][j], "x1": m1.entries[i][j]})
            for j in range(m0.cols)
        ]
        for i in range(m0.rows)
    ]


def datum_to_json(x: AdhmDatum) -> dict:
    return {
        "c": x.c,
        "r": x.r,
        "B1": _pencil_block_json(x.b10, x.b11),
        "B2": _pencil_block_json(x.b20, x.b21),
        "i": _pencil_block_json(x.i0, x.i1),
        "j": _pencil_block_json(x.j0, x.j1),
    }


def polymatrix_to_json(pm: PolyMatrix) -> list[list[dict[str, str]]]:
    """Entries of a matrix of linear forms as coordinate-to-scalar maps."""
    out = []
    for row in pm.entries:
        json_row = []
        for p in row:
            coeffs = {}
            for name in pm.variables:
                exps = tuple(1 if v == name else 0 for v in pm.variables)
                value = p.coefficient(exps)
                if not value.is_zero():
                    coeffs[name] = str(value)
            json_row.append(coeffs)
        out.append(json_row)
    return out


def matrix_to_json(m: Matrix) -> list[list[str]]:
    return [[str(e) for e in row] for row in m.entries]


def subspace_to_json(s: Subspace) -> dict:
    return {"ambient_dim": s.ambient_dim, "basis": matrix_to_json(s.basis)}


def p1point_to_json(p: P1Point) -> dict:
    return {"a": str(p.a), "b": str(p.b)}


def locus_to_json(locus: UnstableLocus) -> dict:
    return {
        "kind": locus.kind.value,
        "points": [p1point_to_json(p) for p in locus.points],
        "residual": str(locus.residual) if locus.residual is not None else None,
    }


def p3point_str(p: P3Point) -> str:
    return str(p)


def line_locus_to_json(locus: LineLocus) -> dict:
    return {
        "whole_line": locus.whole_line,
        "params": [str(t) for t in locus.params],
        "points": [str(p) for p in locus.points],
        "infinity_degenerate": locus.infinity_degenerate,
        "residual": str(locus.residual) if locus.residual is not None else None,
    }


def dumps_canonical(payload: Any, compact: bool = False) -> str:
    if compact:
        return json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return json.dumps(payload, sort_keys=True, indent=2)
