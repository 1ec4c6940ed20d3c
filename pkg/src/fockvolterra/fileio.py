"""JSON function files and report writers.

Function files look like::

    {"type": "poly", "coeffs": [[1, 0], [0, 2]]}          # 1 + 2i z
    {"type": "exppoly", "p": [[1, 0]], "q": [0, 0, 0.25]}  # e^{z^2/4}

Coefficients are ascending in degree and each one is either a real number
or a ``[re, im]`` pair. Non-finite numbers (``NaN``, ``Infinity``) are
rejected, and every error names the offending field path.
"""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path

from .funcrep import ComplexPolynomial, EntireFunction, ExpPoly, Poly, exp_poly


class FunctionFileError(ValueError):
    """Malformed function file; ``path`` is the JSON field path."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


def _reject_constant(name):
    raise ValueError(f"non-finite number {name} is not allowed")


def loads_json(text: str):
    try:
        return json.loads(text, parse_constant=_reject_constant)
    except ValueError as exc:
        raise FunctionFileError("$", str(exc)) from None


def _number(x, path) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise FunctionFileError(path, f"expected a number, got {type(x).__name__}")
    if not math.isfinite(x):
        raise FunctionFileError(path, "non-finite number")
    return float(x)


def parse_coeffs(data, path: str) -> ComplexPolynomial:
    if not isinstance(data, list):
        raise FunctionFileError(path, "expected a list of coefficients")
    out = []
    for i, c in enumerate(data):
        p = f"{path}[{i}]"
        if isinstance(c, list):
            if len(c) != 2:
                raise FunctionFileError(p, "complex coefficient must be [re, im]")
            out.append(complex(_number(c[0], p + "[0]"), _number(c[1], p + "[1]")))
        else:
            out.append(complex(_number(c, p)))
    return ComplexPolynomial(out)


def parse_function(data) -> EntireFunction:
    if not isinstance(data, dict):
        raise FunctionFileError("$", "expected an object")
    kind = data.get("type")
    if kind == "poly":
        if "coeffs" not in data:
            raise FunctionFileError("$.coeffs", "missing")
        return Poly(parse_coeffs(data["coeffs"], "$.coeffs"))
    if kind == "exppoly":
        for key in ("p", "q"):
            if key not in data:
                raise FunctionFileError(f"$.{key}", "missing")
        return exp_poly(parse_coeffs(data["p"], "$.p"), parse_coeffs(data["q"], "$.q"))
    raise FunctionFileError("$.type", f"unknown function type {kind!r} (expected 'poly' or 'exppoly')")


def parse_polynomial(data) -> ComplexPolynomial:
    """A symbol ``g``: a ``poly`` function file or a bare coefficient list."""
    if isinstance(data, list):
        return parse_coeffs(data, "$")
    f = parse_function(data)
    if not isinstance(f, Poly):
        raise FunctionFileError("$.type", "symbol must be a polynomial")
    return f.p


def load_function(path) -> EntireFunction:
    return parse_function(loads_json(Path(path).read_text()))


def load_polynomial(path) -> ComplexPolynomial:
    return parse_polynomial(loads_json(Path(path).read_text()))


def _pairs(p: ComplexPolynomial):
    return [[c.real, c.imag] for c in p.coeffs]


def function_to_json(f: EntireFunction) -> dict:
    if isinstance(f, Poly):
        return {"type": "poly", "coeffs": _pairs(f.p)}
    if isinstance(f, ExpPoly):
        return {"type": "exppoly", "p": _pairs(f.p), "q": _pairs(f.q)}
    raise TypeError(f"{type(f).__name__} has no closed-form file representation")


def jsonable(x):
    """Convert results to JSON-safe values (complex -> [re, im], inf -> "inf")."""
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if isinstance(x, complex):
        return [jsonable(x.real), jsonable(x.imag)]
    if isinstance(x, float):
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    if hasattr(x, "item") and callable(x.item):  # numpy scalars
        return jsonable(x.item())
    return x


def write_json(obj, path=None) -> str:
    text = json.dumps(jsonable(obj), indent=2, sort_keys=False)
    if path:
        Path(path).write_text(text + "\n")
    return text


def write_csv(rows, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, quoting=csv.QUOTE_MINIMAL)
        for row in rows:
            writer.writerow(row)
