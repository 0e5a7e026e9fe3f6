"""JSON file format for structure matrices and basis-change matrices.

    {"dim": 3, "matrix": [["0", "1", "0"], ["-1", "0", "1"], ["0", "-1", "0"]]}

Entries are rational strings ``"p"`` or ``"p/q"`` (JSON integers are also
accepted; floats never are).  For a structure matrix row ``i`` lists the
coordinates of ``e_i^2``; for a basis change column ``j`` lists the
coordinates of the new vector ``f_j``.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .algebra import EvolutionAlgebra
from .linalg import Matrix

_RATIONAL = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


class FormatError(ValueError):
    """Input file could not be parsed."""


def parse_rational(value, where: str = "") -> Fraction:
    prefix = f"{where}: " if where else ""
    if isinstance(value, bool) or isinstance(value, float):
        raise FormatError(f"{prefix}expected a rational string, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str):
        raise FormatError(f"{prefix}expected a rational string, got {value!r}")
    m = _RATIONAL.match(value.replace("−", "-"))
    if not m:
        raise FormatError(f"{prefix}not a rational literal: {value!r}")
    num, den = int(m.group(1)), int(m.group(2) or 1)
    if den == 0:
        raise FormatError(f"{prefix}zero denominator in {value!r}")
    return Fraction(num, den)


def format_rational(x: Fraction) -> str:
    return str(Fraction(x))


def _load_json(path) -> dict:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise FormatError(f"{path}: cannot read file ({exc.strerror})") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        lines = text.splitlines()
        context = lines[exc.lineno - 1] if 0 < exc.lineno <= len(lines) else ""
        raise FormatError(
            f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}\n    {context}\n    {' ' * (exc.colno - 1)}^"
        ) from exc
    if not isinstance(data, dict):
        raise FormatError(f"{path}: top level must be an object with 'dim' and 'matrix'")
    return data


def matrix_from_data(data: dict, source: str = "<data>") -> Matrix:
    rows = data.get("matrix")
    if not isinstance(rows, list) or not rows:
        raise FormatError(f"{source}: 'matrix' must be a non-empty list of rows")
    n = data.get("dim", len(rows))
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise FormatError(f"{source}: 'dim' must be a positive integer")
    if len(rows) != n:
        raise FormatError(f"{source}: 'dim' is {n} but the matrix has {len(rows)} rows")
    out = []
    for i, row in enumerate(rows, start=1):
        if not isinstance(row, list) or len(row) != n:
            got = len(row) if isinstance(row, list) else type(row).__name__
            raise FormatError(f"{source}: matrix row {i} must have {n} entries (got {got})")
        out.append(tuple(parse_rational(x, f"{source}: row {i}, column {j}") for j, x in enumerate(row, start=1)))
    return tuple(out)


def read_matrix(path) -> Matrix:
    return matrix_from_data(_load_json(path), str(path))


def parse_algebra(path) -> EvolutionAlgebra:
    return EvolutionAlgebra(read_matrix(path))


def matrix_to_data(m: Sequence[Sequence]) -> dict:
    return {"dim": len(m), "matrix": [[format_rational(x) for x in row] for row in m]}


def algebra_to_data(a: EvolutionAlgebra) -> dict:
    return matrix_to_data(a.matrix)


def dumps_algebra(a: EvolutionAlgebra) -> str:
    return json.dumps(algebra_to_data(a))


def loads_algebra(text: str) -> EvolutionAlgebra:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"<string>:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    return EvolutionAlgebra(matrix_from_data(data, "<string>"))


def write_algebra(a: EvolutionAlgebra, path) -> None:
    Path(path).write_text(json.dumps(algebra_to_data(a), indent=2) + "\n")
