"""JSON encoding of channels and observables.

Channel file::

    {
      "dim": 2,
      "kraus": [
        [
          [[re, im], [re, im]],
          [[re, im], [re, im]]
        ]
      ]
    }

Observable files use ``{"dim": N, "matrix": <matrix>}`` with the same matrix
encoding; a bare matrix is accepted too. Numbers are written with the shortest
representation that round-trips, so write -> read -> write is byte-identical.
"""
import json
import math

import numpy as np

from .channel import QuantumChannel, trace_residual
from .errors import InvalidChannel, QReversalError

SCHEMA_VERSION = 1


class ParseError(QReversalError):
    """Malformed input file; the message names the offending line or field."""


def _num(x: float) -> str:
    x = float(x)
    if x == 0.0:
        x = 0.0  # drop negative zero
    return json.dumps(x)


def _matrix_lines(m, indent):
    pad = " " * indent
    rows = []
    for row in m:
        cells = ", ".join(f"[{_num(z.real)}, {_num(z.imag)}]" for z in row)
        rows.append(f"{pad}  [{cells}]")
    return f"{pad}[\n" + ",\n".join(rows) + f"\n{pad}]"


def dumps_channel(phi: QuantumChannel) -> str:
    blocks = ",\n".join(_matrix_lines(a, 4) for a in phi.kraus)
    return f'{{\n  "dim": {phi.dim},\n  "kraus": [\n{blocks}\n  ]\n}}\n'


def dumps_matrix(m) -> str:
    m = np.asarray(m, dtype=np.complex128)
    return f'{{\n  "dim": {m.shape[0]},\n  "matrix": {_matrix_lines(m, 2).lstrip()}\n}}\n'


def _load_json(text, source):
    try:
        return json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _reject_constant(name):
    raise ParseError(f"non-finite number {name} is not allowed")


def _parse_matrix(obj, path, dim=None):
    if not isinstance(obj, list) or not obj:
        raise ParseError(f"{path}: expected a non-empty list of rows")
    n = len(obj)
    if dim is not None and n != dim:
        raise ParseError(f"{path}: expected {dim} rows, got {n}")
    out = np.zeros((n, n), dtype=np.complex128)
    for r, row in enumerate(obj):
        if not isinstance(row, list) or len(row) != n:
            raise ParseError(f"{path}[{r}]: expected a row of {n} entries")
        for c, z in enumerate(row):
            where = f"{path}[{r}][{c}]"
            if (
                not isinstance(z, list)
                or len(z) != 2
                or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in z)
            ):
                raise ParseError(f"{where}: expected an [re, im] pair of numbers")
            if not all(math.isfinite(x) for x in z):
                raise ParseError(f"{where}: entries must be finite")
            out[r, c] = complex(z[0], z[1])
    return out


def parse_channel(text: str, source: str = "<channel>", tol: float = 1e-8) -> QuantumChannel:
    """Parse and validate a channel file; raises :class:`ParseError` or :class:`InvalidChannel`."""
    obj = _load_json(text, source)
    if not isinstance(obj, dict):
        raise ParseError(f"{source}: top level must be an object")
    for key in ("dim", "kraus"):
        if key not in obj:
            raise ParseError(f"{source}: missing field {key!r}")
    dim = obj["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise ParseError(f"{source}: field 'dim' must be a positive integer")
    kraus = obj["kraus"]
    if not isinstance(kraus, list) or not kraus:
        raise ParseError(f"{source}: field 'kraus' must be a non-empty list")
    ops = [_parse_matrix(m, f"{source}: kraus[{i}]", dim) for i, m in enumerate(kraus)]
    phi = QuantumChannel(tuple(ops))
    residual = trace_residual(phi)
    if not residual < tol:
        raise InvalidChannel(
            f"{source}: not trace preserving, ||sum A^dag A - 1|| = {residual:.6g} (tol {tol:g})",
            residual,
        )
    return phi


def parse_matrix(text: str, source: str = "<matrix>") -> np.ndarray:
    obj = _load_json(text, source)
    if isinstance(obj, dict):
        if "matrix" not in obj:
            raise ParseError(f"{source}: missing field 'matrix'")
        dim = obj.get("dim")
        if dim is not None and (not isinstance(dim, int) or isinstance(dim, bool)):
            raise ParseError(f"{source}: field 'dim' must be an integer")
        return _parse_matrix(obj["matrix"], f"{source}: matrix", dim)
    return _parse_matrix(obj, f"{source}: matrix")


def read_channel(path, tol: float = 1e-8) -> QuantumChannel:
    with open(path, encoding="utf-8") as fh:
        return parse_channel(fh.read(), str(path), tol)


def write_channel(phi: QuantumChannel, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(dumps_channel(phi))


def read_matrix(path) -> np.ndarray:
    with open(path, encoding="utf-8") as fh:
        return parse_matrix(fh.read(), str(path))
