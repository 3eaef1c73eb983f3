"""Reading and writing the JSON documents described in docs/formats.md.

Matrices are nested lists of rows.  An entry is a number or a ``[re, im]``
pair.  Infinite values are written as the strings ``"inf"`` / ``"-inf"``, and
every float is rounded to 12 significant digits on output.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any

import numpy as np

from .channels import ClassicalChannel, QuantumChannel
from .errors import DimensionMismatch, DyndivError, ParseError
from .majorization import Dichotomy
from .tolerances import ToleranceConfig

DIGITS = 12


# ---------------------------------------------------------------------------
# parsing


def _entry(v, where: str) -> complex:
    if isinstance(v, bool):
        raise ParseError(f"{where}: booleans are not numbers")
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, list) and len(v) == 2 and all(
            isinstance(x, (int, float)) and not isinstance(x, bool) for x in v):
        return complex(v[0], v[1])
    raise ParseError(f"{where}: expected a number or [re, im], got {v!r}")


def parse_matrix(raw, where: str = "matrix") -> np.ndarray:
    if not isinstance(raw, list) or not raw or not all(isinstance(r, list) for r in raw):
        raise ParseError(f"{where}: expected a nonempty list of rows")
    width = len(raw[0])
    if any(len(r) != width for r in raw):
        raise ParseError(f"{where}: rows have different lengths")
    return np.array([[_entry(v, f"{where}[{i}][{j}]") for j, v in enumerate(row)]
                     for i, row in enumerate(raw)], dtype=complex)


def parse_vector(raw, where: str = "vector") -> np.ndarray:
    if not isinstance(raw, list) or not raw:
        raise ParseError(f"{where}: expected a nonempty list of numbers")
    out = []
    for i, v in enumerate(raw):
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ParseError(f"{where}[{i}]: expected a real number, got {v!r}")
        out.append(float(v))
    return np.array(out)


def _real(m: np.ndarray, where: str) -> np.ndarray:
    if np.any(m.imag != 0):
        raise ParseError(f"{where}: entries must be real")
    return m.real


def _checked(build, where: str):
    try:
        return build()
    except DimensionMismatch:
        raise
    except DyndivError as exc:
        raise ParseError(f"{where}: {exc}") from exc


def parse_channel(doc: dict, tol: ToleranceConfig | None = None, where: str = "channel"):
    """A quantum channel (``choi`` or ``kraus``) or a classical channel (``matrix``)."""
    if not isinstance(doc, dict):
        raise ParseError(f"{where}: expected a JSON object")
    if "matrix" in doc:
        m = _real(parse_matrix(doc["matrix"], f"{where}.matrix"), f"{where}.matrix")
        return _checked(lambda: ClassicalChannel(m, tol), where)
    if "kraus" in doc:
        ks = doc["kraus"]
        if not isinstance(ks, list) or not ks:
            raise ParseError(f"{where}.kraus: expected a nonempty list of matrices")
        mats = [parse_matrix(k, f"{where}.kraus[{i}]") for i, k in enumerate(ks)]
        return _checked(lambda: QuantumChannel.from_kraus(mats, tol), where)
    if "choi" in doc:
        for key in ("dim_in", "dim_out"):
            if not isinstance(doc.get(key), int) or isinstance(doc.get(key), bool):
                raise ParseError(f"{where}.{key}: expected an integer")
        choi = parse_matrix(doc["choi"], f"{where}.choi")
        return _checked(lambda: QuantumChannel.from_choi(choi, doc["dim_in"], doc["dim_out"], tol), where)
    raise ParseError(f"{where}: expected one of the keys 'choi', 'kraus' or 'matrix'")


def parse_dichotomy(doc: dict, where: str = "dichotomy") -> Dichotomy:
    if not isinstance(doc, dict) or "p" not in doc or "q" not in doc:
        raise ParseError(f"{where}: expected an object with 'p' and 'q'")
    return Dichotomy(parse_vector(doc["p"], f"{where}.p"), parse_vector(doc["q"], f"{where}.q"))


def parse_any(doc: Any, tol: ToleranceConfig | None = None, where: str = "input"):
    """Dispatch on the document shape.

    Returns a probability vector (1-d float array), a density matrix (2-d
    complex array), a :class:`Dichotomy`, or a channel.
    """
    if isinstance(doc, dict):
        if "state" in doc:
            return parse_matrix(doc["state"], f"{where}.state")
        if "p" in doc and "q" in doc:
            return parse_dichotomy(doc, where)
        return parse_channel(doc, tol, where)
    if isinstance(doc, list) and doc and isinstance(doc[0], list):
        return parse_matrix(doc, where)
    return parse_vector(doc, where)


def load(path, tol: ToleranceConfig | None = None):
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except OSError as exc:
        raise ParseError(f"{path}: cannot read ({exc.strerror})") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}") from exc
    return parse_any(doc, tol, where=str(path))


# ---------------------------------------------------------------------------
# writing


def fmt_float(x: float):
    """Round to 12 significant digits; infinities become strings."""
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if math.isnan(x):
        return "nan"
    return float(f"{x:.{DIGITS}g}") + 0.0


def dump_matrix(m) -> list:
    m = np.asarray(m)
    if np.iscomplexobj(m) and np.any(m.imag != 0):
        return [[[fmt_float(v.real), fmt_float(v.imag)] for v in row] for row in m]
    return [[fmt_float(v) for v in row] for row in np.real(m)]


def dump_channel(ch) -> dict:
    if isinstance(ch, ClassicalChannel):
        return {"matrix": dump_matrix(ch.matrix)}
    return {"dim_in": ch.dim_in, "dim_out": ch.dim_out, "choi": dump_matrix(ch.choi)}


def dump_dichotomy(d: Dichotomy) -> dict:
    return {"p": [fmt_float(v) for v in d.p], "q": [fmt_float(v) for v in d.q]}


def dumps(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"
