"""JSON file formats for cones, points, cone pairs, matrices and verdicts.

Cones::

    {"space_dim": 2, "generators": [["2", "-1"], ["-1", "2"]]}
    {"space_dim": 2, "inequalities": [["1", "0"], ["0", "1"]]}

Rationals are ``"p/q"`` strings (plain integers also accepted). A point is
either a bare list or ``{"point": [...]}``; a pair is ``{"K": cone, "L": cone}``.
Matrices are ``{"d1": n, "d2": m, "matrix": [[[re, im], ...], ...]}``.
"""

from __future__ import annotations

import dataclasses
import json
from fractions import Fraction
from pathlib import Path
from typing import Any

import numpy as np

from conedetect.exact import ConeH, ConeV, Face
from conedetect.exact_pair import ExactPair
from conedetect.quantum import ProductVector

LOAD_ATOL = 1e-12


class InputError(ValueError):
    """Malformed or inconsistent input file."""


def load_json(path: str | Path) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc


def _rational(x, where: str) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise InputError(f"{where}: expected an integer or 'p/q' string, got {x!r}")
    try:
        return Fraction(x)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{where}: bad rational {x!r}") from exc


def _rational_rows(rows, where: str, n: int) -> tuple:
    if not isinstance(rows, list):
        raise InputError(f"{where}: expected a list of vectors")
    out = []
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise InputError(f"{where}[{i}]: expected a vector of length {n}")
        out.append(tuple(_rational(x, f"{where}[{i}]") for x in row))
    return tuple(out)


def parse_cone(data, where: str = "cone") -> ConeV | ConeH:
    if not isinstance(data, dict) or "space_dim" not in data:
        raise InputError(f"{where}: missing 'space_dim'")
    n = data["space_dim"]
    if not isinstance(n, int) or n < 1:
        raise InputError(f"{where}: 'space_dim' must be a positive integer")
    if "generators" in data:
        return ConeV(n, _rational_rows(data["generators"], f"{where}.generators", n))
    if "inequalities" in data:
        return ConeH(n, _rational_rows(data["inequalities"], f"{where}.inequalities", n))
    raise InputError(f"{where}: needs 'generators' or 'inequalities'")


def parse_point(data, space_dim: int | None = None, where: str = "point") -> tuple[Fraction, ...]:
    if isinstance(data, dict):
        data = data.get("point")
    if not isinstance(data, list):
        raise InputError(f"{where}: expected a list of rationals")
    v = tuple(_rational(x, where) for x in data)
    if space_dim is not None and len(v) != space_dim:
        raise InputError(f"{where}: length {len(v)} does not match space_dim {space_dim}")
    return v


def parse_pair(data, where: str = "pair") -> ExactPair:
    if not isinstance(data, dict) or "K" not in data or "L" not in data:
        raise InputError(f"{where}: expected keys 'K' and 'L'")
    K = parse_cone(data["K"], f"{where}.K")
    L = parse_cone(data["L"], f"{where}.L")
    return ExactPair(K, L)


def parse_matrix(data, where: str = "matrix") -> tuple[np.ndarray, tuple[int, int]]:
    try:
        d1, d2 = int(data["d1"]), int(data["d2"])
        A = np.array(data["matrix"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{where}: expected {{'d1', 'd2', 'matrix': [[[re, im], ...]]}}") from exc
    D = d1 * d2
    if A.shape != (D, D, 2):
        raise InputError(f"{where}: matrix shape {A.shape[:2]} does not match {d1}x{d2}")
    M = A[..., 0] + 1j * A[..., 1]
    if np.max(np.abs(M - M.conj().T)) > LOAD_ATOL:
        raise InputError(f"{where}: matrix is not Hermitian")
    return M, (d1, d2)


def matrix_record(M: np.ndarray, dims) -> dict:
    M = np.asarray(M, dtype=complex)
    return {
        "d1": int(dims[0]),
        "d2": int(dims[1]),
        "matrix": [[[float(z.real), float(z.imag)] for z in row] for row in M],
    }


def cone_record(cone: ConeV | ConeH) -> dict:
    if isinstance(cone, ConeV):
        return {"space_dim": cone.space_dim, "generators": [[str(x) for x in g] for g in cone.generators]}
    return {"space_dim": cone.space_dim, "inequalities": [[str(x) for x in h] for h in cone.inequalities]}


def to_jsonable(obj: Any) -> Any:
    """Recursively convert verdicts, rationals and arrays to plain JSON values."""
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, np.ndarray):
        if np.iscomplexobj(obj):
            return to_jsonable(obj.tolist())
        return obj.tolist()
    if isinstance(obj, ProductVector):
        return {"phi": to_jsonable(obj.phi), "psi": to_jsonable(obj.psi)}
    if isinstance(obj, (ConeV, ConeH)):
        return cone_record(obj)
    if isinstance(obj, Face):
        return {
            "tight_set": sorted(obj.tight_set),
            "generators": [[str(x) for x in g] for g in obj.generators],
            "dim": obj.dim,
        }
    if dataclasses.is_dataclass(obj):
        out = {}
        for f in dataclasses.fields(obj):
            key = "lambda" if f.name == "lambda_" else f.name
            out[key] = to_jsonable(getattr(obj, f.name))
        return out
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, frozenset, set)):
        items = sorted(obj) if isinstance(obj, (frozenset, set)) else obj
        return [to_jsonable(x) for x in items]
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def verdict_record(verdict: Any, *, tolerance, seed: int, backend: str) -> dict:
    rec = to_jsonable(verdict)
    if not isinstance(rec, dict):
        rec = {"value": rec}
    rec.update({"tolerance": tolerance, "seed": seed, "backend": backend})
    return rec


def dumps(record: Any) -> str:
    return json.dumps(record, sort_keys=True, indent=2)
