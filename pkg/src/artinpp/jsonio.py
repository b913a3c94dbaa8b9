"""JSON encodings of algebras, modules, maps and pp formulas.

Every encoding is plain integers and strings; ``dumps`` writes with sorted
keys so saving twice gives identical bytes.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .algebra import Algebra, AlgebraError, QuiverPresentation, algebra_from_quiver, algebra_from_structconst
from .modules import SIDES, Module, ModuleError, ModuleMap, make_module, module_map
from .pp import PpFormula


class FormatError(ValueError):
    def __init__(self, message: str, source: str = ""):
        super().__init__(f"{source}: {message}" if source else message)
        self.source = source


def _grid(a: np.ndarray) -> list:
    return np.asarray(a, dtype=np.int64).tolist()


def _int_array(value, ndim: int, what: str) -> np.ndarray:
    try:
        arr = np.array(value, dtype=np.int64)
    except (TypeError, ValueError, OverflowError):
        raise FormatError(f"{what} must be an integer array") from None
    if arr.ndim != ndim and arr.size:
        raise FormatError(f"{what} must have {ndim} dimensions, got {arr.ndim}")
    return arr


def algebra_to_dict(alg: Algebra) -> dict:
    if alg.provenance is not None:
        q = alg.provenance
        return {
            "p": alg.p,
            "kind": "quiver",
            "vertices": q.vertices,
            "arrows": [list(a) for a in q.arrows],
            "arrow_names": list(q.arrow_names),
            "relations": [[[c, list(path)] for c, path in rel] for rel in q.relations],
        }
    out = {
        "p": alg.p,
        "kind": "structconst",
        "dim": alg.dim,
        "labels": list(alg.labels),
        "structconst": _grid(alg.structconst),
        "unit": _grid(alg.unit),
    }
    if alg.radical_basis is not None:
        out["radical_basis"] = _grid(alg.radical_basis)
    if alg.idempotents is not None:
        out["idempotents"] = _grid(alg.idempotents)
    return out


def algebra_from_dict(data: dict, p: int | None = None) -> Algebra:
    if not isinstance(data, dict):
        raise FormatError("algebra must be a JSON object")
    prime = data.get("p", p)
    if not isinstance(prime, int):
        raise FormatError("'p' must be an integer")
    if p is not None and p != prime:
        raise FormatError(f"file has p = {prime} but p = {p} was requested")
    kind = data.get("kind")
    try:
        if kind == "quiver":
            q = QuiverPresentation(
                int(data["vertices"]),
                tuple(tuple(int(v) for v in a) for a in data.get("arrows", [])),
                tuple(tuple((int(c), tuple(int(x) for x in path)) for c, path in rel) for rel in data.get("relations", [])),
                tuple(data["arrow_names"]) if data.get("arrow_names") is not None else None,
            )
            return algebra_from_quiver(q, prime)
        if kind == "structconst":
            sc = _int_array(data["structconst"], 3, "structconst")
            d = int(data.get("dim", sc.shape[0]))
            if sc.shape != (d, d, d):
                raise FormatError(f"structconst must have shape ({d}, {d}, {d}), got {sc.shape}")
            return algebra_from_structconst(
                sc,
                prime,
                labels=data.get("labels"),
                unit=data.get("unit"),
                radical_basis=data.get("radical_basis"),
                idempotents=data.get("idempotents"),
            )
    except KeyError as exc:
        raise FormatError(f"missing field {exc.args[0]!r}") from None
    except AlgebraError as exc:
        raise FormatError(str(exc)) from None
    raise FormatError(f"'kind' must be 'structconst' or 'quiver', got {kind!r}")


def module_to_dict(m: Module) -> dict:
    out = {"side": m.side, "dim": m.dim, "action": _grid(m.action)}
    if m.name:
        out["name"] = m.name
    return out


def module_from_dict(data: dict, alg: Algebra) -> Module:
    if not isinstance(data, dict):
        raise FormatError("module must be a JSON object")
    side = data.get("side", "left")
    if side not in SIDES:
        raise FormatError(f"'side' must be one of {SIDES}, got {side!r}")
    try:
        dim = int(data["dim"])
        act = _int_array(data["action"], 3, "action")
    except KeyError as exc:
        raise FormatError(f"missing field {exc.args[0]!r}") from None
    if act.size == 0:
        act = np.zeros((alg.dim, dim, dim), dtype=np.int64)
    if act.shape != (alg.dim, dim, dim):
        raise FormatError(f"action must have shape ({alg.dim}, {dim}, {dim}), got {act.shape}")
    if np.any((act < 0) | (act >= alg.p)):
        raise FormatError(f"action entries must lie in 0..{alg.p - 1}")
    try:
        return make_module(alg, side, act, name=data.get("name", ""))
    except ModuleError as exc:
        raise FormatError(str(exc)) from None


def map_to_dict(f: ModuleMap) -> dict:
    return {"rows": f.target.dim, "cols": f.source.dim, "matrix": _grid(f.matrix)}


def map_from_dict(data: dict, source: Module, target: Module) -> ModuleMap:
    mat = _int_array(data["matrix"], 2, "matrix").reshape(target.dim, source.dim)
    try:
        return module_map(source, target, mat)
    except ModuleError as exc:
        raise FormatError(str(exc)) from None


def formula_to_dict(phi: PpFormula) -> dict:
    return {
        "side": phi.side,
        "n": phi.n,
        "m": phi.m,
        "A": _grid(phi.A),
        "B": _grid(phi.B),
        "text": str(phi),
    }


def formula_from_dict(data: dict, alg: Algebra) -> PpFormula:
    n, m = int(data["n"]), int(data["m"])
    a = np.array(data["A"], dtype=np.int64).reshape(-1, n, alg.dim)
    b = np.array(data["B"], dtype=np.int64).reshape(a.shape[0], m, alg.dim)
    return PpFormula(alg, data["side"], a, b)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _read(path) -> dict:
    path = Path(path)
    try:
        return json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON (line {exc.lineno}, column {exc.colno}): {exc.msg}", str(path)) from None
    except OSError as exc:
        raise FormatError(exc.strerror or str(exc), str(path)) from None


def load_algebra(path, p: int | None = None) -> Algebra:
    try:
        return algebra_from_dict(_read(path), p)
    except FormatError as exc:
        if exc.source:
            raise
        raise FormatError(str(exc), str(path)) from None


def save_algebra(alg: Algebra, path):
    Path(path).write_text(dumps(algebra_to_dict(alg)))


def load_module(path, alg: Algebra) -> Module:
    try:
        return module_from_dict(_read(path), alg)
    except FormatError as exc:
        if exc.source:
            raise
        raise FormatError(str(exc), str(path)) from None


def save_module(m: Module, path):
    Path(path).write_text(dumps(module_to_dict(m)))
