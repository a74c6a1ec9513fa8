"""JSON files for spheres, pencils, transforms, hypersurfaces, lifts and reports.

Every float is written with 17 significant digits, so values survive a round
trip bit for bit, and output is byte-identical for identical input.  Non-finite
floats are written as the strings ``"inf"``, ``"-inf"`` and ``"nan"``.

Hypersurfaces and lifts produced by :mod:`lieq.constructions` carry their
construction recipe (and, for lifts, the list of operations applied after
lifting).  Loading such a file rebuilds the analytic evaluator from the
recipe, which is what keeps leaf integration at full precision after a round
trip through disk.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from . import constructions
from .contact import PencilLine
from .exceptions import InputError
from .grid import ParameterGrid
from .legendre import (
    LegendreMap,
    SampledHypersurface,
    legendre_lift_hypersurface,
    legendre_lift_submanifold,
    replay_history,
)
from .spheres import (
    ImproperPoint,
    LieCoord,
    Plane,
    ProperPoint,
    Sphere,
    SphericalSphere,
)
from .transforms import LieTransform

_NONFINITE = {"inf": math.inf, "-inf": -math.inf, "nan": math.nan}


# --- deterministic text ---------------------------------------------------------


def _float(x: float) -> str:
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    text = format(x, ".17g")
    if all(c not in text for c in ".en"):
        text += ".0"
    return text


def _encode(obj, depth: int) -> str:
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, np.ndarray):
        return _encode(obj.tolist(), depth)
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(_encode(v, depth + 1) for v in obj) + "]"
    if isinstance(obj, dict):
        items = [f"{json.dumps(str(k))}:{_encode(v, depth + 1)}" for k, v in obj.items()]
        if depth == 0:
            return "{\n " + ",\n ".join(items) + "\n}\n"
        return "{" + ",".join(items) + "}"
    raise InputError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    """Deterministic JSON text with 17 significant digits per float."""
    return _encode(obj, 0)


def _decode(obj):
    if isinstance(obj, dict):
        return {k: _decode(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_decode(v) for v in obj]
    if isinstance(obj, str) and obj in _NONFINITE:
        return _NONFINITE[obj]
    return obj


def loads(text: str):
    try:
        return _decode(json.loads(text))
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc}") from None


def write(path, obj) -> None:
    Path(path).write_text(dumps(obj))


def read(path):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    return loads(text)


def _require(doc, *keys):
    if not isinstance(doc, dict):
        raise InputError("expected a JSON object")
    missing = [k for k in keys if k not in doc]
    if missing:
        raise InputError(f"missing keys: {', '.join(missing)}")


def _array(doc, key, shape=None):
    try:
        arr = np.asarray(doc[key], dtype=float)
    except (TypeError, ValueError):
        raise InputError(f"{key!r} must be numeric") from None
    if shape is not None:
        if arr.size != int(np.prod(shape)):
            raise InputError(f"{key!r} has {arr.size} entries, expected {int(np.prod(shape))}")
        arr = arr.reshape(shape)
    return arr


# --- spheres ---------------------------------------------------------------------


def sphere_to_dict(obj) -> dict:
    """``sphere.json`` document for one object."""
    if isinstance(obj, LieCoord):
        return {"schema": "sphere", "model": "lie", "n": obj.n, "coords": obj.coords}
    if isinstance(obj, ProperPoint):
        return {"schema": "sphere", "model": "euclidean", "n": obj.n, "kind": "point", "point": obj.point}
    if isinstance(obj, Sphere):
        return {"schema": "sphere", "model": "euclidean", "n": obj.n, "kind": "sphere",
                "center": obj.center, "radius": obj.radius}
    if isinstance(obj, Plane):
        return {"schema": "sphere", "model": "euclidean", "n": obj.n, "kind": "plane",
                "normal": obj.normal, "offset": obj.offset}
    if isinstance(obj, ImproperPoint):
        return {"schema": "sphere", "model": "euclidean", "n": obj.n, "kind": "improper"}
    if isinstance(obj, SphericalSphere):
        return {"schema": "sphere", "model": "spherical", "n": obj.n, "kind": "sphere",
                "center": obj.center, "radius": obj.radius}
    raise InputError(f"not a sphere object: {type(obj).__name__}")


def sphere_from_dict(doc):
    _require(doc, "model")
    model = doc["model"]
    if model == "lie":
        _require(doc, "coords")
        return LieCoord(_array(doc, "coords"))
    if model == "spherical":
        _require(doc, "center", "radius")
        return SphericalSphere(_array(doc, "center"), float(doc["radius"]))
    if model != "euclidean":
        raise InputError(f"unknown sphere model {model!r}")
    _require(doc, "kind")
    kind = doc["kind"]
    if kind == "point":
        return ProperPoint(_array(doc, "point"))
    if kind == "sphere":
        if float(doc["radius"]) == 0.0:
            return ProperPoint(_array(doc, "center"))
        return Sphere(_array(doc, "center"), float(doc["radius"]))
    if kind == "plane":
        return Plane(_array(doc, "normal"), float(doc["offset"]))
    if kind == "improper":
        _require(doc, "n")
        return ImproperPoint(int(doc["n"]))
    raise InputError(f"unknown euclidean sphere kind {kind!r}")


def spheres_from_doc(doc) -> list:
    """One or more sphere objects from a document with optional ``items``."""
    if isinstance(doc, dict) and "items" in doc:
        return [sphere_from_dict(d) for d in doc["items"]]
    return [sphere_from_dict(doc)]


# --- pencils and transforms ----------------------------------------------------------


def pencil_to_dict(line: PencilLine) -> dict:
    ce = line.contact_element()
    return {"schema": "pencil", "n": line.n, "k1": line.point_sphere, "k2": line.great_sphere,
            "point": ce.point, "normal": ce.normal}


def pencil_from_dict(doc) -> PencilLine:
    _require(doc, "k1", "k2")
    return PencilLine(_array(doc, "k1"), _array(doc, "k2"))


def transform_to_dict(B) -> dict:
    M = B.matrix if isinstance(B, LieTransform) else np.asarray(B, dtype=float)
    return {"schema": "transform", "n": M.shape[0] - 3, "matrix": M}


def transform_from_dict(doc) -> LieTransform:
    _require(doc, "n", "matrix")
    N = int(doc["n"]) + 3
    return LieTransform(_array(doc, "matrix", (N, N)))


# --- grids, hypersurfaces, lifts ---------------------------------------------------------


def _grid_to_dict(grid: ParameterGrid) -> dict:
    return {"grid_dims": list(grid.shape), "axes": [a for a in grid.axes], "periodic": list(grid.periodic)}


def _grid_from_dict(doc) -> ParameterGrid:
    _require(doc, "grid_dims", "axes", "periodic")
    axes = [np.asarray(a, dtype=float) for a in doc["axes"]]
    if [a.size for a in axes] != [int(v) for v in doc["grid_dims"]]:
        raise InputError("axes do not match grid_dims")
    return ParameterGrid(tuple(axes), tuple(bool(p) for p in doc["periodic"]))


def hypersurface_to_dict(h: SampledHypersurface, derivatives: bool | None = None) -> dict:
    """``hypersurface.json`` document.

    Derivatives are stored when requested, and by default only for data
    without a construction recipe (a recipe regenerates them exactly).
    """
    if derivatives is None:
        derivatives = h.construction is None and h.df is not None
    doc = {"schema": "hypersurface", "n": h.n, "d": h.d, "ambient": h.ambient}
    doc.update(_grid_to_dict(h.grid))
    doc["f"] = h.f.ravel()
    doc["xi"] = h.xi.ravel()
    if derivatives and h.df is not None:
        doc["derivatives"] = {"df": h.df.ravel(), "dxi": h.dxi.ravel()}
    if h.construction is not None:
        doc["construction"] = h.construction
    meta = {k: v for k, v in h.meta.items() if isinstance(v, (int, float, str, list, tuple))}
    if meta:
        doc["meta"] = meta
    return doc


def _check_rebuild(stored, rebuilt, what):
    if stored.shape != rebuilt.shape:
        raise InputError(f"{what}: stored data do not match the construction recipe")
    scale = 1.0 + np.max(np.abs(rebuilt))
    if np.max(np.abs(stored - rebuilt)) > 1e-9 * scale:
        raise InputError(f"{what}: stored data do not match the construction recipe")


def hypersurface_from_dict(doc) -> SampledHypersurface:
    _require(doc, "n", "d", "ambient", "f", "xi")
    grid = _grid_from_dict(doc)
    if int(doc["d"]) != grid.d:
        raise InputError("d does not match the number of grid axes")
    k = int(doc["n"]) + (1 if doc["ambient"] == "spherical" else 0)
    shape = grid.shape + (k,)
    f = _array(doc, "f", shape)
    xi = _array(doc, "xi", shape)
    if "construction" in doc:
        h = constructions.build(doc["construction"])
        _check_rebuild(f, h.f, "hypersurface")
        return h
    df = dxi = None
    if "derivatives" in doc:
        der = doc["derivatives"]
        dshape = grid.shape + (grid.d, k)
        df, dxi = _array(der, "df", dshape), _array(der, "dxi", dshape)
    return SampledHypersurface(grid, f, xi, df, dxi, doc["ambient"], meta=dict(doc.get("meta", {})))


def lift_of(h: SampledHypersurface, model: str | None = None) -> LegendreMap:
    """Legendre lift of a sampled hypersurface or normal bundle."""
    dim_v = h.meta.get("dim_v")
    if dim_v is not None:
        return legendre_lift_submanifold(h, int(dim_v), model)
    return legendre_lift_hypersurface(h, model)


def legendre_to_dict(lift: LegendreMap, derivatives: bool | None = None) -> dict:
    if derivatives is None:
        derivatives = lift.construction is None and lift.dZ1 is not None
    doc = {"schema": "legendre", "n": lift.n, "d": lift.d, "model": lift.model, "kind": lift.kind}
    doc.update(_grid_to_dict(lift.grid))
    doc["Z1"] = lift.Z1.ravel()
    doc["Z2"] = lift.Z2.ravel()
    if derivatives and lift.dZ1 is not None:
        doc["derivatives"] = {"dZ1": lift.dZ1.ravel(), "dZ2": lift.dZ2.ravel()}
    if lift.construction is not None:
        doc["construction"] = lift.construction
        doc["lift_model"] = lift.base_model
        doc["history"] = [[op, arg] for op, arg in lift.history]
    doc["provenance"] = list(lift.provenance)
    return doc


def legendre_from_dict(doc) -> LegendreMap:
    _require(doc, "n", "d", "model", "Z1", "Z2")
    grid = _grid_from_dict(doc)
    N = int(doc["n"]) + 3
    shape = grid.shape + (N,)
    Z1 = _array(doc, "Z1", shape)
    Z2 = _array(doc, "Z2", shape)
    if "construction" in doc:
        h = constructions.build(doc["construction"])
        lift = lift_of(h, doc.get("lift_model"))
        lift = replay_history(lift, [tuple(x) for x in doc.get("history", [])])
        _check_rebuild(Z1, lift.Z1, "Legendre map")
        _check_rebuild(Z2, lift.Z2, "Legendre map")
        return lift
    dZ1 = dZ2 = None
    if "derivatives" in doc:
        der = doc["derivatives"]
        dshape = grid.shape + (grid.d, N)
        dZ1, dZ2 = _array(der, "dZ1", dshape), _array(der, "dZ2", dshape)
    return LegendreMap(grid, Z1, Z2, dZ1, dZ2, doc["model"], provenance=list(doc.get("provenance", [])),
                       kind=doc.get("kind", "hypersurface"))


def load_lift(doc, model: str | None = None) -> LegendreMap:
    """Legendre map from either a ``legendre`` or a ``hypersurface`` document."""
    schema = doc.get("schema") if isinstance(doc, dict) else None
    if schema == "legendre":
        lift = legendre_from_dict(doc)
        return lift.with_model(model) if model and model != lift.model else lift
    if schema == "hypersurface":
        return lift_of(hypersurface_from_dict(doc), model)
    raise InputError("expected a 'legendre' or 'hypersurface' document")
