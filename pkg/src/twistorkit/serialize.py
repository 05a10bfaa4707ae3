"""JSON documents: ``{"kind": ..., "version": 1, "data": ...}`` with exact scalars as strings."""
from __future__ import annotations

import json

from .bundles import BundleMap, SplitBundle, TransitionBundle
from .errors import InputError
from .exactalg import scalars
from .exactalg.poly import Laurent

__all__ = [
    "VERSION", "KINDS", "laurent_to_json", "laurent_from_json", "laurent_matrix_to_json",
    "laurent_matrix_from_json", "transition_from_json", "complex_to_json", "complex_from_json",
    "chart_complex_to_json", "chart_complex_from_json", "patch_input_from_json",
    "document", "read_document", "parse", "serialize", "load", "dump", "dumps", "has_gaussian",
]

VERSION = 1
KINDS = ("transition", "bundle", "map", "mts", "filtered-space", "complex", "weight-vector", "real-structure", "patch")


# ---------------------------------------------------------------------------
# Laurent matrices


def laurent_to_json(p: Laurent):
    return [{"exp": e, "val": scalars.to_json(v)} for e, v in sorted(p.terms().items())]


def laurent_from_json(obj, where="entry") -> Laurent:
    if not isinstance(obj, list):
        raise InputError(f"{where} must be a list of terms")
    terms = {}
    for t in obj:
        if not isinstance(t, dict) or "exp" not in t or "val" not in t:
            raise InputError(f"{where}: each term needs 'exp' and 'val'")
        e = t["exp"]
        if not isinstance(e, int) or isinstance(e, bool):
            raise InputError(f"{where}: exponent must be an integer, got {e!r}")
        terms[e] = terms.get(e, 0) + scalars.from_json(t["val"])
    return Laurent.from_dict(terms)


def laurent_matrix_to_json(M, rows: int, cols: int):
    return {"rows": rows, "cols": cols, "entries": [[laurent_to_json(x) for x in row] for row in M]}


def laurent_matrix_from_json(obj, where="matrix"):
    if not isinstance(obj, dict):
        raise InputError(f"{where} must be an object with 'rows', 'cols', 'entries'")
    for key in ("rows", "cols", "entries"):
        if key not in obj:
            raise InputError(f"{where} missing field '{key}'")
    r, c, E = obj["rows"], obj["cols"], obj["entries"]
    if not isinstance(E, list) or len(E) != r:
        raise InputError(f"{where}.entries must have {r} rows")
    out = []
    for i, row in enumerate(E):
        if not isinstance(row, list) or len(row) != c:
            raise InputError(f"{where}.entries[{i}] must have {c} entries")
        out.append([laurent_from_json(x, f"{where}.entries[{i}][{j}]") for j, x in enumerate(row)])
    return out


def transition_from_json(obj) -> TransitionBundle:
    if not isinstance(obj, dict) or "T" not in obj:
        raise InputError("transition document needs field 'T'")
    T = laurent_matrix_from_json(obj["T"], "T")
    if "rank" in obj and obj["rank"] != len(T):
        raise InputError("transition field 'rank' does not match 'T'")
    return TransitionBundle(T)


# ---------------------------------------------------------------------------
# filtered complexes


def complex_to_json(C):
    lo, hi = C.range
    return {
        "objects": {str(k): C.obj(k).to_json() for k in C.degrees()},
        "differentials": {str(k): C.d(k).to_json() for k in C.degrees() if not C.d(k).is_zero()},
        "preweight": [
            {"n": n, "sub": {str(k): C.levels[n][k].to_json() for k in C.degrees()}} for n in sorted(C.levels)
        ],
    }


def complex_from_json(obj):
    from .complexes import FilteredComplex

    if not isinstance(obj, dict) or "objects" not in obj:
        raise InputError("complex document needs field 'objects'")
    objs = {_int_key(k, "objects"): SplitBundle.from_json(v) for k, v in obj["objects"].items()}
    ds = {_int_key(k, "differentials"): BundleMap.from_json(v) for k, v in obj.get("differentials", {}).items()}
    levels = {}
    for j, lv in enumerate(obj.get("preweight", [])):
        if not isinstance(lv, dict) or "n" not in lv or "sub" not in lv:
            raise InputError(f"complex field 'preweight[{j}]' needs 'n' and 'sub'")
        levels[lv["n"]] = {_int_key(k, "sub"): BundleMap.from_json(v) for k, v in lv["sub"].items()}
    # differentials between objects that are listed must match shapes; fill zero ones
    for k in list(ds):
        if ds[k].source != objs.get(k, SplitBundle(())) or ds[k].target != objs.get(k + 1, SplitBundle(())):
            raise InputError(f"complex field 'differentials.{k}' has wrong source or target")
    return FilteredComplex(objs, ds, levels)


def _int_key(k, where):
    try:
        return int(k)
    except ValueError as exc:
        raise InputError(f"complex field '{where}' keys must be integers, got {k!r}") from exc


# ---------------------------------------------------------------------------
# chart complexes and patch input


def chart_complex_to_json(C):
    from .complexes.patch import RINGS

    name = next(k for k, v in RINGS.items() if v is C.ring)
    return {
        "ring": name,
        "ranks": {str(k): r for k, r in sorted(C.ranks.items())},
        "d": {str(k): laurent_matrix_to_json(C.d(k), C.rank(k + 1), C.rank(k)) for k in C.degrees() if C.rank(k + 1)},
        "levels": {str(k): v for k, v in sorted(C.levels.items())},
    }


def chart_complex_from_json(obj, where):
    from .complexes.patch import RINGS, ChartComplex

    if not isinstance(obj, dict) or "ring" not in obj or "ranks" not in obj:
        raise InputError(f"{where} needs 'ring' and 'ranks'")
    if obj["ring"] not in RINGS:
        raise InputError(f"{where}.ring must be one of {sorted(RINGS)}")
    ranks = {_int_key(k, f"{where}.ranks"): v for k, v in obj["ranks"].items()}
    d = {_int_key(k, f"{where}.d"): laurent_matrix_from_json(v, f"{where}.d.{k}") for k, v in obj.get("d", {}).items()}
    levels = {_int_key(k, f"{where}.levels"): v for k, v in obj.get("levels", {}).items()}
    return ChartComplex(RINGS[obj["ring"]], ranks, d, levels)


def _chart_map(obj, where):
    if not isinstance(obj, dict):
        raise InputError(f"{where} must map degrees to matrices")
    return {_int_key(k, where): laurent_matrix_from_json(v, f"{where}.{k}") for k, v in obj.items()}


def patch_input_from_json(obj):
    """``{"M", "P", "N", "u", "v"}`` or the five-term form with ``Q``, ``R``, ``w``, ``x``."""
    if not isinstance(obj, dict):
        raise InputError("patch document must be an object")
    keys = ("M", "P", "Q", "R", "N", "u", "v", "w", "x") if "Q" in obj else ("M", "P", "N", "u", "v")
    for key in keys:
        if key not in obj:
            raise InputError(f"patch document missing field '{key}'")
    out = {}
    for key in keys:
        out[key] = chart_complex_from_json(obj[key], key) if key.isupper() else _chart_map(obj[key], key)
    return out


# ---------------------------------------------------------------------------
# documents


def document(kind: str, data) -> dict:
    if kind not in KINDS:
        raise InputError(f"unknown document kind {kind!r}")
    return {"kind": kind, "version": VERSION, "data": data}


def has_gaussian(obj) -> bool:
    if isinstance(obj, dict):
        if set(obj) == {"re", "im"}:
            return True
        return any(has_gaussian(v) for v in obj.values())
    if isinstance(obj, list):
        return any(has_gaussian(v) for v in obj)
    return False


def read_document(obj, expect=None, field: str = "rational"):
    """Validate the envelope and return ``(kind, data)``."""
    if not isinstance(obj, dict):
        raise InputError("document must be a JSON object")
    for key in ("kind", "version", "data"):
        if key not in obj:
            raise InputError(f"document missing field '{key}'")
    if obj["version"] != VERSION:
        raise InputError(f"unsupported document version {obj['version']!r}")
    kind = obj["kind"]
    if kind not in KINDS:
        raise InputError(f"unknown document kind {kind!r}")
    if expect is not None and kind not in ((expect,) if isinstance(expect, str) else expect):
        raise InputError(f"expected a document of kind {expect!r}, got {kind!r}")
    if field == "rational" and has_gaussian(obj["data"]):
        raise InputError("Gaussian scalars need --field gaussian")
    return kind, obj["data"]


def parse(kind: str, data):
    """Build the library value for a document payload."""
    from .moduli import WeightVector
    from .mts import MixedTwistorStructure
    from .realstruct import RealStructure
    from .rees import FilteredSpace

    if kind == "transition":
        return transition_from_json(data)
    if kind == "bundle":
        return SplitBundle.from_json(data)
    if kind == "map":
        return BundleMap.from_json(data)
    if kind == "mts":
        return MixedTwistorStructure.from_json(data)
    if kind == "filtered-space":
        return FilteredSpace.from_json(data)
    if kind == "complex":
        return complex_from_json(data)
    if kind == "weight-vector":
        return WeightVector.from_json(data)
    if kind == "real-structure":
        return RealStructure.from_json(data)
    if kind == "patch":
        return patch_input_from_json(data)
    raise InputError(f"unknown document kind {kind!r}")


def serialize(value):
    """``(kind, data)`` for a library value."""
    from .complexes import FilteredComplex
    from .moduli import WeightVector
    from .mts import MixedTwistorStructure
    from .realstruct import RealStructure
    from .rees import FilteredSpace

    if isinstance(value, TransitionBundle):
        return "transition", value.to_json()
    if isinstance(value, SplitBundle):
        return "bundle", value.to_json()
    if isinstance(value, BundleMap):
        return "map", value.to_json()
    if isinstance(value, MixedTwistorStructure):
        return "mts", value.to_json()
    if isinstance(value, FilteredSpace):
        return "filtered-space", value.to_json()
    if isinstance(value, FilteredComplex):
        return "complex", complex_to_json(value)
    if isinstance(value, WeightVector):
        return "weight-vector", value.to_json()
    if isinstance(value, RealStructure):
        return "real-structure", value.to_json()
    raise InputError(f"no document kind for {type(value).__name__}")


def dumps(value) -> str:
    kind, data = serialize(value)
    return json.dumps(document(kind, data), indent=2, sort_keys=True)


def dump(value, fp):
    fp.write(dumps(value) + "\n")


def load(text: str, expect=None, field: str = "gaussian"):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc.msg} at line {exc.lineno}") from exc
    kind, data = read_document(obj, expect, field)
    return parse(kind, data)
