"""JSON specifications for norms and domains, and deterministic output.

Norm specs: {"family": "euclidean"} | {"family": "elliptic", "a", "b"} |
{"family": "p_norm", "p"} | {"family": "piecewise_pq", "p", "q"} |
{"family": "max_approx", "p_sequence": [...]}. Custom norms are
library-only and have no file form.

Domain specs: {"kind": "norm_level", "mode": "polar"|"rotated"|"primal",
"level": r} (the norm comes from the run's norm spec),
{"kind": "polygon", "vertices": [[x, y], ...]}, {"kind": "ellipse",
"a": ..., "b": ...}.

Numbers serialize with 17 significant digits so doubles round-trip.
"""

import json
import os

from ._util import format_float
from .errors import InputError, SpecError
from .geometry import PolygonDomain, ellipse_domain, norm_level_domain
from .norms import AnisotropicNorm

_NORM_FAMILIES = {"euclidean", "elliptic", "p_norm", "piecewise_pq",
                  "max_approx"}
_DOMAIN_KINDS = {"norm_level", "polygon", "ellipse"}
_NORM_LEVEL_MODES = {"polar", "rotated", "primal"}


def load_spec_arg(arg):
    """Parse a CLI spec argument: a JSON file path or inline JSON text."""
    if isinstance(arg, dict):
        return arg
    text = arg
    if not text.strip().startswith("{"):
        if not os.path.exists(arg):
            raise SpecError(f"spec file not found: {arg}")
        with open(arg, "r", encoding="utf-8") as fh:
            text = fh.read()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"invalid spec JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise SpecError("spec must be a JSON object")
    return obj


def _require_number(spec, key, cond=lambda v: True, what=""):
    if key not in spec:
        raise SpecError(f"spec missing required key {key!r}")
    v = spec[key]
    if not isinstance(v, (int, float)) or isinstance(v, bool) or not cond(v):
        raise SpecError(f"invalid value for {key!r}: {v!r} {what}")
    return float(v)


def norm_from_spec(spec):
    spec = load_spec_arg(spec)
    family = spec.get("family")
    if family not in _NORM_FAMILIES:
        raise SpecError(f"unknown norm family {family!r}")
    try:
        if family == "euclidean":
            return AnisotropicNorm.euclidean()
        if family == "elliptic":
            a = _require_number(spec, "a", lambda v: v > 0, "(need > 0)")
            b = _require_number(spec, "b", lambda v: v > 0, "(need > 0)")
            return AnisotropicNorm.elliptic(a, b)
        if family == "p_norm":
            p = _require_number(spec, "p", lambda v: v >= 2, "(need >= 2)")
            return AnisotropicNorm.p_norm(p)
        if family == "piecewise_pq":
            p = _require_number(spec, "p", lambda v: v > 2, "(need > 2)")
            q = _require_number(spec, "q", lambda v: v > 2, "(need > 2)")
            return AnisotropicNorm.piecewise_pq(p, q)
        seq = spec.get("p_sequence", [8, 16, 32, 64])
        if (not isinstance(seq, list) or
                not all(isinstance(v, (int, float)) for v in seq)):
            raise SpecError("p_sequence must be a list of numbers")
        return AnisotropicNorm.max_approx(seq)
    except InputError as exc:
        raise SpecError(str(exc)) from exc


def domain_from_spec(spec, norm=None):
    spec = load_spec_arg(spec)
    kind = spec.get("kind")
    if kind not in _DOMAIN_KINDS:
        raise SpecError(f"unknown domain kind {kind!r}")
    try:
        if kind == "polygon":
            verts = spec.get("vertices")
            if not isinstance(verts, list) or len(verts) < 3:
                raise SpecError("polygon needs a list of >= 3 vertices")
            return PolygonDomain(verts)
        if kind == "ellipse":
            a = _require_number(spec, "a", lambda v: v > 0)
            b = _require_number(spec, "b", lambda v: v > 0)
            return ellipse_domain(a, b)
        mode = spec.get("mode", "polar")
        if mode not in _NORM_LEVEL_MODES:
            raise SpecError(f"unknown norm_level mode {mode!r}")
        level = float(spec.get("level", 1.0))
        if level <= 0:
            raise SpecError("level must be positive")
        if norm is None:
            raise SpecError("norm_level domain needs the run's norm")
        base = norm
        if norm.family == "max_approx":
            base = norm.approximants()[-1]
        return norm_level_domain(base, level, mode=mode)
    except InputError as exc:
        raise SpecError(str(exc)) from exc


# -- deterministic serialization --------------------------------------------

def _fmt(obj):
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_fmt(v) for v in obj) + "]"
    if isinstance(obj, dict):
        items = (f"{json.dumps(str(k))}: {_fmt(v)}" for k, v in obj.items())
        return "{" + ", ".join(items) + "}"
    try:
        import numpy as np
        if isinstance(obj, np.integer):
            return str(int(obj))
        if isinstance(obj, np.floating):
            return format_float(float(obj))
        if isinstance(obj, np.ndarray):
            return _fmt(obj.tolist())
        if isinstance(obj, np.bool_):
            return "true" if obj else "false"
    except ImportError:
        pass
    raise TypeError(f"cannot serialize {type(obj)}")


def dump_json(obj, path):
    """Write JSON with 17-significant-digit floats; byte-deterministic."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(_fmt(obj))
        fh.write("\n")


def dump_csv(path, header, rows):
    """Write CSV rows of floats with 17-significant-digit formatting."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(format_float(v) for v in row) + "\n")
