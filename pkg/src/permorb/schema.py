"""JSON file formats for problems and fusion rings, and the bundled examples.

Ring file (``format_version`` 1)::

    {
      "format_version": 1,
      "provenance": "free text",
      "labels": ["1", "eps", "sigma"],
      "unit": "1",
      "dual": [["a", "a*"]],                 # optional; unlisted labels are self-dual
      "coeffs": [["sigma", "sigma", "1", 1], ...]
    }

``coeffs`` lists every nonzero ``N_ab^c`` as ``[a, b, c, value]``, both
orders of ``a, b`` included.

Problem file (``format_version`` 1)::

    {
      "format_version": 1,
      "provenance": "free text",                       # optional
      "ground": {"size": 2, "names": ["1", "2"]},      # names optional
      "points": [{"id": "x1", "perm": "(1 2)", "position": "0"}, ...],
      "marked": [{"point": "x1", "orbit": "1", "element": "2"}],       # optional
      "assignment": [{"point": "x1", "orbit": "1", "label": "sigma"}], # optional
      "ring": "ising" | "path/to/ring.json" | {"path": ...} | {ring object},  # optional
      "sewing": {...}                                  # optional metadata, written by `sew`
    }

Elements are written as display names, or as 1-based integers when the ground
set has no names. An orbit is named by any of its elements. ``perm`` uses the
cycle notation of :func:`permorb.perm.parse_cycles`. Points are listed in the
order whose product is the identity.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Optional, Union

from .errors import InvalidRing, ParseError, SchemaError
from .fusion import FusionRing
from .monodromy import MarkedPoint, MonodromyData, OrbitRef, build_monodromy
from .perm import IndexSet, format_cycles, parse_cycles

FORMAT_VERSION = 1
BUNDLED_RINGS = ("trivial", "ising", "fibonacci", "z3")
BUNDLED_EXAMPLES = ("figure2", "cyclic3", "sew_pair/left", "sew_pair/right")

_RING_KEYS = {"format_version", "provenance", "labels", "unit", "dual", "coeffs"}
_PROBLEM_KEYS = {"format_version", "provenance", "ground", "points", "marked", "assignment", "ring", "sewing"}


def _data_file(*parts: str):
    path = resources.files("permorb").joinpath("data")
    for part in parts:
        path = path.joinpath(part)
    return path


def _read_json(path) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc.strerror or exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc})") from exc


def _check_version(obj: dict, kind: str, allowed: set):
    if not isinstance(obj, dict):
        raise SchemaError(f"{kind} file must be a JSON object")
    if "format_version" not in obj:
        raise SchemaError(f"{kind} file lacks the required 'format_version' field")
    if obj["format_version"] != FORMAT_VERSION:
        raise SchemaError(f"unsupported {kind} format_version {obj['format_version']!r} (expected {FORMAT_VERSION})")
    extra = set(obj) - allowed
    if extra:
        raise SchemaError(f"unknown {kind} field(s): {sorted(extra)}")


# -- rings -------------------------------------------------------------------

def ring_from_dict(obj: dict, validate: bool = True) -> FusionRing:
    _check_version(obj, "ring", _RING_KEYS)
    try:
        labels = [str(x) for x in obj["labels"]]
        idx = {name: i for i, name in enumerate(labels)}
        if len(idx) != len(labels):
            raise SchemaError("ring labels must be distinct")
        unit = idx[str(obj["unit"])]
        dual = list(range(len(labels)))
        for a, b in obj.get("dual", []):
            dual[idx[str(a)]] = idx[str(b)]
            dual[idx[str(b)]] = idx[str(a)]
        coeffs = {}
        for entry in obj["coeffs"]:
            a, b, c, v = entry
            key = (idx[str(a)], idx[str(b)], idx[str(c)])
            if key in coeffs:
                raise SchemaError(f"coefficient {entry[:3]} listed twice")
            if not isinstance(v, int) or isinstance(v, bool):
                raise SchemaError(f"coefficient {entry} is not an integer")
            coeffs[key] = v
    except KeyError as exc:
        raise SchemaError(f"ring file: missing field or unknown label {exc}") from exc
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"ring file: malformed entry ({exc})") from exc
    ring = FusionRing(tuple(labels), unit, tuple(dual), coeffs)
    if validate and ring.violations:
        raise InvalidRing(ring.violations)
    return ring


def ring_to_dict(ring: FusionRing, provenance: Optional[str] = None) -> dict:
    L = ring.labels
    out: dict[str, Any] = {"format_version": FORMAT_VERSION}
    if provenance:
        out["provenance"] = provenance
    out["labels"] = list(L)
    out["unit"] = L[ring.unit]
    pairs = [[L[a], L[d]] for a, d in enumerate(ring.dual) if a < d]
    if pairs:
        out["dual"] = pairs
    out["coeffs"] = [[L[a], L[b], L[c], v] for (a, b, c), v in sorted(ring.coeffs.items())]
    return out


def bundled_ring(name: str, validate: bool = True) -> FusionRing:
    if name not in BUNDLED_RINGS:
        raise SchemaError(f"no bundled ring {name!r}; choose from {', '.join(BUNDLED_RINGS)}")
    obj = json.loads(_data_file("rings", f"{name}.json").read_text(encoding="utf-8"))
    return ring_from_dict(obj, validate)


def load_ring(ref: Union[str, Path, dict], base: Optional[Path] = None, validate: bool = True) -> FusionRing:
    """Resolve a ring reference: bundled name, file path, ``{"path": ...}`` or inline object."""
    if isinstance(ref, dict):
        if "path" in ref and set(ref) == {"path"}:
            ref = ref["path"]
        else:
            return ring_from_dict(ref, validate)
    if isinstance(ref, str) and ref in BUNDLED_RINGS:
        return bundled_ring(ref, validate)
    path = Path(ref)
    if base is not None and not path.is_absolute():
        path = base / path
    return ring_from_dict(_read_json(path), validate)


# -- problems ----------------------------------------------------------------

@dataclass
class Problem:
    data: MonodromyData
    assignment: Optional[dict[OrbitRef, str]] = None
    ring: Optional[FusionRing] = None
    ring_ref: Any = None
    provenance: Optional[str] = None
    sewing: Optional[dict] = field(default=None)


def problem_from_dict(obj: dict, base: Optional[Path] = None, validate_ring: bool = True) -> Problem:
    """Parse a problem object. Raises :class:`NotAdmissible` for a bad product."""
    _check_version(obj, "problem", _PROBLEM_KEYS)
    try:
        g = obj["ground"]
        names = g.get("names")
        ground = IndexSet(int(g["size"]), tuple(names) if names is not None else None)
        points_gens = []
        for p in obj["points"]:
            pos = p.get("position")
            point = MarkedPoint(str(p["id"]), None if pos is None else str(pos))
            points_gens.append((point, parse_cycles(str(p["perm"]), ground)))
        ids = [p.id for p, _ in points_gens]
        if len(set(ids)) != len(ids):
            raise SchemaError(f"point ids must be distinct: {ids}")
        pindex = {pid: j for j, pid in enumerate(ids)}

        def point_of(entry):
            try:
                return pindex[str(entry["point"])]
            except KeyError:
                raise SchemaError(f"unknown point {entry.get('point')!r}") from None

        override = {}
        for m in obj.get("marked", []):
            override[point_of(m), ground.index(m["orbit"])] = ground.index(m["element"])
    except ParseError:
        raise
    except KeyError as exc:
        raise SchemaError(f"problem file: missing field {exc}") from exc
    except (TypeError, ValueError, AttributeError) as exc:
        raise SchemaError(f"problem file: malformed entry ({exc})") from exc

    data = build_monodromy(points_gens, override, ground=ground)

    assignment = None
    if "assignment" in obj:
        assignment = {}
        try:
            for a in obj["assignment"]:
                j = point_of(a)
                ref = OrbitRef(j, data.orbit_of(j, ground.index(a["orbit"]))[0])
                if ref in assignment:
                    raise SchemaError(f"orbit of {a['orbit']} at point {a['point']} assigned twice")
                assignment[ref] = str(a["label"])
        except KeyError as exc:
            raise SchemaError(f"assignment entry lacks field {exc}") from exc

    ring = None
    if obj.get("ring") is not None:
        ring = load_ring(obj["ring"], base, validate_ring)
        if assignment is not None:
            for lab in assignment.values():
                ring.index(lab)
    return Problem(data, assignment, ring, obj.get("ring"), obj.get("provenance"), obj.get("sewing"))


def load_problem(path, validate_ring: bool = True) -> Problem:
    path = Path(path)
    return problem_from_dict(_read_json(path), path.parent, validate_ring)


def bundled_problem(name: str) -> Problem:
    if name not in BUNDLED_EXAMPLES:
        raise SchemaError(f"no bundled example {name!r}; choose from {', '.join(BUNDLED_EXAMPLES)}")
    obj = json.loads(_data_file("examples", *f"{name}.json".split("/")).read_text(encoding="utf-8"))
    return problem_from_dict(obj)


def problem_to_dict(problem: Problem) -> dict:
    data = problem.data
    name = data.ground.name
    out: dict[str, Any] = {"format_version": FORMAT_VERSION}
    if problem.provenance:
        out["provenance"] = problem.provenance
    ground: dict[str, Any] = {"size": data.ground.size}
    if data.ground.names is not None:
        ground["names"] = list(data.ground.names)
    out["ground"] = ground
    points = []
    for p, g in zip(data.points, data.gens):
        entry = {"id": p.id, "perm": format_cycles(g, data.ground)}
        if p.position_hint is not None:
            entry["position"] = p.position_hint
        points.append(entry)
    out["points"] = points
    marked = [
        {"point": data.points[ref.point].id, "orbit": name(ref.rep), "element": name(e)}
        for ref, e in data.marked_choice.items()
        if e != ref.rep
    ]
    if marked:
        out["marked"] = marked
    if problem.assignment is not None:
        out["assignment"] = [
            {"point": data.points[ref.point].id, "orbit": name(ref.rep), "label": str(lab)}
            for ref, lab in sorted(problem.assignment.items())
        ]
    if problem.ring_ref is not None:
        out["ring"] = problem.ring_ref
    elif problem.ring is not None:
        out["ring"] = ring_to_dict(problem.ring)
    if problem.sewing:
        out["sewing"] = problem.sewing
    return out


def dumps(obj: Any) -> str:
    """Canonical JSON text: two-space indent, arrays of scalars kept on one line."""
    return _dump(obj, 0) + "\n"


def _dump(obj: Any, level: int) -> str:
    pad, inner = "  " * level, "  " * (level + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        if all(not isinstance(v, (dict, list, tuple)) for v in obj.values()):
            flat = "{" + ", ".join(f"{json.dumps(str(k), ensure_ascii=False)}: {json.dumps(v, ensure_ascii=False)}"
                                   for k, v in obj.items()) + "}"
            if len(flat) + len(pad) <= 100:
                return flat
        items = [f"{inner}{json.dumps(str(k), ensure_ascii=False)}: {_dump(v, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if all(not isinstance(x, (dict, list, tuple)) for x in obj):
            return "[" + ", ".join(json.dumps(x, ensure_ascii=False) for x in obj) + "]"
        return "[\n" + ",\n".join(inner + _dump(x, level + 1) for x in obj) + "\n" + pad + "]"
    return json.dumps(obj, ensure_ascii=False)
