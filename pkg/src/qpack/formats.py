"""On-disk formats: the self-describing geometry JSON file and the plain
incidence text format.

Geometry files carry the field spec inline and store coordinates, not dense
indices, so external tools can consume them without this package.  Parsing is
strict about structure (bad files raise :class:`GeometryFormatError`) but
deliberately re-canonicalizes lines, so hand-edited files with extra or moved
lines remain verifiable.
"""

from __future__ import annotations

import json
from typing import Any, Optional

from .construction import GeometryFamily, LineClass
from .geometry import Line, Point, canonical_line
from .gf import FieldElement, FieldSpec, NotPrimePowerError, make_field
from .verifier import GenericIncidence

FORMAT_VERSION = 1


class GeometryFormatError(ValueError):
    """Input does not follow the geometry JSON or plain incidence format."""


# ---------------------------------------------------------------------------
# geometry JSON
# ---------------------------------------------------------------------------

def field_to_json(field: FieldSpec) -> dict[str, Any]:
    return {"p": field.p, "n": field.n, "modulus": list(field.modulus)}


def field_from_json(obj: Any) -> FieldSpec:
    if not isinstance(obj, dict):
        raise GeometryFormatError("field spec must be an object")
    try:
        p, n, modulus = int(obj["p"]), int(obj["n"]), [int(c) for c in obj["modulus"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise GeometryFormatError(f"bad field spec: {exc}") from exc
    try:
        field = make_field(p**n)
    except NotPrimePowerError as exc:
        raise GeometryFormatError(str(exc)) from exc
    if list(field.modulus) != modulus:
        raise GeometryFormatError(
            f"non-canonical modulus {modulus} for GF({p**n}); expected {list(field.modulus)}"
        )
    return field


def element_to_json(element: FieldElement) -> list[int]:
    return list(element.coeffs)


def element_from_json(field: FieldSpec, obj: Any) -> FieldElement:
    if not isinstance(obj, list) or len(obj) != field.n:
        raise GeometryFormatError(f"element must be a list of {field.n} coefficients")
    try:
        coeffs = [int(c) for c in obj]
    except (TypeError, ValueError) as exc:
        raise GeometryFormatError(f"bad element coefficients: {exc}") from exc
    if any(not 0 <= c < field.p for c in coeffs):
        raise GeometryFormatError(f"coefficients {coeffs} not reduced mod {field.p}")
    return field.from_coeffs(coeffs)


def line_to_json(line: Line) -> dict[str, Any]:
    return {
        "slope": [element_to_json(c) for c in line.slope.direction],
        "base": [element_to_json(c) for c in line.base.coords],
    }


def line_from_json(field: FieldSpec, obj: Any) -> Line:
    if not isinstance(obj, dict) or not {"slope", "base"} <= set(obj):
        raise GeometryFormatError("line must be an object with slope and base")
    slope, base = obj["slope"], obj["base"]
    if not (isinstance(slope, list) and isinstance(base, list) and len(slope) == len(base) == 3):
        raise GeometryFormatError("slope and base must be coordinate triples")
    direction = tuple(element_from_json(field, c) for c in slope)
    anchor = Point(tuple(element_from_json(field, c) for c in base))
    if all(c.is_zero for c in direction):
        raise GeometryFormatError("line slope is the zero vector")
    return canonical_line(direction, anchor)


def family_to_json(
    family: GeometryFamily, metadata: Optional[dict[str, Any]] = None
) -> dict[str, Any]:
    out: dict[str, Any] = {
        "version": FORMAT_VERSION,
        "field": field_to_json(family.field),
        "classes": {
            str(cls.scale.value): [line_to_json(line) for line in cls.lines]
            for cls in family.classes
        },
    }
    if metadata:
        out["metadata"] = metadata
    return out


def family_from_json(obj: Any) -> GeometryFamily:
    if not isinstance(obj, dict):
        raise GeometryFormatError("geometry file must be a JSON object")
    if obj.get("version") != FORMAT_VERSION:
        raise GeometryFormatError(f"unsupported format version {obj.get('version')!r}")
    field = field_from_json(obj.get("field"))
    classes_obj = obj.get("classes")
    if not isinstance(classes_obj, dict) or not classes_obj:
        raise GeometryFormatError("geometry file needs a non-empty classes map")
    classes = []
    for key, lines_obj in classes_obj.items():
        try:
            scale_value = int(key)
        except ValueError as exc:
            raise GeometryFormatError(f"class key {key!r} is not an element value") from exc
        if not 0 < scale_value < field.q:
            raise GeometryFormatError(f"class scale {scale_value} outside [1, {field.q})")
        if not isinstance(lines_obj, list):
            raise GeometryFormatError(f"class {key!r} must map to a list of lines")
        scale = field.element(scale_value)
        lines = tuple(line_from_json(field, entry) for entry in lines_obj)
        classes.append(LineClass(scale=scale, lines=lines))
    return GeometryFamily(field=field, classes=tuple(classes))


def dumps_family(family: GeometryFamily, metadata: Optional[dict[str, Any]] = None) -> str:
    return json.dumps(family_to_json(family, metadata), separators=(",", ":"))


def loads_family(text: str) -> GeometryFamily:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GeometryFormatError(f"not valid JSON: {exc}") from exc
    return family_from_json(obj)


# ---------------------------------------------------------------------------
# plain incidence text
# ---------------------------------------------------------------------------

def parse_plain_incidence(text: str) -> GenericIncidence:
    """Parse the 'points N' header plus one whitespace-separated id line per
    geometry line."""
    rows = [row.strip() for row in text.splitlines()]
    rows = [row for row in rows if row]
    if not rows:
        raise GeometryFormatError("empty incidence input")
    header = rows[0].split()
    if len(header) != 2 or header[0] != "points":
        raise GeometryFormatError(f"expected 'points N' header, got {rows[0]!r}")
    try:
        num_points = int(header[1])
    except ValueError as exc:
        raise GeometryFormatError(f"bad point count {header[1]!r}") from exc
    if num_points < 0:
        raise GeometryFormatError(f"negative point count {num_points}")
    lines = []
    for row in rows[1:]:
        try:
            ids = [int(tok) for tok in row.split()]
        except ValueError as exc:
            raise GeometryFormatError(f"bad point id in row {row!r}") from exc
        if any(not 0 <= i < num_points for i in ids):
            raise GeometryFormatError(f"point id outside [0, {num_points}) in row {row!r}")
        lines.append(tuple(sorted(ids)))
    return GenericIncidence(num_points=num_points, lines=tuple(lines))


def plain_incidence_to_text(g: GenericIncidence) -> str:
    rows = [f"points {g.num_points}"]
    rows.extend(" ".join(str(i) for i in line) for line in g.lines)
    return "\n".join(rows) + "\n"
