"""Families of pairwise line-disjoint, triangle-free line classes in F_q^3.

One class per nonzero scale value: the slopes of a class trace the scaled
moment curve {(1, s*a, s*a^2) : a != 0}, and the class takes every affine line
with such a slope.  Classes for distinct scales share no line, and their union
is still a partial linear space; the verifier module checks all of this
exhaustively.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .gf import FieldElement, FieldSpec
from .geometry import Line, Point, SlopeVector


class ZeroScaleError(ValueError):
    """Curve scale must be a nonzero field element."""


class CountOutOfRangeError(ValueError):
    """A family has between 1 and q-1 classes."""


@dataclass(frozen=True)
class LineClass:
    """All (q-1)*q^2 canonical lines whose slope lies on one scaled moment
    curve."""

    scale: FieldElement
    lines: tuple[Line, ...]

    @property
    def field(self) -> FieldSpec:
        return self.scale.field

    def __repr__(self):
        return f"LineClass(scale={self.scale.value}, lines={len(self.lines)})"


@dataclass(frozen=True)
class GeometryFamily:
    """Line classes for distinct nonzero scales, in canonical scale order."""

    field: FieldSpec
    classes: tuple[LineClass, ...]

    def __repr__(self):
        return f"GeometryFamily(field={self.field!r}, classes={len(self.classes)})"


def moment_curve(field: FieldSpec, scale: FieldElement) -> list[SlopeVector]:
    """The q-1 slopes (1, s*a, s*a^2) for nonzero a, sorted.

    Distinct slopes for distinct a (the middle coordinate is injective in a),
    and curves for distinct scales are disjoint.
    """
    if scale.is_zero:
        raise ZeroScaleError("moment curve needs a nonzero scale")
    one = field.one
    slopes = []
    for alpha in field.elements()[1:]:
        mid = scale * alpha
        slopes.append(SlopeVector((one, mid, mid * alpha)))
    slopes.sort()
    return slopes


def build_class(field: FieldSpec, scale: FieldElement) -> LineClass:
    """Every canonical line with slope on the scaled moment curve.

    For a fixed slope the lines partition F_q^3 into q^2 cosets.  Sweeping
    points in ascending dense order and skipping already-covered ones emits
    exactly one line per coset, anchored at its minimum point, with no
    hashing of the q^3 candidate anchors.
    """
    q = field.q
    add, mul = field.add_table, field.mul_table
    els = field.elements()
    lines: list[Line] = []
    for slope in moment_curve(field, scale):
        s0, s1, s2 = slope.values()
        covered = bytearray(q**3)
        emitted = 0
        for anchor in range(q**3):
            if covered[anchor]:
                continue
            a0, a1, a2 = anchor // (q * q), (anchor // q) % q, anchor % q
            for beta in range(q):
                covered[(add[a0][mul[beta][s0]] * q + add[a1][mul[beta][s1]]) * q
                        + add[a2][mul[beta][s2]]] = 1
            lines.append(Line(slope=slope, base=Point((els[a0], els[a1], els[a2]))))
            emitted += 1
        assert emitted == q * q, f"slope {slope} produced {emitted} cosets"
    return LineClass(scale=scale, lines=tuple(lines))


def build_family(field: FieldSpec, count: Optional[int] = None) -> GeometryFamily:
    """Classes for the first ``count`` nonzero scales in canonical order
    (default: all q-1 of them)."""
    limit = field.q - 1
    if count is None:
        count = limit
    if not 1 <= count <= limit:
        raise CountOutOfRangeError(f"count must be in [1, {limit}], got {count}")
    classes = tuple(build_class(field, s) for s in field.elements()[1 : count + 1])
    return GeometryFamily(field=field, classes=classes)
