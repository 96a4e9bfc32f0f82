"""Exhaustive structural checks over abstract point-line incidence data.

Every check consumes a :class:`GenericIncidence` (point ids plus lines as
point-id tuples) rather than coordinate geometry, so handcrafted
counterexamples, mutated structures and imported files are all first-class
inputs.  A failed check returns a :class:`Witness` whose items, fed back to
:func:`revalidate`, reproduce the violation directly against the structure.

Checks stop at the first violation by default; pass ``exhaustive=True`` to
collect every violation instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterator, Optional, Union

from .construction import GeometryFamily, LineClass
from .geometry import OrderParams


class MalformedStructureError(ValueError):
    """Degenerate input: repeated point in a line, bad point id, size-1 line
    or isolated point."""


class NotUniformError(ValueError):
    """The structure has no uniform order (s, t)."""


class NotTriangleFreeError(ValueError):
    """A hypothesis required a triangle-free structure."""


PLS_VIOLATION = "pls_violation"
ORDER_VIOLATION = "order_violation"
TRIANGLE = "triangle"
CLASS_OVERLAP = "class_overlap"
GQ_VIOLATION = "gq_violation"


@dataclass(frozen=True)
class Witness:
    """A concrete, re-checkable violation of one structural property."""

    kind: str
    items: dict[str, Any]

    def to_json(self) -> dict[str, Any]:
        return {"kind": self.kind, **self.items}


@dataclass(frozen=True)
class CountingReport:
    """Point count of a uniform triangle-free structure against the
    (s*t+1)*(s+1) floor."""

    num_points: int
    s_order: int
    t_order: int
    bound: int
    holds: bool
    equality: bool


@dataclass(frozen=True)
class GenericIncidence:
    """num_points point ids [0, num_points) and lines as sorted id tuples."""

    num_points: int
    lines: tuple[tuple[int, ...], ...]

    @classmethod
    def from_lines(cls, num_points: int, lines) -> "GenericIncidence":
        normalized = tuple(tuple(sorted(line)) for line in lines)
        for idx, line in enumerate(normalized):
            if line and not (0 <= line[0] and line[-1] < num_points):
                raise MalformedStructureError(
                    f"line {idx} references a point outside [0, {num_points})"
                )
        return cls(num_points=num_points, lines=normalized)


def class_incidence(line_class: LineClass) -> GenericIncidence:
    """A line class over the dense point index of F_q^3."""
    q = line_class.field.q
    return GenericIncidence(
        num_points=q**3,
        lines=tuple(tuple(line.point_ids()) for line in line_class.lines),
    )


def union_incidence(family: GeometryFamily) -> GenericIncidence:
    """All classes of a family merged over the shared point set; line order is
    class order, then in-class order."""
    q = family.field.q
    lines = tuple(
        tuple(line.point_ids()) for cls in family.classes for line in cls.lines
    )
    return GenericIncidence(num_points=q**3, lines=lines)


# ---------------------------------------------------------------------------
# shared scaffolding
# ---------------------------------------------------------------------------

def _require_simple_lines(g: GenericIncidence):
    for idx, line in enumerate(g.lines):
        for a, b in zip(line, line[1:]):
            if a == b:
                raise MalformedStructureError(f"line {idx} repeats point {a}")


def _line_masks(g: GenericIncidence) -> list[int]:
    masks = []
    for line in g.lines:
        m = 0
        for pt in line:
            m |= 1 << pt
        masks.append(m)
    return masks


def _lines_through(g: GenericIncidence) -> list[list[int]]:
    through: list[list[int]] = [[] for _ in range(g.num_points)]
    for idx, line in enumerate(g.lines):
        for pt in line:
            through[pt].append(idx)
    return through


def _neighbour_masks(g: GenericIncidence, masks: list[int]) -> list[int]:
    nbr = [0] * g.num_points
    for mask, line in zip(masks, g.lines):
        for pt in line:
            nbr[pt] |= mask
    for pt in range(g.num_points):
        nbr[pt] &= ~(1 << pt)
    return nbr


def _first_or_all(found: Iterator[Witness], exhaustive: bool):
    if exhaustive:
        return list(found)
    return next(found, None)


# ---------------------------------------------------------------------------
# partial linear space axiom
# ---------------------------------------------------------------------------

def check_pls(g: GenericIncidence, exhaustive: bool = False):
    """Every point pair on at most one line.

    Single pass registering each in-line point pair; a pair seen twice is a
    witness naming both lines and the shared pair.  Returns None when the
    structure is a partial linear space.
    """
    _require_simple_lines(g)
    return _first_or_all(_pls_violations(g), exhaustive)


def _pls_violations(g: GenericIncidence) -> Iterator[Witness]:
    span = g.num_points
    seen: dict[int, int] = {}
    for idx, line in enumerate(g.lines):
        for i, a in enumerate(line):
            for b in line[i + 1 :]:
                key = a * span + b
                other = seen.setdefault(key, idx)
                if other != idx:
                    yield Witness(PLS_VIOLATION, {"lines": (other, idx), "points": (a, b)})


# ---------------------------------------------------------------------------
# uniform order
# ---------------------------------------------------------------------------

def check_order(g: GenericIncidence, exhaustive: bool = False):
    """Uniform (s_order, t_order) if all line sizes and point degrees agree;
    otherwise an order_violation naming the first deviant line or point."""
    _require_simple_lines(g)
    if not g.lines and g.num_points:
        raise MalformedStructureError("no lines: every point is isolated")
    degrees = [0] * g.num_points
    for idx, line in enumerate(g.lines):
        if len(line) < 2:
            raise MalformedStructureError(f"line {idx} has fewer than 2 points")
        for pt in line:
            degrees[pt] += 1
    for pt, deg in enumerate(degrees):
        if deg == 0:
            raise MalformedStructureError(f"point {pt} lies on no line")
    found = _first_or_all(_order_violations(g, degrees), exhaustive)
    if exhaustive:
        return found if found else OrderParams(len(g.lines[0]) - 1, degrees[0] - 1)
    if found is not None:
        return found
    return OrderParams(s_order=len(g.lines[0]) - 1, t_order=degrees[0] - 1)


def _order_violations(g: GenericIncidence, degrees: list[int]) -> Iterator[Witness]:
    size0 = len(g.lines[0])
    for idx, line in enumerate(g.lines):
        if len(line) != size0:
            yield Witness(
                ORDER_VIOLATION,
                {"detail": "line_size", "lines": (0, idx), "sizes": (size0, len(line))},
            )
    deg0 = degrees[0]
    for pt, deg in enumerate(degrees):
        if deg != deg0:
            yield Witness(
                ORDER_VIOLATION,
                {"detail": "point_degree", "points": (0, pt), "degrees": (deg0, deg)},
            )


# ---------------------------------------------------------------------------
# triangle-freeness
# ---------------------------------------------------------------------------
#
# A triangle is three pairwise-distinct lines (l, l1, l2) and points x != y on
# l, x on l1, y on l2, plus a point z on both l1 and l2 but off l.  On a
# partial linear space this matches "three lines pairwise meeting in three
# distinct points"; the fast scan and the brute-force triple scan below decide
# exactly the same predicate, so their verdicts agree on arbitrary input.

def check_triangle_free(g: GenericIncidence, exhaustive: bool = False):
    """Point-pair driven triangle search.

    For each line and each point pair (x, y) on it, any common neighbour z of
    x and y off the line closes a triangle, provided the closing lines are
    distinct.  The common-neighbour test is one bitmask intersection, keeping
    the scan at O(|L| * (s+1)^2) mask operations.
    """
    _require_simple_lines(g)
    return _first_or_all(_triangle_violations(g), exhaustive)


def _triangle_violations(g: GenericIncidence) -> Iterator[Witness]:
    masks = _line_masks(g)
    through = _lines_through(g)
    nbr = _neighbour_masks(g, masks)
    for idx, line in enumerate(g.lines):
        off_line = ~masks[idx]
        for i, x in enumerate(line):
            for y in line[i + 1 :]:
                common = nbr[x] & nbr[y] & off_line
                while common:
                    z = (common & -common).bit_length() - 1
                    common &= common - 1
                    zbit = 1 << z
                    via_x = [m for m in through[x] if masks[m] & zbit]
                    via_y = [m for m in through[y] if masks[m] & zbit]
                    pick = _distinct_pair(via_x, via_y)
                    if pick is not None:
                        yield Witness(
                            TRIANGLE,
                            {"lines": (idx, pick[0], pick[1]), "points": (x, y, z)},
                        )
                        break  # one witness per point pair is enough


def _distinct_pair(first: list[int], second: list[int]) -> Optional[tuple[int, int]]:
    """Lowest-indexed pair (a, b) with a from first, b from second, a != b."""
    for a in first:
        for b in second:
            if a != b:
                return a, b
    return None


def brute_force_triangle_check(g: GenericIncidence, exhaustive: bool = False):
    """Independent oracle: examine every line triple directly.

    Cubic in the number of lines; intended for small structures and for
    cross-checking :func:`check_triangle_free`.
    """
    _require_simple_lines(g)
    return _first_or_all(_brute_force_triangles(g), exhaustive)


def _brute_force_triangles(g: GenericIncidence) -> Iterator[Witness]:
    sets = [frozenset(line) for line in g.lines]
    count = len(sets)
    for i in range(count):
        for j in range(i + 1, count):
            meet_ij = sets[i] & sets[j]
            if not meet_ij:
                continue
            for k in range(j + 1, count):
                witness = _triangle_in_triple(sets, (i, j, k), meet_ij)
                if witness is not None:
                    yield witness


def _triangle_in_triple(sets, triple, meet_ij) -> Optional[Witness]:
    i, j, k = triple
    meet_ik = sets[i] & sets[k]
    meet_jk = sets[j] & sets[k]
    if not meet_ik or not meet_jk:
        return None
    # try each line of the triple as the side holding two corners
    for base, s1, s2, corners_1, corners_2, apexes in (
        (i, j, k, meet_ij, meet_ik, meet_jk),
        (j, i, k, meet_ij, meet_jk, meet_ik),
        (k, i, j, meet_ik, meet_jk, meet_ij),
    ):
        for z in sorted(apexes - sets[base]):
            for x in sorted(corners_1):
                for y in sorted(corners_2):
                    if x != y:
                        return Witness(
                            TRIANGLE, {"lines": (base, s1, s2), "points": (x, y, z)}
                        )
    return None


# ---------------------------------------------------------------------------
# family-level checks
# ---------------------------------------------------------------------------

def check_disjoint_classes(family: GeometryFamily, exhaustive: bool = False):
    """No canonical line in two classes; witness names both scales and the
    shared line."""
    return _first_or_all(_overlap_violations(family), exhaustive)


def _overlap_violations(family: GeometryFamily) -> Iterator[Witness]:
    owner: dict[object, int] = {}
    for cls_idx, cls in enumerate(family.classes):
        for line in cls.lines:
            prior = owner.setdefault(line, cls_idx)
            if prior != cls_idx:
                yield Witness(
                    CLASS_OVERLAP,
                    {
                        "scales": (family.classes[prior].scale.value, cls.scale.value),
                        "slope": line.slope.values(),
                        "base": line.base.values(),
                    },
                )


def check_union_pls(family: GeometryFamily, exhaustive: bool = False):
    """The union of all classes, checked as one partial linear space."""
    return check_pls(union_incidence(family), exhaustive)


# ---------------------------------------------------------------------------
# neighbourhoods, generalized-quadrangle axiom, point count
# ---------------------------------------------------------------------------

def neighbourhood(g: GenericIncidence, x: int) -> frozenset[int]:
    """All points collinear with x, excluding x itself."""
    if not 0 <= x < g.num_points:
        raise ValueError(f"point {x} outside [0, {g.num_points})")
    out: set[int] = set()
    for line in g.lines:
        if x in line:
            out.update(line)
    out.discard(x)
    return frozenset(out)


def check_gq(g: GenericIncidence, exhaustive: bool = False):
    """Every non-incident point-line pair sees exactly one collinear point on
    the line.  Assumes the structure already passed check_pls."""
    _require_simple_lines(g)
    return _first_or_all(_gq_violations(g), exhaustive)


def _gq_violations(g: GenericIncidence) -> Iterator[Witness]:
    masks = _line_masks(g)
    nbr = _neighbour_masks(g, masks)
    for x in range(g.num_points):
        xbit = 1 << x
        reach = nbr[x]
        for idx, mask in enumerate(masks):
            if mask & xbit:
                continue
            hits = reach & mask
            count = hits.bit_count()
            if count != 1:
                yield Witness(
                    GQ_VIOLATION,
                    {
                        "point": x,
                        "line": idx,
                        "count": count,
                        "collinear_on_line": _bits(hits),
                    },
                )


def _bits(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def counting_bound(g: GenericIncidence) -> CountingReport:
    """Check num_points >= (s*t+1)*(s+1), the floor every uniform
    triangle-free structure obeys; the hypotheses are enforced first."""
    order = check_order(g)
    if isinstance(order, Witness):
        raise NotUniformError(f"structure has no uniform order: {order.items}")
    tri = check_triangle_free(g)
    if tri is not None:
        raise NotTriangleFreeError(f"structure contains a triangle: {tri.items}")
    s, t = order
    bound = (s * t + 1) * (s + 1)
    return CountingReport(
        num_points=g.num_points,
        s_order=s,
        t_order=t,
        bound=bound,
        holds=g.num_points >= bound,
        equality=g.num_points == bound,
    )


# ---------------------------------------------------------------------------
# witness re-validation
# ---------------------------------------------------------------------------

def revalidate(target: Union[GenericIncidence, GeometryFamily], witness: Witness) -> bool:
    """Replay a witness against the structure it came from.

    Uses only direct membership tests, no shared code with the checks, so a
    True here means the reported violation is real.
    """
    if witness.kind == CLASS_OVERLAP:
        return _revalidate_overlap(target, witness)
    g = target
    if witness.kind == PLS_VIOLATION:
        i, j = witness.items["lines"]
        a, b = witness.items["points"]
        if i == j or a == b:
            return False
        return all(a in g.lines[m] and b in g.lines[m] for m in (i, j))
    if witness.kind == ORDER_VIOLATION:
        if witness.items["detail"] == "line_size":
            i, j = witness.items["lines"]
            return len(g.lines[i]) != len(g.lines[j])
        u, v = witness.items["points"]
        deg = lambda p: sum(1 for line in g.lines if p in line)
        return deg(u) != deg(v)
    if witness.kind == TRIANGLE:
        l0, l1, l2 = witness.items["lines"]
        x, y, z = witness.items["points"]
        if len({l0, l1, l2}) != 3 or len({x, y, z}) != 3:
            return False
        s0, s1, s2 = (set(g.lines[m]) for m in (l0, l1, l2))
        return (
            x in s0 and y in s0 and x in s1 and y in s2
            and z in s1 and z in s2 and z not in s0
        )
    if witness.kind == GQ_VIOLATION:
        x = witness.items["point"]
        line = set(g.lines[witness.items["line"]])
        if x in line:
            return False
        collinear = {pt for pt in line if pt in neighbourhood(g, x)}
        return len(collinear) == witness.items["count"] != 1
    raise ValueError(f"unknown witness kind {witness.kind!r}")


def _revalidate_overlap(family: GeometryFamily, witness: Witness) -> bool:
    scale_1, scale_2 = witness.items["scales"]
    slope = tuple(witness.items["slope"])
    base = tuple(witness.items["base"])
    hits = []
    for cls in family.classes:
        if cls.scale.value in (scale_1, scale_2):
            hits.append(
                any(
                    line.slope.values() == slope and line.base.values() == base
                    for line in cls.lines
                )
            )
    return len(hits) >= 2 and all(hits)
