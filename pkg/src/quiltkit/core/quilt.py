"""Combinatorial quilted surfaces with strip-like and cylindrical ends.

A patch is a compact surface (genus, boundary circles) with marked points on its
circles and interior punctures. Boundary components are the intervals of a marked
circle, each running from a marked point to the next one in cyclic order, and the
circles without marked points. Every component is either sewn to another one by a
seam or carries a true boundary label.

Seams reverse orientation: the start of side ``a`` meets the end of side ``b`` and the
end of ``a`` meets the start of ``b``.
"""

import json
from collections import Counter
from dataclasses import dataclass, field, replace
try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):
        __str__ = str.__str__
        __format__ = str.__format__

        @staticmethod
        def _generate_next_value_(name, start, count, last_values):
            return name.lower()
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from sympy import Rational

from quiltkit.core.symplectic import (
    LagrangianCorrespondence,
    LagrangianSubspace,
    SymplecticSpace,
)
from quiltkit.shared.errors import EndMismatch, InvalidQuilt, ModulusMismatch


class Direction(StrEnum):
    INCOMING = "in"
    OUTGOING = "out"


@dataclass(frozen=True)
class MarkedPoint:
    id: str
    direction: Direction
    width: Rational = Rational(1)


@dataclass(frozen=True)
class BoundaryCircle:
    id: str
    marked: Tuple[MarkedPoint, ...] = ()


@dataclass(frozen=True)
class InteriorPuncture:
    id: str
    direction: Direction


@dataclass(frozen=True)
class PatchLabel:
    name: str
    dim: int
    space: Optional[SymplecticSpace] = None

    @property
    def half_dim(self) -> int:
        return self.dim // 2


@dataclass(frozen=True)
class Patch:
    id: str
    label: PatchLabel
    circles: Tuple[BoundaryCircle, ...] = ()
    genus: int = 0
    interior: Tuple[InteriorPuncture, ...] = ()

    @property
    def euler(self) -> int:
        return 2 - 2 * self.genus - len(self.circles)

    def circle(self, circle_id: str) -> BoundaryCircle:
        for c in self.circles:
            if c.id == circle_id:
                return c
        raise KeyError(f"{self.id}/{circle_id}")


@dataclass(frozen=True)
class Side:
    """A boundary component: the interval starting at ``start``, or a whole compact circle"""

    patch: str
    circle: str
    start: Optional[str] = None

    def __str__(self) -> str:
        if self.start is None:
            return f"{self.patch}/{self.circle}"
        return f"{self.patch}/{self.circle}/{self.start}"


@dataclass(frozen=True)
class SeamLabel:
    name: str
    correspondence: Optional[LagrangianCorrespondence] = None


@dataclass(frozen=True)
class BoundaryLabel:
    name: str
    lagrangian: Optional[LagrangianSubspace] = None


@dataclass(frozen=True)
class Seam:
    a: Side
    b: Side
    label: SeamLabel


@dataclass(frozen=True)
class EndRef:
    """A marked point or an interior puncture, named by its patch"""

    patch: str
    point: str

    def __str__(self) -> str:
        return f"{self.patch}/{self.point}"


@dataclass(frozen=True)
class QuiltedSurface:
    modulus: int = 2
    patches: Tuple[Patch, ...] = ()
    seams: Tuple[Seam, ...] = ()
    boundary: Tuple[Tuple[Side, BoundaryLabel], ...] = ()
    incoming: Tuple[EndRef, ...] = ()
    outgoing: Tuple[EndRef, ...] = ()

    def patch(self, patch_id: str) -> Patch:
        for p in self.patches:
            if p.id == patch_id:
                return p
        raise InvalidQuilt([f"unknown patch {patch_id}"])


@dataclass(frozen=True)
class QuiltedEnd:
    points: Tuple[EndRef, ...]
    direction: Direction
    cyclic: bool = False
    widths: Tuple[Rational, ...] = ()
    labels: Tuple[str, ...] = ()
    patch_labels: Tuple[str, ...] = ()
    half_dims: Tuple[int, ...] = ()
    cylindrical: bool = False

    @property
    def lead(self) -> EndRef:
        return self.points[0]

    @property
    def n(self) -> int:
        return sum(self.half_dims)

    @property
    def key(self) -> str:
        """Name of the Floer module attached to the end"""
        if self.cylindrical:
            return f"HF({self.patch_labels[0]})"
        body = ", ".join(self.labels)
        return f"<{body}>" if self.cyclic else f"({body})"

    @property
    def reversed_key(self) -> str:
        """Key of the same end read backwards, the dual module of a cap or cup"""
        if self.cylindrical:
            return self.key
        if self.cyclic:
            labels = [transposed_name(x) for x in reversed(self.labels)]
            return f"<{', '.join(labels)}>"
        inner = [transposed_name(x) for x in reversed(self.labels[1:-1])]
        labels = [self.labels[-1], *inner, self.labels[0]]
        return f"({', '.join(labels)})"


@dataclass(frozen=True)
class ShiftRecord:
    n: int
    d: int


@dataclass
class _Layout:
    patches: Dict[str, Patch]
    circle_of: Dict[EndRef, str] = field(default_factory=dict)
    marked: Dict[EndRef, MarkedPoint] = field(default_factory=dict)
    interior: Dict[EndRef, InteriorPuncture] = field(default_factory=dict)
    after: Dict[EndRef, Side] = field(default_factory=dict)
    before: Dict[EndRef, Side] = field(default_factory=dict)
    arc_end: Dict[Side, str] = field(default_factory=dict)
    sides: List[Side] = field(default_factory=list)
    seam_of: Dict[Side, Tuple[Seam, bool]] = field(default_factory=dict)
    label_of: Dict[Side, BoundaryLabel] = field(default_factory=dict)

    def partner(self, side: Side) -> Optional[Side]:
        if side not in self.seam_of:
            return None
        seam, is_a = self.seam_of[side]
        return seam.b if is_a else seam.a


def _layout(q: QuiltedSurface) -> _Layout:
    lay = _Layout(patches={p.id: p for p in q.patches})
    for p in q.patches:
        for c in p.circles:
            if not c.marked:
                lay.sides.append(Side(p.id, c.id))
                continue
            k = len(c.marked)
            for i, mp in enumerate(c.marked):
                ref = EndRef(p.id, mp.id)
                nxt = c.marked[(i + 1) % k]
                prv = c.marked[(i - 1) % k]
                side = Side(p.id, c.id, mp.id)
                lay.circle_of[ref] = c.id
                lay.marked[ref] = mp
                lay.after[ref] = side
                lay.before[ref] = Side(p.id, c.id, prv.id)
                lay.arc_end[side] = nxt.id
                lay.sides.append(side)
        for ip in p.interior:
            lay.interior[EndRef(p.id, ip.id)] = ip
    for seam in q.seams:
        lay.seam_of.setdefault(seam.a, (seam, True))
        lay.seam_of.setdefault(seam.b, (seam, False))
    for side, label in q.boundary:
        lay.label_of.setdefault(side, label)
    return lay


def _alignment(lay: _Layout, seam: Seam) -> List[Tuple[EndRef, EndRef]]:
    a, b = seam.a, seam.b
    if a.start is None or b.start is None:
        return []
    pairs = [
        (EndRef(a.patch, a.start), EndRef(b.patch, lay.arc_end[b])),
        (EndRef(a.patch, lay.arc_end[a]), EndRef(b.patch, b.start)),
    ]
    return list(dict.fromkeys(pairs))


def transposed_name(name: str) -> str:
    if "∘" in name:
        if name.startswith("(") and name.endswith(")^t"):
            return name[1:-3]
        return f"({name})^t"
    if name.endswith("^t"):
        return name[:-2]
    return f"{name}^t"


def _structural_violations(q: QuiltedSurface) -> List[str]:
    violations = []
    if q.modulus <= 0 or q.modulus % 2:
        violations.append(f"modulus {q.modulus} is not even and positive")
    for pid, count in Counter(p.id for p in q.patches).items():
        if count > 1:
            violations.append(f"duplicate patch id {pid}")
    for p in q.patches:
        if p.genus < 0:
            violations.append(f"patch {p.id}: negative genus")
        if p.label.dim < 0 or p.label.dim % 2:
            violations.append(f"patch {p.id}: label dimension {p.label.dim} is not even")
        if p.label.space is not None and p.label.space.dim != p.label.dim:
            violations.append(f"patch {p.id}: label space dimension mismatch")
        for cid, count in Counter(c.id for c in p.circles).items():
            if count > 1:
                violations.append(f"patch {p.id}: duplicate circle id {cid}")
        point_ids = [mp.id for c in p.circles for mp in c.marked] + [ip.id for ip in p.interior]
        for pt, count in Counter(point_ids).items():
            if count > 1:
                violations.append(f"patch {p.id}: duplicate point id {pt}")
        for c in p.circles:
            for mp in c.marked:
                if mp.width <= 0:
                    violations.append(f"patch {p.id}: width of {mp.id} is not positive")
    return violations


def _seam_violations(q: QuiltedSurface, lay: _Layout) -> List[str]:
    violations = []
    known = set(lay.sides)
    usage: Counter = Counter()
    for seam in q.seams:
        name = seam.label.name
        unknown = [s for s in (seam.a, seam.b) if s not in known]
        if unknown:
            violations.extend(f"seam {name}: unknown boundary component {s}" for s in unknown)
            continue
        usage[seam.a] += 1
        usage[seam.b] += 1
        if seam.a == seam.b:
            violations.append(f"seam {name}: joins {seam.a} to itself")
            continue
        if (seam.a.start is None) != (seam.b.start is None):
            violations.append(f"seam {name}: joins an interval to a compact circle")
            continue
        for x, y in _alignment(lay, seam):
            if lay.marked[x].direction != lay.marked[y].direction:
                violations.append(f"direction mismatch: {x} ~ {y} along seam {name}")
        corr = seam.label.correspondence
        pa, pb = lay.patches[seam.a.patch], lay.patches[seam.b.patch]
        if corr is not None:
            if corr.source.dim != pa.label.dim or corr.target.dim != pb.label.dim:
                violations.append(f"seam {name}: label dimension mismatch")
            elif (pa.label.space is not None and pa.label.space != corr.source) or (
                pb.label.space is not None and pb.label.space != corr.target
            ):
                violations.append(f"seam {name}: label space mismatch")
    for side, count in usage.items():
        if count > 1:
            violations.append(f"circle doubly seamed: {side}")

    labelled: Counter = Counter(side for side, _ in q.boundary)
    for side, label in q.boundary:
        if side not in known:
            violations.append(f"boundary label {label.name}: unknown boundary component {side}")
            continue
        if labelled[side] > 1:
            violations.append(f"boundary component labeled twice: {side}")
            labelled[side] = 1
        if side in usage:
            violations.append(f"boundary component both seamed and labeled: {side}")
        lag = label.lagrangian
        patch = lay.patches[side.patch]
        if lag is not None and lag.space.dim != patch.label.dim:
            violations.append(f"boundary label {label.name}: dimension mismatch on {side}")
    for side in lay.sides:
        if side not in usage and side not in labelled:
            violations.append(f"unlabeled boundary component: {side}")
    return violations


def _crossing(lay: _Layout, side: Side) -> Tuple[str, Side]:
    seam, is_a = lay.seam_of[side]
    partner = seam.b if is_a else seam.a
    return (seam.label.name if is_a else transposed_name(seam.label.name)), partner


def _bottom(lay: _Layout, ref: EndRef) -> Side:
    if lay.marked[ref].direction == Direction.OUTGOING:
        return lay.before[ref]
    return lay.after[ref]


def _top(lay: _Layout, ref: EndRef) -> Side:
    if lay.marked[ref].direction == Direction.OUTGOING:
        return lay.after[ref]
    return lay.before[ref]


def _next(lay: _Layout, ref: EndRef) -> Optional[Tuple[str, EndRef]]:
    top = _top(lay, ref)
    if top not in lay.seam_of:
        return None
    name, partner = _crossing(lay, top)
    if lay.marked[ref].direction == Direction.OUTGOING:
        return name, EndRef(partner.patch, lay.arc_end[partner])
    return name, EndRef(partner.patch, partner.start)


def _previous(lay: _Layout, ref: EndRef) -> Optional[EndRef]:
    bottom = _bottom(lay, ref)
    if bottom not in lay.seam_of:
        return None
    _, partner = _crossing(lay, bottom)
    if lay.marked[ref].direction == Direction.OUTGOING:
        return EndRef(partner.patch, partner.start)
    return EndRef(partner.patch, lay.arc_end[partner])


def _trace_ends(lay: _Layout) -> List[QuiltedEnd]:
    """All quilted ends, strip-like ones first in discovery order, then cylindrical ones"""
    ends = []
    seen = set()
    for ref in lay.marked:
        if ref in seen:
            continue
        start, cyclic = ref, False
        while True:
            prev = _previous(lay, start)
            if prev is None:
                break
            if prev == ref:
                cyclic = True
                start = ref
                break
            start = prev
        points, labels = [start], []
        if not cyclic:
            labels.append(lay.label_of[_bottom(lay, start)].name)
        cur = start
        while True:
            step = _next(lay, cur)
            if step is None:
                labels.append(lay.label_of[_top(lay, cur)].name)
                break
            name, nxt = step
            labels.append(name)
            if nxt == start:
                break
            points.append(nxt)
            cur = nxt
        seen.update(points)
        ends.append(_make_end(lay, points, labels, cyclic))
    for ref, ip in lay.interior.items():
        label = lay.patches[ref.patch].label
        ends.append(
            QuiltedEnd(
                points=(ref,),
                direction=ip.direction,
                patch_labels=(label.name,),
                half_dims=(label.half_dim,),
                cylindrical=True,
            )
        )
    return ends


def _make_end(lay: _Layout, points: List[EndRef], labels: List[str], cyclic: bool) -> QuiltedEnd:
    patches = [lay.patches[p.patch] for p in points]
    return QuiltedEnd(
        points=tuple(points),
        direction=lay.marked[points[0]].direction,
        cyclic=cyclic,
        widths=tuple(lay.marked[p].width for p in points),
        labels=tuple(labels),
        patch_labels=tuple(p.label.name for p in patches),
        half_dims=tuple(p.label.half_dim for p in patches),
    )


def _rotate(end: QuiltedEnd, basepoint: EndRef) -> QuiltedEnd:
    k = end.points.index(basepoint)
    if not end.cyclic or k == 0:
        return end
    turn = lambda xs: tuple(xs[k:]) + tuple(xs[:k])  # noqa: E731
    return replace(
        end,
        points=turn(end.points),
        widths=turn(end.widths),
        labels=turn(end.labels),
        patch_labels=turn(end.patch_labels),
        half_dims=turn(end.half_dims),
    )


def _order_violations(q: QuiltedSurface, ends: List[QuiltedEnd]) -> List[str]:
    violations = []
    owner = {pt: i for i, end in enumerate(ends) for pt in end.points}
    hits: Counter = Counter()
    for direction, refs in ((Direction.INCOMING, q.incoming), (Direction.OUTGOING, q.outgoing)):
        for ref in refs:
            if ref not in owner:
                violations.append(f"end order references unknown point {ref}")
                continue
            end = ends[owner[ref]]
            hits[owner[ref]] += 1
            if end.direction != direction:
                violations.append(
                    f"end order lists {ref} as {direction.value} but the end is "
                    f"{end.direction.value}"
                )
            if not end.cyclic and ref != end.lead:
                violations.append(f"end order references {ref}, which does not lead its end")
    for i, end in enumerate(ends):
        if hits[i] == 0:
            if end.cyclic:
                violations.append(f"cyclic end has no basepoint: {end.lead}")
            else:
                violations.append(f"end not ordered: {end.lead}")
        elif hits[i] > 1:
            violations.append(f"end ordered twice: {end.lead}")
    return violations


def validate(q: QuiltedSurface) -> List[str]:
    """Structural violations of a quilt; an empty list means the quilt is valid"""
    violations = _structural_violations(q)
    if violations:
        return violations
    lay = _layout(q)
    violations = _seam_violations(q, lay)
    if violations:
        return violations
    return _order_violations(q, _trace_ends(lay))


def lint(q: QuiltedSurface) -> List[str]:
    """Warnings that do not make a quilt invalid"""
    warnings = []
    for p in q.patches:
        if p.interior and p.label.space is None:
            warnings.append(
                f"patch {p.id}: cylindrical ends assume a compact target, label {p.label.name} "
                "is formal"
            )
    return warnings


def require_valid(q: QuiltedSurface) -> None:
    violations = validate(q)
    if violations:
        raise InvalidQuilt(violations)


def extract_ends(q: QuiltedSurface) -> List[QuiltedEnd]:
    """Quilted ends in the stored order: incoming ends first, then outgoing ends"""
    require_valid(q)
    ends = _trace_ends(_layout(q))
    owner = {pt: end for end in ends for pt in end.points}
    return [_rotate(owner[ref], ref) for ref in q.incoming + q.outgoing]


def find_end(q: QuiltedSurface, ref, direction: Optional[Direction] = None) -> QuiltedEnd:
    """Resolve an end given as a QuiltedEnd, an EndRef, a (patch, point) pair or a position"""
    ends = extract_ends(q)
    if isinstance(ref, QuiltedEnd):
        ref = ref.lead
    if isinstance(ref, int):
        if direction is None:
            raise EndMismatch("A positional end reference needs a direction")
        pool = [e for e in ends if e.direction == direction]
        if not 0 <= ref < len(pool):
            raise EndMismatch(f"No {direction.value} end at position {ref}")
        return pool[ref]
    if isinstance(ref, (tuple, list)):
        ref = EndRef(*ref)
    for end in ends:
        if ref in end.points:
            if direction is not None and end.direction != direction:
                raise EndMismatch(f"End at {ref} is {end.direction.value}, not {direction.value}")
            return end
    raise EndMismatch(f"No end contains {ref}")


def end_circle(q: QuiltedSurface, ref: EndRef) -> Optional[str]:
    """Circle carrying a marked point; None for an interior puncture"""
    return _layout(q).circle_of.get(ref)


def connected_components(q: QuiltedSurface) -> List[List[str]]:
    """Patch ids grouped by the seams joining them, in patch order"""
    parent = {p.id: p.id for p in q.patches}

    def find(x: str) -> str:
        while parent[x] != x:
            x = parent[x]
        return x

    for seam in q.seams:
        ra, rb = find(seam.a.patch), find(seam.b.patch)
        if ra != rb:
            parent[rb] = ra
    groups: Dict[str, List[str]] = {}
    for p in q.patches:
        groups.setdefault(find(p.id), []).append(p.id)
    return list(groups.values())


def euler(q: QuiltedSurface) -> Tuple[Dict[str, int], int]:
    per_patch = {p.id: p.euler for p in q.patches}
    return per_patch, sum(per_patch.values())


def outgoing_count(p: Patch) -> int:
    """Outgoing ends of a patch; an outgoing cylindrical end counts twice"""
    boundary = sum(
        1 for c in p.circles for mp in c.marked if mp.direction == Direction.OUTGOING
    )
    return boundary + 2 * sum(1 for ip in p.interior if ip.direction == Direction.OUTGOING)


def degree_shift(q: QuiltedSurface) -> int:
    require_valid(q)
    total = sum(p.label.half_dim * (outgoing_count(p) - p.euler) for p in q.patches)
    return total % q.modulus


def _fresh(base: str, taken: Iterable[str]) -> str:
    taken = set(taken)
    if base not in taken:
        return base
    k = 2
    while f"{base}_{k}" in taken:
        k += 1
    return f"{base}_{k}"


def rename_patches(q: QuiltedSurface, mapping: Dict[str, str]) -> QuiltedSurface:
    def side(s: Side) -> Side:
        return replace(s, patch=mapping.get(s.patch, s.patch))

    def ref(r: EndRef) -> EndRef:
        return replace(r, patch=mapping.get(r.patch, r.patch))

    return QuiltedSurface(
        modulus=q.modulus,
        patches=tuple(replace(p, id=mapping.get(p.id, p.id)) for p in q.patches),
        seams=tuple(replace(s, a=side(s.a), b=side(s.b)) for s in q.seams),
        boundary=tuple((side(s), label) for s, label in q.boundary),
        incoming=tuple(ref(r) for r in q.incoming),
        outgoing=tuple(ref(r) for r in q.outgoing),
    )


def union_renaming(q1: QuiltedSurface, q2: QuiltedSurface) -> Dict[str, str]:
    """New ids for patches of q2 that collide with patches of q1"""
    taken = [p.id for p in q1.patches] + [p.id for p in q2.patches]
    mapping = {}
    for p in q2.patches:
        if any(p.id == other.id for other in q1.patches):
            mapping[p.id] = _fresh(p.id, taken)
            taken.append(mapping[p.id])
    return mapping


def disjoint_union(q1: QuiltedSurface, q2: QuiltedSurface) -> QuiltedSurface:
    """q1 followed by q2; colliding patch ids of q2 get a numeric suffix"""
    if q1.modulus != q2.modulus:
        raise ModulusMismatch(f"Moduli {q1.modulus} and {q2.modulus} differ")
    q2 = rename_patches(q2, union_renaming(q1, q2))
    return QuiltedSurface(
        modulus=q1.modulus,
        patches=q1.patches + q2.patches,
        seams=q1.seams + q2.seams,
        boundary=q1.boundary + q2.boundary,
        incoming=q1.incoming + q2.incoming,
        outgoing=q1.outgoing + q2.outgoing,
    )


def with_default_order(q: QuiltedSurface) -> QuiltedSurface:
    """Append every end missing from the orderings, in discovery order"""
    lay = _layout(q)
    violations = _structural_violations(q) or _seam_violations(q, lay)
    if violations:
        raise InvalidQuilt(violations)
    incoming, outgoing = list(q.incoming), list(q.outgoing)
    listed = set(incoming + outgoing)
    for end in _trace_ends(lay):
        if listed.intersection(end.points):
            continue
        (incoming if end.direction == Direction.INCOMING else outgoing).append(end.lead)
    return replace(q, incoming=tuple(incoming), outgoing=tuple(outgoing))


def circle_seams(
    patch_a: Patch,
    circle_a: str,
    patch_b: Patch,
    circle_b: str,
    label: SeamLabel,
    align: Optional[Sequence[Tuple[str, str]]] = None,
) -> List[Seam]:
    """Seams sewing two whole circles together, one per interval.

    ``align`` pairs marked points of circle a with marked points of circle b; it must
    reverse the cyclic order. Markless circles give a single compact seam.
    """
    ca, cb = patch_a.circle(circle_a), patch_b.circle(circle_b)
    if not ca.marked and not cb.marked:
        return [Seam(Side(patch_a.id, ca.id), Side(patch_b.id, cb.id), label)]
    match = dict(align or [])
    ids_a = [mp.id for mp in ca.marked]
    ids_b = [mp.id for mp in cb.marked]
    if sorted(match) != sorted(ids_a) or sorted(match.values()) != sorted(ids_b):
        raise InvalidQuilt(
            [f"alignment of {patch_a.id}/{ca.id} and {patch_b.id}/{cb.id} is not a bijection"]
        )
    seams = []
    k = len(ids_a)
    for i, x in enumerate(ids_a):
        x_next = ids_a[(i + 1) % k]
        y, y_next = match[x], match[x_next]
        if ids_b[(ids_b.index(y_next) + 1) % k] != y:
            raise InvalidQuilt(
                [f"alignment of {patch_a.id}/{ca.id} does not reverse the cyclic order"]
            )
        seams.append(Seam(Side(patch_a.id, ca.id, x), Side(patch_b.id, cb.id, y_next), label))
    return seams


Node = Union[Tuple[str, str], Side]


def _refine(colour: Dict[Node, int], neighbours) -> Dict[Node, int]:
    """Split colour classes by the colours around each node until nothing splits"""
    while True:
        signatures = {v: json.dumps([colour[v], neighbours(v, colour)]) for v in colour}
        ranks = {s: i for i, s in enumerate(sorted(set(signatures.values())))}
        refined = {v: ranks[signatures[v]] for v in colour}
        if len(ranks) == len(set(colour.values())):
            return refined
        colour = refined


def _canonical_search(colour: Dict[Node, int], neighbours, leaf) -> str:
    """Minimal leaf encoding over individualizations of the first non-singleton class"""
    sizes = Counter(colour.values())
    target = min((c for c, n in sizes.items() if n > 1), default=None)
    if target is None:
        return leaf(colour)
    best = None
    for v in [u for u in colour if colour[u] == target]:
        split = {u: 2 * c + (u != v) for u, c in colour.items()}
        encoding = _canonical_search(_refine(split, neighbours), neighbours, leaf)
        if best is None or encoding < best:
            best = encoding
    return best


def combinatorial_type(q: QuiltedSurface) -> str:
    """Canonical encoding of the combinatorial type.

    Invariant under renaming ids, rotating circles, reordering patches, circles, seams
    and boundary labels; end orderings and labels by name are kept. Patches, circles and
    rotations are fixed by colour refinement; only classes that stay tied are branched on.
    """
    require_valid(q)
    lay = _layout(q)
    if not q.patches:
        return json.dumps([q.modulus, [], [[], []]])
    order_pos = {}
    for kind, refs in (("in", q.incoming), ("out", q.outgoing)):
        for i, ref in enumerate(refs):
            order_pos[ref] = [kind, i]

    def local_arc(side: Side) -> list:
        if side in lay.seam_of:
            seam, is_a = lay.seam_of[side]
            return ["s", seam.label.name, "a" if is_a else "b"]
        return ["b", lay.label_of[side].name]

    colour: Dict[Node, str] = {}
    members: Dict[str, List[Side]] = {}
    next_side: Dict[Side, Side] = {}
    for p in q.patches:
        interior = sorted(
            json.dumps([ip.direction.value, order_pos[EndRef(p.id, ip.id)]]) for ip in p.interior
        )
        colour[("p", p.id)] = json.dumps([p.genus, p.label.name, p.label.dim, interior])
        members[p.id] = []
        for c in p.circles:
            if not c.marked:
                side = Side(p.id, c.id)
                colour[side] = json.dumps(["c", local_arc(side)])
                members[p.id].append(side)
                continue
            sides = [Side(p.id, c.id, mp.id) for mp in c.marked]
            for k, (mp, side) in enumerate(zip(c.marked, sides)):
                lead = order_pos.get(EndRef(p.id, mp.id))
                colour[side] = json.dumps(
                    [mp.direction.value, str(mp.width), local_arc(side), lead]
                )
                next_side[side] = sides[(k + 1) % len(sides)]
            members[p.id].extend(sides)

    def neighbours(v: Node, col: Dict[Node, int]) -> list:
        if isinstance(v, tuple):
            return sorted(col[s] for s in members[v[1]])
        partner = lay.partner(v)
        return [
            col[next_side[v]] if v in next_side else None,
            col[partner] if partner is not None else None,
            col[("p", v.patch)],
        ]

    def leaf(col: Dict[Node, int]) -> str:
        patch_order = sorted((p.id for p in q.patches), key=lambda pid: col[("p", pid)])
        circle_order: Dict[str, List[str]] = {}
        rotation: Dict[Tuple[str, str], int] = {}
        for p in q.patches:
            first = {}
            for c in p.circles:
                if not c.marked:
                    first[c.id] = col[Side(p.id, c.id)]
                    continue
                keys = [col[Side(p.id, c.id, mp.id)] for mp in c.marked]
                first[c.id] = min(keys)
                rotation[(p.id, c.id)] = keys.index(first[c.id])
            circle_order[p.id] = sorted(first, key=first.get)
        return _encode(q, lay, order_pos, patch_order, circle_order, rotation)

    ranks = {s: i for i, s in enumerate(sorted(set(colour.values())))}
    start = _refine({v: ranks[s] for v, s in colour.items()}, neighbours)
    return _canonical_search(start, neighbours, leaf)


def _encode(q, lay, order_pos, patch_order, circle_order, rotation) -> str:
    pindex = {pid: i for i, pid in enumerate(patch_order)}
    pos: Dict[Side, list] = {}
    for pid in patch_order:
        patch = lay.patches[pid]
        for ci, cid in enumerate(circle_order[pid]):
            circle = patch.circle(cid)
            if not circle.marked:
                pos[Side(pid, cid)] = [pindex[pid], ci, -1]
                continue
            r = rotation[(pid, cid)]
            for k, mp in enumerate(circle.marked[r:] + circle.marked[:r]):
                pos[Side(pid, cid, mp.id)] = [pindex[pid], ci, k]

    def arc(side: Side) -> list:
        if side in lay.seam_of:
            seam, is_a = lay.seam_of[side]
            return ["s", seam.label.name, "a" if is_a else "b", pos[lay.partner(side)]]
        return ["b", lay.label_of[side].name]

    patches = []
    for pid in patch_order:
        patch = lay.patches[pid]
        circles = []
        for cid in circle_order[pid]:
            circle = patch.circle(cid)
            if not circle.marked:
                circles.append([["c", arc(Side(pid, cid))]])
                continue
            r = rotation[(pid, cid)]
            circles.append(
                [
                    [mp.direction.value, str(mp.width), arc(Side(pid, cid, mp.id))]
                    for mp in circle.marked[r:] + circle.marked[:r]
                ]
            )
        interior = sorted(
            [ip.direction.value, order_pos[EndRef(pid, ip.id)]] for ip in patch.interior
        )
        patches.append([patch.genus, patch.label.name, patch.label.dim, circles, interior])

    def ref(r: EndRef) -> list:
        if r in lay.interior:
            return ["cyl", pindex[r.patch]]
        return pos[Side(r.patch, lay.circle_of[r], r.point)]

    ends = [[ref(r) for r in q.incoming], [ref(r) for r in q.outgoing]]
    return json.dumps([q.modulus, patches, ends], separators=(",", ":"), ensure_ascii=False)


def combinatorial_eq(q1: QuiltedSurface, q2: QuiltedSurface) -> bool:
    return combinatorial_type(q1) == combinatorial_type(q2)
