"""Formal relative invariants of quilted surfaces.

Generator quilts are assigned graded maps by combinatorial type. Composite quilts are
evaluated from an expression tree: a disjoint union becomes the Koszul tensor product and a
gluing becomes the algebraic trace. Two configurations carry an exact gluing sign; every
other gluing is only known up to a global sign and is flagged as such.
"""

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from quiltkit.core.builders import band
from quiltkit.core.graded import (
    DualityDatum,
    GradedMap,
    GradedModule,
    algebraic_trace,
    cap_map,
    compose,
    cup_map,
    graded_trace,
    identity_map,
    tensor_map,
    tensor_module,
    unit_module,
    zero_map,
)
from quiltkit.core.quilt import (
    Direction,
    PatchLabel,
    QuiltedEnd,
    QuiltedSurface,
    ShiftRecord,
    combinatorial_type,
    connected_components,
    degree_shift,
    disjoint_union,
    end_circle,
    extract_ends,
    find_end,
)
from quiltkit.core.surgery import glue, shrink_strip
from quiltkit.shared.config import RINGS
from quiltkit.shared.errors import (
    DegreeMismatch,
    FactorMismatch,
    InvalidQuilt,
    ModulusMismatch,
    RingMismatch,
    UnassignedGenerator,
)

_KIND_BY_DIRECTIONS = {
    (Direction.INCOMING, Direction.OUTGOING): "strip",
    (Direction.INCOMING, Direction.INCOMING): "cap",
    (Direction.OUTGOING, Direction.OUTGOING): "cup",
}


@dataclass
class GeneratorAssignment:
    """Floer modules per end key and graded maps per generator type.

    ``shifts`` records, per type, how far an assigned degree sits from the degree shift of
    its quilt (nonzero only after transport across a shrunk strip).
    """

    modulus: int
    ring: str = "z"
    modules: Dict[str, GradedModule] = field(default_factory=dict)
    maps: Dict[str, GradedMap] = field(default_factory=dict)
    dualities: Dict[str, DualityDatum] = field(default_factory=dict)
    shifts: Dict[str, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.ring not in RINGS:
            raise RingMismatch(f"Unknown ring {self.ring}")
        for key, m in self.modules.items():
            if m.modulus != self.modulus:
                raise ModulusMismatch(f"Module {key} is graded mod {m.modulus}")
            if m.ring != self.ring:
                raise RingMismatch(f"Module {key} is over {m.ring}")

    @property
    def unit(self) -> GradedModule:
        return unit_module(self.modulus, self.ring)

    def duality_for(self, end: QuiltedEnd) -> DualityDatum:
        """Duality pairing the module of ``end`` with the module of the reversed end"""
        key, rev, n = end.key, end.reversed_key, end.n
        if key in self.dualities:
            return self.dualities[key]
        if rev in self.dualities:
            return self.dualities[rev].reversed()
        if key in self.modules:
            C = self.modules[key]
            if rev in self.modules and rev != key:
                return DualityDatum(C, self.modules[rev], n, (1,) * C.rank)
            return DualityDatum.standard(C, n, name=rev)
        if rev in self.modules:
            return DualityDatum.standard(self.modules[rev], n, name=key).reversed()
        raise UnassignedGenerator(f"No module for end {key}", detail={"end": key})

    def module_for(self, end: QuiltedEnd) -> GradedModule:
        if end.key in self.modules:
            return self.modules[end.key]
        if end.cylindrical:
            raise UnassignedGenerator(f"No module for end {end.key}", detail={"end": end.key})
        return self.duality_for(end).module

    def end_modules(self, q: QuiltedSurface) -> Tuple[GradedModule, GradedModule]:
        """Tensor products of the incoming and of the outgoing end modules"""
        ends = extract_ends(q)
        ins = [self.module_for(e) for e in ends if e.direction == Direction.INCOMING]
        outs = [self.module_for(e) for e in ends if e.direction == Direction.OUTGOING]
        return (
            tensor_module(*ins) if ins else self.unit,
            tensor_module(*outs) if outs else self.unit,
        )

    def expected_degree(self, q: QuiltedSurface) -> int:
        shift = self.shifts.get(combinatorial_type(q), 0)
        return (degree_shift(q) + shift) % self.modulus

    def assign(self, q: QuiltedSurface, matrix, shift: int = 0) -> GradedMap:
        """Build and store the map of a generator quilt from its matrix"""
        if q.modulus != self.modulus:
            raise ModulusMismatch(f"Quilt is graded mod {q.modulus}, not {self.modulus}")
        source, target = self.end_modules(q)
        f = GradedMap(source, target, degree_shift(q) + shift, matrix)
        self.register(q, f, shift)
        return f

    def register(self, q: QuiltedSurface, f: GradedMap, shift: int = 0) -> None:
        source, target = self.end_modules(q)
        if f.source != source or f.target != target:
            raise FactorMismatch("Map does not run between the end modules of its quilt")
        t = combinatorial_type(q)
        if (f.degree - degree_shift(q) - shift) % self.modulus:
            raise DegreeMismatch(
                f"Degree {f.degree} differs from the shift {degree_shift(q)} plus {shift}"
            )
        self.maps[t] = f
        if shift % self.modulus:
            self.shifts[t] = shift % self.modulus
        else:
            self.shifts.pop(t, None)

    def map_for(self, q: QuiltedSurface) -> GradedMap:
        t = combinatorial_type(q)
        if t in self.maps:
            return self.maps[t]
        f = builtin_map(q, self)
        if f is None:
            patches = ", ".join(p.id for p in q.patches)
            raise UnassignedGenerator(
                f"No map assigned to the quilt on patches {patches}", detail={"type": t}
            )
        return f


def _is_labeled_disk(q: QuiltedSurface) -> bool:
    if len(q.patches) != 1 or q.seams:
        return False
    p = q.patches[0]
    return p.genus == 0 and not p.interior and len(p.circles) == 1 and not p.circles[0].marked


def builtin_map(q: QuiltedSurface, a: GeneratorAssignment) -> Optional[GradedMap]:
    """Maps every assignment knows: the empty quilt, disks, and (quilted) strips, caps, cups"""
    if not q.patches:
        return identity_map(a.unit)
    ends = extract_ends(q)
    if not ends:
        if _is_labeled_disk(q):
            return zero_map(a.unit, a.unit, degree_shift(q))
        return None
    if len(ends) != 2 or any(e.cylindrical for e in ends):
        return None
    u, v = ends
    kind = _KIND_BY_DIRECTIONS.get((u.direction, v.direction))
    if kind is None:
        return None
    labels = []
    for ref in u.points:
        label = q.patch(ref.patch).label
        labels.append(PatchLabel(label.name, label.dim))
    v_width = {ref.patch: w for ref, w in zip(v.points, v.widths)}
    try:
        candidate = band(
            labels,
            list(u.labels),
            kind,
            cyclic=u.cyclic,
            modulus=q.modulus,
            widths_u=list(u.widths),
            widths_v=[v_width.get(ref.patch, 1) for ref in u.points],
        )
    except InvalidQuilt:
        return None
    if combinatorial_type(candidate) != combinatorial_type(q):
        return None
    if kind == "strip":
        if u.key != v.key:
            return None
        return identity_map(a.module_for(u))
    D = a.duality_for(u)
    return cap_map(D) if kind == "cap" else cup_map(D)


@dataclass(frozen=True)
class Leaf:
    quilt: QuiltedSurface
    name: str = ""


@dataclass(frozen=True)
class DisjointUnion:
    left: "Expression"
    right: "Expression"


@dataclass(frozen=True)
class Glue:
    """Glue an incoming end to an outgoing end of the operand's quilt"""

    inner: "Expression"
    minus: object
    plus: object


Expression = Union[Leaf, DisjointUnion, Glue]


@dataclass(frozen=True)
class EvaluationResult:
    """The evaluated map; ``sign_exact`` is False when only known up to a global sign"""

    map: GradedMap
    sign_exact: bool
    quilt: QuiltedSurface
    shift: int = 0

    @property
    def degree_sound(self) -> bool:
        expected = degree_shift(self.quilt) + self.shift
        return (self.map.degree - expected) % self.map.modulus == 0


def _gluing_signs(rest: List[GradedModule], tail_rank: int, n: int) -> np.ndarray:
    """(-1)^{sum (n - |x_e|)} over the remaining incoming factors, one entry per column"""
    signs = []
    for combo in itertools.product(*(m.basis for m in rest)):
        exponent = sum(n - g.degree for g in combo)
        signs.extend([-1 if exponent % 2 else 1] * tail_rank)
    return np.array(signs, dtype=object)


def _compose_into_last(
    left: EvaluationResult,
    right: EvaluationResult,
    minus: QuiltedEnd,
    b1: int,
) -> GradedMap:
    """Phi_S0 after (1 (x) Phi_S1), signed for a gluing into the last input of S0"""
    f0, f1 = left.map, right.map
    rest = list(f0.source.factor_list[:-1])
    inner = tensor_map(*(identity_map(m) for m in rest), f1) if rest else f1
    result = compose(f0, inner)
    n = minus.n
    if n % 2 == 0 or b1 % 2 == 1 or not rest:
        return result
    signs = _gluing_signs(rest, f1.source.rank, n)
    return GradedMap(result.source, result.target, result.degree, result.matrix * signs)


def _fits_composition(
    q: QuiltedSurface,
    left: QuiltedSurface,
    right: QuiltedSurface,
    minus: QuiltedEnd,
    plus: QuiltedEnd,
) -> bool:
    """e- is the last input of the left operand and e+ the only output of the right one"""
    if not left.incoming or q.incoming.index(minus.lead) != len(left.incoming) - 1:
        return False
    if len(right.outgoing) != 1 or q.outgoing.index(plus.lead) != len(left.outgoing):
        return False
    for ref in minus.points:
        if end_circle(q, ref) != q.patch(ref.patch).circles[-1].id:
            return False
    for ref in plus.points:
        if end_circle(q, ref) != q.patch(ref.patch).circles[0].id:
            return False
    return True


def _is_self_trace(q: QuiltedSurface, minus: QuiltedEnd, plus: QuiltedEnd) -> bool:
    """Connected quilt whose only two ends both sit on the first circle of their patches"""
    if len(connected_components(q)) != 1:
        return False
    if len(q.incoming) != 1 or len(q.outgoing) != 1:
        return False
    for ref in (*minus.points, *plus.points):
        if end_circle(q, ref) != q.patch(ref.patch).circles[0].id:
            return False
    return True


def _evaluate(
    expr: Expression, a: GeneratorAssignment
) -> Tuple[EvaluationResult, Optional[Tuple[EvaluationResult, EvaluationResult]]]:
    if isinstance(expr, Leaf):
        q = expr.quilt
        if q.modulus != a.modulus:
            raise ModulusMismatch(f"Quilt is graded mod {q.modulus}, not {a.modulus}")
        shift = a.shifts.get(combinatorial_type(q), 0)
        return EvaluationResult(a.map_for(q), True, q, shift), None

    if isinstance(expr, DisjointUnion):
        left, _ = _evaluate(expr.left, a)
        right, _ = _evaluate(expr.right, a)
        result = EvaluationResult(
            tensor_map(left.map, right.map),
            left.sign_exact and right.sign_exact,
            disjoint_union(left.quilt, right.quilt),
            left.shift + right.shift,
        )
        return result, (left, right)

    inner, parts = _evaluate(expr.inner, a)
    q = inner.quilt
    minus = find_end(q, expr.minus, Direction.INCOMING)
    plus = find_end(q, expr.plus, Direction.OUTGOING)
    glued = glue(q, minus, plus)

    if parts is not None:
        left, right = parts
        if _fits_composition(q, left.quilt, right.quilt, minus, plus):
            b1 = sum(len(p.circles) for p in right.quilt.patches)
            f = _compose_into_last(left, right, minus, b1)
            exact = left.sign_exact and right.sign_exact
            return EvaluationResult(f, exact, glued, inner.shift), None

    D = a.duality_for(minus)
    f = algebraic_trace(inner.map, D, q.incoming.index(minus.lead), q.outgoing.index(plus.lead))
    exact = inner.sign_exact and _is_self_trace(q, minus, plus)
    return EvaluationResult(f, exact, glued, inner.shift), None


def evaluate(expr: Expression, a: GeneratorAssignment) -> EvaluationResult:
    """Evaluate a quilt expression against an assignment of generator maps"""
    result, _ = _evaluate(expr, a)
    return result


def verify_assignment(q: QuiltedSurface, f: GradedMap, shift: int = 0) -> bool:
    """Whether f has the degree the quilt's index forces on it"""
    return (f.degree - degree_shift(q) - shift) % q.modulus == 0


def sphere_with_holes(g: int, phi: GradedMap) -> int:
    """Invariant of the closed genus-g surface cut into g - 1 copies of a two-holed piece"""
    if g < 1:
        raise InvalidQuilt([f"genus {g} is not positive"])
    power = identity_map(phi.source)
    for _ in range(g - 1):
        power = compose(phi, power)
    return graded_trace(power)


@dataclass(frozen=True)
class TransportResult:
    quilt: QuiltedSurface
    assignment: GeneratorAssignment
    record: ShiftRecord
    identification: Dict[str, str]

    @property
    def record_shift(self) -> int:
        return self.record.n * self.record.d


def _degree_of_removed(ends: List[QuiltedEnd], a: GeneratorAssignment) -> int:
    total = 0
    for end in ends:
        C = a.module_for(end)
        if C.rank != 1:
            raise FactorMismatch(f"Removed end {end.key} has {C.rank} generators, not one")
        sign = 1 if end.direction == Direction.INCOMING else -1
        total += sign * C.basis[0].degree
    return total


def shrink_transport(
    q: QuiltedSurface, patch_id: str, a: GeneratorAssignment, allow_closed: bool = False
) -> TransportResult:
    """Shrink a strip patch and carry end modules and the quilt's map across.

    Surviving ends keep their modules basis for basis. Ends that vanish with the strip must
    have a single generator; their degrees move into the transported map's degree.
    """
    shrunk, record = shrink_strip(q, patch_id, allow_closed=allow_closed)
    old_ends = extract_ends(q)
    new_ends = extract_ends(shrunk) if shrunk.patches else []
    gone = [e for e in old_ends if all(ref.patch == patch_id for ref in e.points)]
    survivors = [e for e in old_ends if e not in gone]
    if len(survivors) != len(new_ends):
        raise FactorMismatch("Shrinking changed the number of surviving ends")

    moved = GeneratorAssignment(
        a.modulus, a.ring, dict(a.modules), dict(a.maps), dict(a.dualities), dict(a.shifts)
    )
    identification = {}
    for old, new in zip(survivors, new_ends):
        if old.direction != new.direction:
            raise FactorMismatch(f"End {old.key} changed direction")
        moved.modules[new.key] = a.module_for(old)
        identification[old.key] = new.key

    try:
        f = a.map_for(q)
    except UnassignedGenerator:
        f = None
    if f is not None:
        source, target = moved.end_modules(shrunk)
        degree = f.degree + _degree_of_removed(gone, a)
        g = GradedMap(source, target, degree, f.matrix)
        moved.register(shrunk, g, g.degree - degree_shift(shrunk))
    return TransportResult(shrunk, moved, record, identification)
