"""Conversion between the JSON schemas and the core objects.

Decoding raises SchemaError for shapes the schemas cannot express (odd dimensions,
ragged matrices) and InvalidQuilt when seams cannot be expanded; everything else is left
to the core validators.
"""

from typing import Any, Callable, Dict, List, Optional, Tuple

from sympy import ImmutableMatrix, Rational

from quiltkit.core.graded import (
    ChainComplex,
    Generator,
    GradedMap,
    GradedModule,
)
from quiltkit.core.invariants import (
    DisjointUnion,
    Expression,
    GeneratorAssignment,
    Glue,
    Leaf,
)
from quiltkit.core.linalg import matrix, rational
from quiltkit.core.maslov import LagrangianLoop
from quiltkit.core.quilt import (
    BoundaryCircle,
    BoundaryLabel,
    Direction,
    EndRef,
    InteriorPuncture,
    MarkedPoint,
    Patch,
    PatchLabel,
    QuiltedSurface,
    Seam,
    SeamLabel,
    Side,
    circle_seams,
)
from quiltkit.core.symplectic import (
    LagrangianCorrespondence,
    LagrangianSubspace,
    SymplecticSpace,
    correspondence,
    standard_space,
)
from quiltkit.shared import models
from quiltkit.shared.errors import DimensionMismatch, InvalidQuilt, SchemaError


def rows(m: ImmutableMatrix) -> List[List[str]]:
    return [[str(m[i, j]) for j in range(m.cols)] for i in range(m.rows)]


def space(dim: int, form: Optional[models.Rows] = None) -> SymplecticSpace:
    if form is not None:
        return SymplecticSpace(_matrix(form))
    if dim < 0 or dim % 2:
        raise SchemaError(f"Symplectic dimension {dim} is not even")
    return standard_space(dim // 2)


def _matrix(data: models.Rows, cols: Optional[int] = None) -> ImmutableMatrix:
    try:
        return matrix(data, cols)
    except (ValueError, DimensionMismatch) as e:
        raise SchemaError(f"Bad matrix: {e}") from e


def lagrangian_from_model(m: models.LagrangianModel) -> LagrangianSubspace:
    V = space(m.dim, m.form)
    return LagrangianSubspace(V, _matrix(m.basis, V.half_dim))


def lagrangian_to_model(L: LagrangianSubspace) -> Dict[str, Any]:
    data: Dict[str, Any] = {"dim": L.space.dim, "basis": rows(L.basis)}
    if L.space != standard_space(L.space.half_dim):
        data["form"] = rows(L.space.form)
    return data


def correspondence_from_model(m: models.CorrespondenceModel) -> LagrangianCorrespondence:
    V0, V1 = space(m.source_dim), space(m.target_dim)
    return correspondence(V0, V1, _matrix(m.basis, (V0.dim + V1.dim) // 2))


def correspondence_to_model(L01: LagrangianCorrespondence) -> Dict[str, Any]:
    return {
        "source_dim": L01.source.dim,
        "target_dim": L01.target.dim,
        "basis": rows(L01.basis),
    }


def loop_from_model(
    m: models.LoopModel,
) -> Tuple[LagrangianLoop, Optional[LagrangianSubspace], bool]:
    V = space(m.dim)
    samples = tuple(LagrangianSubspace(V, _matrix(s, V.half_dim)) for s in m.samples)
    reference = None
    if m.reference is not None:
        reference = LagrangianSubspace(V, _matrix(m.reference, V.half_dim))
    return LagrangianLoop(V, samples), reference, m.oriented


# Quilts
def _patch_from_model(m: models.PatchModel) -> Patch:
    label_space = space(m.label.dim, m.label.form) if m.label.form is not None else None
    circles = tuple(
        BoundaryCircle(
            c.id,
            tuple(
                MarkedPoint(mp.id, Direction(mp.dir), _number(mp.width)) for mp in c.marked
            ),
        )
        for c in m.circles
    )
    interior = tuple(InteriorPuncture(ip.id, Direction(ip.dir)) for ip in m.interior)
    label = PatchLabel(m.label.name, m.label.dim, label_space)
    return Patch(m.id, label, circles, m.genus, interior)


def _number(value) -> Rational:
    try:
        return rational(value)
    except ValueError as e:
        raise SchemaError(f"Not a rational: {value!r}") from e


def _seam_label(m: models.SeamLabelModel, pa: Patch, pb: Patch) -> SeamLabel:
    if m.dim_pair is not None and list(m.dim_pair) != [pa.label.dim, pb.label.dim]:
        raise InvalidQuilt(
            [f"seam {m.name}: dim_pair {m.dim_pair} differs from patch dimensions"]
        )
    concrete = correspondence_from_model(m.correspondence) if m.correspondence else None
    return SeamLabel(m.name, concrete)


def _interval_end(p: Patch, circle: str, start: str) -> Optional[str]:
    ids = [mp.id for mp in p.circle(circle).marked]
    if start not in ids:
        return None
    return ids[(ids.index(start) + 1) % len(ids)]


def _seams_from_model(m: models.SeamModel, patches: Dict[str, Patch]) -> List[Seam]:
    missing = [s[0] for s in (m.a, m.b) if s[0] not in patches]
    if missing:
        raise InvalidQuilt([f"seam {m.label.name}: unknown patch {pid}" for pid in missing])
    pa, pb = patches[m.a[0]], patches[m.b[0]]
    try:
        pa.circle(m.a[1])
        pb.circle(m.b[1])
    except KeyError as e:
        raise InvalidQuilt([f"seam {m.label.name}: unknown circle {e.args[0]}"]) from e
    label = _seam_label(m.label, pa, pb)
    if len(m.a) == 2 and len(m.b) == 2:
        pairs = [tuple(p) for p in m.align or []]
        return circle_seams(pa, m.a[1], pb, m.b[1], label, pairs)
    seam = Seam(Side(*m.a), Side(*m.b), label)
    if m.align is not None and len(m.a) == 3 and len(m.b) == 3:
        derived = {
            (m.a[2], _interval_end(pb, m.b[1], m.b[2])),
            (_interval_end(pa, m.a[1], m.a[2]), m.b[2]),
        }
        if {tuple(p) for p in m.align} != derived:
            raise InvalidQuilt([f"seam {m.label.name}: align does not match the intervals"])
    return [seam]


def quilt_from_model(m: models.QuiltModel, default_modulus: int = 2) -> QuiltedSurface:
    """A quilt from its schema; files without a modulus take ``default_modulus``"""
    patches = [_patch_from_model(p) for p in m.patches]
    by_id = {p.id: p for p in patches}
    seams = [s for sm in m.seams for s in _seams_from_model(sm, by_id)]
    boundary = []
    for entry in m.boundary_labels:
        lag = lagrangian_from_model(entry.label.lagrangian) if entry.label.lagrangian else None
        boundary.append((Side(*entry.side), BoundaryLabel(entry.label.name, lag)))
    return QuiltedSurface(
        modulus=m.modulus if m.modulus is not None else default_modulus,
        patches=tuple(patches),
        seams=tuple(seams),
        boundary=tuple(boundary),
        incoming=tuple(_end_ref(r) for r in m.end_order.incoming),
        outgoing=tuple(_end_ref(r) for r in m.end_order.outgoing),
    )


def _end_ref(pair: List[str]) -> EndRef:
    if len(pair) != 2:
        raise SchemaError(f"End reference {pair} is not [patch, point]")
    return EndRef(*pair)


def _side(s: Side) -> List[str]:
    return [s.patch, s.circle] if s.start is None else [s.patch, s.circle, s.start]


def quilt_to_model(q: QuiltedSurface) -> Dict[str, Any]:
    patches = []
    for p in q.patches:
        label: Dict[str, Any] = {"name": p.label.name, "dim": p.label.dim}
        if p.label.space is not None:
            label["form"] = rows(p.label.space.form)
        patches.append(
            {
                "id": p.id,
                "genus": p.genus,
                "label": label,
                "circles": [
                    {
                        "id": c.id,
                        "marked": [
                            {"id": mp.id, "dir": mp.direction.value, "width": str(mp.width)}
                            for mp in c.marked
                        ],
                    }
                    for c in p.circles
                ],
                "interior": [{"id": ip.id, "dir": ip.direction.value} for ip in p.interior],
            }
        )
    seams = []
    for s in q.seams:
        label = {"name": s.label.name}
        if s.label.correspondence is not None:
            corr = s.label.correspondence
            label["dim_pair"] = [corr.source.dim, corr.target.dim]
            label["correspondence"] = correspondence_to_model(corr)
        seams.append({"a": _side(s.a), "b": _side(s.b), "label": label})
    boundary = []
    for side, blabel in q.boundary:
        entry: Dict[str, Any] = {"name": blabel.name}
        if blabel.lagrangian is not None:
            entry["lagrangian"] = lagrangian_to_model(blabel.lagrangian)
        boundary.append({"side": _side(side), "label": entry})
    return {
        "modulus": q.modulus,
        "patches": patches,
        "seams": seams,
        "boundary_labels": boundary,
        "end_order": {
            "incoming": [[r.patch, r.point] for r in q.incoming],
            "outgoing": [[r.patch, r.point] for r in q.outgoing],
        },
    }


# Graded Algebra
def module_from_model(
    m: models.ModuleModel, modulus: int, ring: str, name: str = "C"
) -> GradedModule:
    basis = tuple(Generator(g.name, g.deg) for g in m.basis)
    return GradedModule(m.modulus or modulus, m.ring or ring, basis, name=name)


def module_to_model(m: GradedModule) -> Dict[str, Any]:
    return {
        "modulus": m.modulus,
        "ring": m.ring,
        "basis": [{"name": g.name, "deg": g.degree} for g in m.basis],
    }


def map_from_model(m: models.MapModel, modulus: int, ring: str) -> GradedMap:
    source = module_from_model(m.source, modulus, ring, "S")
    target = module_from_model(m.target, modulus, ring, "T")
    return GradedMap(source, target, m.degree, _int_matrix(m.matrix, target.rank, source.rank))


def map_to_model(f: GradedMap) -> Dict[str, Any]:
    return {
        "source": module_to_model(f.source),
        "target": module_to_model(f.target),
        "degree": f.degree,
        "matrix": [[int(x) for x in row] for row in f.matrix.tolist()],
    }


def complex_from_model(m: models.ComplexModel, modulus: int, ring: str) -> ChainComplex:
    C = module_from_model(m.module, modulus, ring)
    return ChainComplex(GradedMap(C, C, 1, _int_matrix(m.differential, C.rank, C.rank)))


def _int_matrix(data: List[List[int]], nrows: int, ncols: int) -> List[List[int]]:
    if len(data) != nrows or any(len(r) != ncols for r in data):
        raise SchemaError(f"Matrix is not {nrows}x{ncols}")
    return data


# Invariant Engine
def _ref(r: models.Ref):
    return r if isinstance(r, int) else _end_ref(r)


def expression_from_model(
    m: models.ExpressionModel, resolve: Callable[[str], QuiltedSurface]
) -> Expression:
    if isinstance(m, models.LeafExpr):
        return Leaf(resolve(m.quilt), m.quilt)
    if isinstance(m, models.UnionExpr):
        left, right = (expression_from_model(x, resolve) for x in m.union)
        return DisjointUnion(left, right)
    return Glue(expression_from_model(m.glue, resolve), _ref(m.minus), _ref(m.plus))


def assignment_from_model(
    m: models.AssignmentModel,
    resolve: Callable[[str], QuiltedSurface],
    modulus: int,
    ring: str,
) -> GeneratorAssignment:
    modulus, ring = m.modulus or modulus, m.ring or ring
    modules = {key: module_from_model(x, modulus, ring, key) for key, x in m.modules.items()}
    a = GeneratorAssignment(modulus, ring, modules)
    for entry in m.maps:
        a.assign(resolve(entry.quilt), entry.matrix, entry.shift)
    return a
