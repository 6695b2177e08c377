"""Gluing quilted ends together and shrinking strips into seams."""

from dataclasses import replace
from typing import Dict, List, Optional, Tuple

from quiltkit.core.quilt import (
    BoundaryCircle,
    BoundaryLabel,
    Direction,
    EndRef,
    Patch,
    QuiltedEnd,
    QuiltedSurface,
    Seam,
    SeamLabel,
    ShiftRecord,
    Side,
    _layout,
    find_end,
    require_valid,
    transposed_name,
    validate,
)
from quiltkit.core.symplectic import (
    compose,
    correspondence_as_lagrangian,
    intersection_dim,
    lagrangian_as_correspondence,
    transpose,
)
from quiltkit.shared.errors import (
    BothSidesBoundary,
    CompositionNotEmbedded,
    EndMismatch,
    InvalidQuilt,
    NotAStrip,
)


def check_glueable(minus: QuiltedEnd, plus: QuiltedEnd) -> None:
    if minus.direction != Direction.INCOMING or plus.direction != Direction.OUTGOING:
        raise EndMismatch("Gluing pairs an incoming end with an outgoing end")
    if minus.cylindrical or plus.cylindrical:
        raise EndMismatch("Cylindrical ends are not glued")
    if len(minus.points) != len(plus.points) or minus.cyclic != plus.cyclic:
        raise EndMismatch(
            "Ends have different shapes",
            detail={"incoming": minus.key, "outgoing": plus.key},
        )
    for what in ("labels", "widths", "patch_labels", "half_dims"):
        if getattr(minus, what) != getattr(plus, what):
            raise EndMismatch(
                f"Ends differ in {what.replace('_', ' ')}",
                detail={"incoming": minus.key, "outgoing": plus.key},
            )


def glue(q: QuiltedSurface, e_minus, e_plus) -> QuiltedSurface:
    """Glue the incoming end ``e_minus`` to the outgoing end ``e_plus`` of one quilt.

    Ends are QuiltedEnd values, EndRef values or positions in the incoming and outgoing
    orderings. Constituents are paired in order; the paired marked points disappear,
    their boundary arcs join up and the patches they touch merge.
    """
    require_valid(q)
    lay = _layout(q)
    minus = find_end(q, e_minus, Direction.INCOMING)
    plus = find_end(q, e_plus, Direction.OUTGOING)
    check_glueable(minus, plus)

    removed = set(minus.points) | set(plus.points)
    cont: Dict[EndRef, Side] = {}
    for zp, zm in zip(plus.points, minus.points):
        cont[zp] = lay.after[zm]
        cont[zm] = lay.after[zp]

    parent = {p.id: p.id for p in q.patches}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    order = {p.id: i for i, p in enumerate(q.patches)}
    pairs_at: Dict[str, int] = {}
    for zp, zm in zip(plus.points, minus.points):
        ra, rb = find(zp.patch), find(zm.patch)
        if ra != rb:
            keep, drop = sorted((ra, rb), key=order.get)
            parent[drop] = keep
    for zp, _ in zip(plus.points, minus.points):
        root = find(zp.patch)
        pairs_at[root] = pairs_at.get(root, 0) + 1

    groups: Dict[str, List[Patch]] = {}
    for p in q.patches:
        groups.setdefault(find(p.id), []).append(p)

    point_name: Dict[EndRef, EndRef] = {}
    for root, members in groups.items():
        # point ids stay unless two merged patches share one
        wanted = [
            EndRef(p.id, pt)
            for p in members
            for pt in _point_ids(p)
            if EndRef(p.id, pt) not in removed
        ]
        counts: Dict[str, int] = {}
        for ref in wanted:
            counts[ref.point] = counts.get(ref.point, 0) + 1
        for ref in wanted:
            name = ref.point if counts[ref.point] == 1 else f"{ref.patch}.{ref.point}"
            point_name[ref] = EndRef(root, name)

    merged: Dict[Side, Side] = {}
    new_circles: Dict[str, List[BoundaryCircle]] = {root: [] for root in groups}
    visited = set()

    def circle_id(root: str, base: str) -> str:
        used = {c.id for c in new_circles[root]}
        if base not in used:
            return base
        k = 1
        while f"{base}_{k}" in used:
            k += 1
        return f"{base}_{k}"

    for root, members in groups.items():
        for p in members:
            for c in p.circles:
                if not c.marked:
                    cid = circle_id(root, c.id)
                    new_circles[root].append(BoundaryCircle(cid))
                    merged[Side(p.id, c.id)] = Side(root, cid)
                    continue
                for mp in c.marked:
                    ref = EndRef(p.id, mp.id)
                    if ref in removed or lay.after[ref] in visited:
                        continue
                    points, chains = [], []
                    cur = ref
                    while True:
                        chain, side = [], lay.after[cur]
                        while True:
                            chain.append(side)
                            visited.add(side)
                            end = EndRef(side.patch, lay.arc_end[side])
                            if end not in removed:
                                break
                            side = cont[end]
                        points.append(cur)
                        chains.append(chain)
                        cur = end
                        if cur == ref:
                            break
                    cid = circle_id(root, c.id)
                    marked = tuple(
                        replace(lay.marked[pt], id=point_name[pt].point) for pt in points
                    )
                    new_circles[root].append(BoundaryCircle(cid, marked))
                    for pt, chain in zip(points, chains):
                        for old in chain:
                            merged[old] = Side(root, cid, point_name[pt].point)
        # arcs running only between removed points close up into compact circles
        for p in members:
            for c in p.circles:
                for mp in c.marked:
                    side = lay.after[EndRef(p.id, mp.id)]
                    if side in visited:
                        continue
                    cid = circle_id(root, c.id)
                    new_circles[root].append(BoundaryCircle(cid))
                    while side not in visited:
                        visited.add(side)
                        merged[side] = Side(root, cid)
                        side = cont[EndRef(side.patch, lay.arc_end[side])]

    patches = []
    for root, members in groups.items():
        chi = sum(p.euler for p in members) - pairs_at.get(root, 0)
        twice_genus = 2 - chi - len(new_circles[root])
        if twice_genus < 0 or twice_genus % 2:
            raise InvalidQuilt([f"gluing produced an inconsistent surface at patch {root}"])
        interior = tuple(
            replace(ip, id=point_name[EndRef(p.id, ip.id)].point)
            for p in members
            for ip in p.interior
        )
        lead = members[0]
        patches.append(
            Patch(root, lead.label, tuple(new_circles[root]), twice_genus // 2, interior)
        )

    seams, seen = [], {}
    for seam in q.seams:
        key = (merged[seam.a], merged[seam.b])
        if key in seen:
            if seen[key] != seam.label:
                raise InvalidQuilt([f"merged seam {key[0]} ~ {key[1]} carries two labels"])
            continue
        seen[key] = seam.label
        seams.append(Seam(key[0], key[1], seam.label))

    boundary, labelled = [], {}
    for side, label in q.boundary:
        new = merged[side]
        if new in labelled:
            if labelled[new] != label:
                clash = f"{labelled[new].name} and {label.name}"
                raise InvalidQuilt([f"merged boundary component {new} carries {clash}"])
            continue
        labelled[new] = label
        boundary.append((new, label))

    result = QuiltedSurface(
        modulus=q.modulus,
        patches=tuple(patches),
        seams=tuple(seams),
        boundary=tuple(boundary),
        incoming=tuple(point_name[r] for r in q.incoming if r not in minus.points),
        outgoing=tuple(point_name[r] for r in q.outgoing if r not in plus.points),
    )
    violations = validate(result)
    if violations:
        raise InvalidQuilt(violations)
    return result


def _into(seam: Seam, is_a: bool) -> SeamLabel:
    """The seam label read as a correspondence from the partner into the strip"""
    if not is_a:
        return seam.label
    return _transposed(seam.label)


def _out_of(seam: Seam, is_a: bool) -> SeamLabel:
    if is_a:
        return seam.label
    return _transposed(seam.label)


def _transposed(label: SeamLabel) -> SeamLabel:
    corr = label.correspondence
    return SeamLabel(transposed_name(label.name), transpose(corr) if corr is not None else None)


def _composite(first: SeamLabel, second: SeamLabel) -> SeamLabel:
    concrete = None
    if first.correspondence is not None and second.correspondence is not None:
        result = compose(first.correspondence, second.correspondence)
        if not result.embedded:
            raise CompositionNotEmbedded(
                f"{first.name} and {second.name} do not compose embeddedly",
                detail={"transverse": result.transverse, "kernel_dim": result.kernel_dim},
            )
        concrete = result.composition
    return SeamLabel(f"{first.name}∘{second.name}", concrete)


def _strip_sides(patch: Patch) -> List[Side]:
    if patch.genus or patch.interior:
        raise NotAStrip(f"Patch {patch.id} has genus or interior punctures")
    if len(patch.circles) == 1 and len(patch.circles[0].marked) == 2:
        c = patch.circles[0]
        return [Side(patch.id, c.id, mp.id) for mp in c.marked]
    if len(patch.circles) == 2 and not any(c.marked for c in patch.circles):
        return [Side(patch.id, c.id) for c in patch.circles]
    raise NotAStrip(
        f"Patch {patch.id} is neither a strip nor an annulus without marked points"
    )


def _shift_record(patch: Patch) -> ShiftRecord:
    dirs = {mp.direction for c in patch.circles for mp in c.marked}
    if dirs == {Direction.OUTGOING}:
        d = 1
    elif dirs == {Direction.INCOMING}:
        d = -1
    else:
        d = 0
    return ShiftRecord(patch.label.half_dim, d)


def shrink_strip(
    q: QuiltedSurface, patch_id: str, allow_closed: bool = False
) -> Tuple[QuiltedSurface, ShiftRecord]:
    """Remove a strip patch and sew its two neighbours along the composed label.

    The patch must be a disk with two marked points or an annulus without marked points.
    A side on true boundary turns the composite into a boundary label of the other
    neighbour. With both sides on true boundary the strip only disappears when
    ``allow_closed`` is set and the two boundary Lagrangians meet in zero.
    """
    require_valid(q)
    lay = _layout(q)
    patch = q.patch(patch_id)
    sides = _strip_sides(patch)
    record = _shift_record(patch)

    seamed = [s for s in sides if s in lay.seam_of]
    seams = list(q.seams)
    boundary = [(s, label) for s, label in q.boundary if s.patch != patch_id]

    if not seamed:
        if not allow_closed:
            raise BothSidesBoundary(f"Both sides of {patch_id} lie on true boundary")
        first, second = (lay.label_of[s] for s in sides)
        if first.lagrangian is not None and second.lagrangian is not None:
            if intersection_dim(first.lagrangian, second.lagrangian):
                raise CompositionNotEmbedded(
                    f"{first.name} and {second.name} intersect nontrivially"
                )
    elif len(seamed) == 2:
        entries = [lay.seam_of[s] for s in sides]
        # the side whose seam already flows into the strip comes first
        if entries[0][1] and not entries[1][1]:
            entries.reverse()
        (s_in, a_in), (s_out, a_out) = entries
        label = _composite(_into(s_in, a_in), _out_of(s_out, a_out))
        x = s_in.b if a_in else s_in.a
        y = s_out.b if a_out else s_out.a
        seams = [s for s in seams if s not in (s_in, s_out)] + [Seam(x, y, label)]
    else:
        seam, is_a = lay.seam_of[seamed[0]]
        other = lay.partner(seamed[0])
        bside = next(s for s in sides if s not in lay.seam_of)
        blabel = lay.label_of[bside]
        if is_a:
            out = _out_of(seam, is_a)
            name = f"{blabel.name}∘{out.name}"
            concrete = _boundary_then(blabel, out)
        else:
            into = _into(seam, is_a)
            name = f"{into.name}∘{blabel.name}"
            concrete = _then_boundary(into, blabel)
        seams = [s for s in seams if s != seam]
        boundary.append((other, BoundaryLabel(name, concrete)))

    incoming = _drop_points(q.incoming, q, patch_id)
    outgoing = _drop_points(q.outgoing, q, patch_id)
    result = QuiltedSurface(
        modulus=q.modulus,
        patches=tuple(p for p in q.patches if p.id != patch_id),
        seams=tuple(seams),
        boundary=tuple(boundary),
        incoming=incoming,
        outgoing=outgoing,
    )
    violations = validate(result)
    if violations:
        raise InvalidQuilt(violations)
    return result, record


def _boundary_then(blabel: BoundaryLabel, out: SeamLabel):
    if blabel.lagrangian is None or out.correspondence is None:
        return None
    first = SeamLabel(blabel.name, lagrangian_as_correspondence(blabel.lagrangian))
    return correspondence_as_lagrangian(_composite(first, out).correspondence)


def _then_boundary(into: SeamLabel, blabel: BoundaryLabel):
    if blabel.lagrangian is None or into.correspondence is None:
        return None
    last = SeamLabel(blabel.name, lagrangian_as_correspondence(blabel.lagrangian, incoming=True))
    return correspondence_as_lagrangian(_composite(into, last).correspondence)


def _drop_points(refs, q: QuiltedSurface, patch_id: str) -> tuple:
    """Move ordering references off the removed patch onto the next constituent"""
    if not any(r.patch == patch_id for r in refs):
        return tuple(refs)
    out = []
    for ref in refs:
        if ref.patch != patch_id:
            out.append(ref)
            continue
        end = find_end(q, ref)
        k = end.points.index(ref)
        rest = end.points[k:] + end.points[:k] if end.cyclic else end.points
        successor: Optional[EndRef] = next((p for p in rest if p.patch != patch_id), None)
        if successor is not None:
            out.append(successor)
    return tuple(out)


def _point_ids(p: Patch) -> List[str]:
    return [mp.id for c in p.circles for mp in c.marked] + [ip.id for ip in p.interior]
