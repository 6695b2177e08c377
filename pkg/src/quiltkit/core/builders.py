"""Ready-made quilts: strips, caps, cups, disks, annuli and their quilted versions."""

from typing import Optional, Sequence, Union

from sympy import Rational

from quiltkit.core.quilt import (
    BoundaryCircle,
    BoundaryLabel,
    Direction,
    MarkedPoint,
    Patch,
    PatchLabel,
    QuiltedSurface,
    Seam,
    SeamLabel,
    Side,
    transposed_name,
    with_default_order,
)
from quiltkit.shared.errors import InvalidQuilt

KINDS = {
    "strip": (Direction.INCOMING, Direction.OUTGOING),
    "cap": (Direction.INCOMING, Direction.INCOMING),
    "cup": (Direction.OUTGOING, Direction.OUTGOING),
}

LabelLike = Union[str, SeamLabel, BoundaryLabel]


def _boundary_label(x: LabelLike) -> BoundaryLabel:
    if isinstance(x, BoundaryLabel):
        return x
    return BoundaryLabel(getattr(x, "name", x))


def _oriented_seam(x: LabelLike):
    """A seam label and whether it is read backwards (a trailing ^t)"""
    if isinstance(x, SeamLabel):
        return x, False
    name = str(x)
    if name.endswith("^t"):
        return SeamLabel(transposed_name(name)), True
    return SeamLabel(name), False


def band(
    patches: Sequence[PatchLabel],
    labels: Sequence[LabelLike],
    kind: str = "strip",
    cyclic: bool = False,
    modulus: int = 2,
    prefix: str = "p",
    widths_u: Optional[Sequence] = None,
    widths_v: Optional[Sequence] = None,
) -> QuiltedSurface:
    """A row of disks P_0..P_r, each with marked points u and v, sewn side by side.

    ``labels`` is the label sequence read along the u-end: boundary label, seam labels,
    boundary label; for a cyclic band only the r+1 seam labels. A seam label ending in
    ``^t`` is sewn the other way round. ``kind`` picks the directions of (u, v).
    """
    if kind not in KINDS:
        raise InvalidQuilt([f"unknown band kind {kind}"])
    du, dv = KINDS[kind]
    r = len(patches) - 1
    expected = r + 1 if cyclic else r + 2
    if r < 0 or len(labels) != expected:
        raise InvalidQuilt([f"a band of {r + 1} patches needs {expected} labels"])
    widths_u = list(widths_u or [Rational(1)] * (r + 1))
    widths_v = list(widths_v or [Rational(1)] * (r + 1))

    ids = [f"{prefix}{k}" for k in range(r + 1)]
    built = [
        Patch(
            ids[k],
            patches[k],
            (
                BoundaryCircle(
                    "c",
                    (
                        MarkedPoint("u", du, Rational(widths_u[k])),
                        MarkedPoint("v", dv, Rational(widths_v[k])),
                    ),
                ),
            ),
        )
        for k in range(r + 1)
    ]
    X = [Side(pid, "c", "u") for pid in ids]
    Y = [Side(pid, "c", "v") for pid in ids]
    if du == Direction.INCOMING:
        before, after, first_side, last_side = Y, X, X[0], Y[r]
    else:
        before, after, first_side, last_side = X, Y, Y[0], X[r]

    seam_labels = list(labels) if cyclic else list(labels[1:-1])
    seams = []
    for k, raw in enumerate(seam_labels):
        label, flipped = _oriented_seam(raw)
        a, b = before[k], after[(k + 1) % (r + 1)]
        seams.append(Seam(b, a, label) if flipped else Seam(a, b, label))
    boundary = ()
    if not cyclic:
        boundary = (
            (first_side, _boundary_label(labels[0])),
            (last_side, _boundary_label(labels[-1])),
        )
    q = QuiltedSurface(
        modulus=modulus, patches=tuple(built), seams=tuple(seams), boundary=boundary
    )
    return with_default_order(q)


def strip(
    L0: LabelLike = "L0",
    L1: LabelLike = "L1",
    label: PatchLabel = PatchLabel("M", 2),
    modulus: int = 2,
    width=1,
    prefix: str = "s",
) -> QuiltedSurface:
    """Disk with one incoming and one outgoing point; end labels (L0, L1)"""
    widths = [width]
    return band(
        [label], [L0, L1], "strip", modulus=modulus, prefix=prefix, widths_u=widths, widths_v=widths
    )


def cap(
    L0: LabelLike = "L0",
    L1: LabelLike = "L1",
    label: PatchLabel = PatchLabel("M", 2),
    modulus: int = 2,
    prefix: str = "cap",
) -> QuiltedSurface:
    """Two incoming points with end labels (L0, L1) and (L1, L0)"""
    return band([label], [L0, L1], "cap", modulus=modulus, prefix=prefix)


def cup(
    L0: LabelLike = "L0",
    L1: LabelLike = "L1",
    label: PatchLabel = PatchLabel("M", 2),
    modulus: int = 2,
    prefix: str = "cup",
) -> QuiltedSurface:
    """Two outgoing points with end labels (L0, L1) and (L1, L0)"""
    return band([label], [L0, L1], "cup", modulus=modulus, prefix=prefix)


def disk(
    L: LabelLike = "L",
    label: PatchLabel = PatchLabel("M", 2),
    modulus: int = 2,
    patch_id: str = "d",
) -> QuiltedSurface:
    p = Patch(patch_id, label, (BoundaryCircle("c"),))
    return QuiltedSurface(
        modulus=modulus,
        patches=(p,),
        boundary=((Side(patch_id, "c"), _boundary_label(L)),),
    )


def annulus(
    L0: LabelLike = "L0",
    L1: LabelLike = "L1",
    label: PatchLabel = PatchLabel("M", 2),
    modulus: int = 2,
    patch_id: str = "a",
) -> QuiltedSurface:
    p = Patch(patch_id, label, (BoundaryCircle("c0"), BoundaryCircle("c1")))
    return QuiltedSurface(
        modulus=modulus,
        patches=(p,),
        boundary=(
            (Side(patch_id, "c0"), _boundary_label(L0)),
            (Side(patch_id, "c1"), _boundary_label(L1)),
        ),
    )
