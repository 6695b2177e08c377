"""Maslov-type indices computed exactly from Kashiwara triple indices.

A discrete loop is a cyclic list of Lagrangian samples. Consecutive samples are joined by
the short path determined by a compatible complex structure J; the loop index is

    1/2 * sum_i [ tau(J l_i, l_i, l_{i+1}) - tau(W, l_i, l_{i+1}) ]

for any reference Lagrangian W. The W terms cancel around the loop, and a half-turn in
the plane (slopes 0, 1, oo, -1) has index +1.
"""

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from sympy import ImmutableMatrix, Rational

from quiltkit.core.linalg import block_diagonal, signature
from quiltkit.core.symplectic import (
    LagrangianSubspace,
    SymplecticSpace,
    apply,
    are_transverse,
    complex_structure,
)
from quiltkit.shared.errors import NonIntegralIndex, SpaceMismatch


@dataclass(frozen=True)
class LagrangianLoop:
    space: SymplecticSpace
    samples: Tuple[LagrangianSubspace, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "samples", tuple(self.samples))
        if not self.samples:
            raise SpaceMismatch("A loop needs at least one sample")
        if any(s.space != self.space for s in self.samples):
            raise SpaceMismatch("Loop samples live in different spaces")

    def reversed(self) -> "LagrangianLoop":
        return LagrangianLoop(self.space, tuple(reversed(self.samples)))

    def rotated(self, k: int) -> "LagrangianLoop":
        k %= len(self.samples)
        return LagrangianLoop(self.space, self.samples[k:] + self.samples[:k])


@dataclass(frozen=True)
class BoundaryDatum:
    loop: LagrangianLoop
    oriented: bool = False


@dataclass(frozen=True)
class SurfaceIndexData:
    rank: int
    euler: int
    deg_closed: int = 0
    boundary_indices: Tuple[int, ...] = field(default_factory=tuple)
    seam_indices: Tuple[int, ...] = field(default_factory=tuple)


def kashiwara_index(
    L1: LagrangianSubspace, L2: LagrangianSubspace, L3: LagrangianSubspace
) -> int:
    """Signature of w(x1,x2) + w(x2,x3) + w(x3,x1) on L1 + L2 + L3"""
    if not (L1.space == L2.space == L3.space):
        raise SpaceMismatch("Triple index needs three Lagrangians of one space")
    form = L1.space.form
    B = [L1.basis, L2.basis, L3.basis]
    sizes = [b.cols for b in B]
    total = sum(sizes)
    offsets = [0, sizes[0], sizes[0] + sizes[1]]
    gram = [[Rational(0)] * total for _ in range(total)]
    for i, j in ((0, 1), (1, 2), (2, 0)):
        half = (B[i].T * form * B[j]) / 2
        for a in range(sizes[i]):
            for b in range(sizes[j]):
                gram[offsets[i] + a][offsets[j] + b] += half[a, b]
                gram[offsets[j] + b][offsets[i] + a] += half[a, b]
    if not total:
        return 0
    return signature(ImmutableMatrix(gram))


def _step_index(J: ImmutableMatrix, a: LagrangianSubspace, b: LagrangianSubspace) -> int:
    """Kashiwara reading of the short path from a to b; equal at both endpoints or ambiguous"""
    Ja, Jb = apply(J, a), apply(J, b)
    if not (are_transverse(b, Ja) and are_transverse(a, Jb)):
        raise NonIntegralIndex("Consecutive samples are too far apart to fix a short path")
    start = kashiwara_index(Ja, a, b)
    if kashiwara_index(Jb, a, b) != start:
        raise NonIntegralIndex("Short path between consecutive samples is not determined")
    return start


def maslov_loop(loop: LagrangianLoop, reference: Optional[LagrangianSubspace] = None) -> int:
    if reference is None:
        reference = loop.samples[0]
    if reference.space != loop.space:
        raise SpaceMismatch("Reference lives in a different space")
    J = complex_structure(loop.space)
    samples = loop.samples
    total = 0
    for i, current in enumerate(samples):
        following = samples[(i + 1) % len(samples)]
        total += _step_index(J, current, following)
        total -= kashiwara_index(reference, current, following)
    if total % 2:
        raise NonIntegralIndex(f"Half-sum {total}/2 is not an integer")
    return total // 2


def loop_parity_check(
    datum: BoundaryDatum, reference: Optional[LagrangianSubspace] = None
) -> bool:
    if not datum.oriented:
        return True
    return maslov_loop(datum.loop, reference) % 2 == 0


def boundary_maslov(data: Sequence[Tuple[LagrangianLoop, LagrangianSubspace]]) -> List[int]:
    """Loop indices of several boundary data, in order"""
    return [maslov_loop(loop, reference) for loop, reference in data]


def topological_index(data: SurfaceIndexData) -> int:
    return data.deg_closed + sum(data.boundary_indices) + sum(data.seam_indices)


def fredholm_index(rank: int, euler: int, top_index: int) -> int:
    return rank * euler + top_index


def fredholm_index_quilt(per_patch: Sequence[Tuple[int, int]], top_index: int) -> int:
    return sum(rank * euler for rank, euler in per_patch) + top_index


def quilt_index(q, top_index: int) -> int:
    """Fredholm index of a quilt, with patch ranks 1/2 dim M_k and Euler characteristics"""
    return fredholm_index_quilt([(p.label.dim // 2, p.euler) for p in q.patches], top_index)


def product_loop(*loops: LagrangianLoop) -> LagrangianLoop:
    """Pointwise direct sum of equally long loops"""
    lengths = {len(lp.samples) for lp in loops}
    if len(lengths) != 1:
        raise SpaceMismatch("Loops of different lengths")
    space = SymplecticSpace(block_diagonal(*(lp.space.form for lp in loops)))
    samples = tuple(
        LagrangianSubspace(space, block_diagonal(*(lp.samples[i].basis for lp in loops)))
        for i in range(lengths.pop())
    )
    return LagrangianLoop(space, samples)
