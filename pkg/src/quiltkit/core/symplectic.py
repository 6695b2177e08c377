"""Linear symplectic algebra over the rationals.

Spaces carry an explicit antisymmetric form; subspaces are stored in reduced column
echelon form so that dataclass equality is equality of spans. A correspondence from
V0 to V1 is a Lagrangian subspace of the product V0^- x V1, in the coordinate order
(V0 first, then V1).
"""

from dataclasses import dataclass
from typing import Optional

from sympy import ImmutableMatrix, Rational

from quiltkit.core.linalg import (
    block_diagonal,
    column_echelon,
    column_list,
    hstack,
    identity,
    nullspace,
    rank,
    vstack,
)
from quiltkit.shared.errors import (
    DimensionMismatch,
    NotLagrangian,
    NotSymplectic,
    SpaceMismatch,
)


@dataclass(frozen=True)
class SymplecticSpace:
    """A rational vector space with a nondegenerate antisymmetric form"""

    form: ImmutableMatrix

    def __post_init__(self) -> None:
        form = ImmutableMatrix(self.form)
        if form.rows != form.cols:
            raise DimensionMismatch(f"Form must be square, got {form.shape}")
        if form.rows % 2:
            raise NotSymplectic(f"Odd dimension {form.rows}")
        if form.T != -form:
            raise NotSymplectic("Form is not antisymmetric")
        if form.rows and form.det() == 0:
            raise NotSymplectic("Form is degenerate")
        object.__setattr__(self, "form", form)

    @property
    def dim(self) -> int:
        return self.form.rows

    @property
    def half_dim(self) -> int:
        return self.form.rows // 2

    def omega(self, x: ImmutableMatrix, y: ImmutableMatrix) -> Rational:
        return (x.T * self.form * y)[0, 0]


def standard_space(n: int) -> SymplecticSpace:
    """R^{2n} in interleaved coordinates (p1, q1, ..., pn, qn)"""
    if n < 0:
        raise DimensionMismatch(f"Negative half dimension {n}")
    block = ImmutableMatrix([[0, 1], [-1, 0]])
    return SymplecticSpace(block_diagonal(*([block] * n)))


POINT = standard_space(0)


def dual_space(V: SymplecticSpace) -> SymplecticSpace:
    return SymplecticSpace(-V.form)


def product_space(V0: SymplecticSpace, V1: SymplecticSpace) -> SymplecticSpace:
    return SymplecticSpace(block_diagonal(V0.form, V1.form))


def is_lagrangian(basis: ImmutableMatrix, V: SymplecticSpace) -> bool:
    if basis.rows != V.dim:
        raise DimensionMismatch(f"Basis has {basis.rows} rows, space has dim {V.dim}")
    if rank(basis) != V.half_dim:
        return False
    return all(x == 0 for x in basis.T * V.form * basis)


@dataclass(frozen=True)
class LagrangianSubspace:
    space: SymplecticSpace
    basis: ImmutableMatrix

    def __post_init__(self) -> None:
        basis = ImmutableMatrix(self.basis)
        if not is_lagrangian(basis, self.space):
            raise NotLagrangian("Basis does not span a Lagrangian subspace")
        object.__setattr__(self, "basis", column_echelon(basis))

    @property
    def dim(self) -> int:
        return self.basis.cols


@dataclass(frozen=True)
class LagrangianCorrespondence:
    source: SymplecticSpace
    target: SymplecticSpace
    subspace: LagrangianSubspace

    def __post_init__(self) -> None:
        if self.subspace.space != product_space(dual_space(self.source), self.target):
            raise SpaceMismatch("Correspondence subspace is not in source^- x target")

    @property
    def basis(self) -> ImmutableMatrix:
        return self.subspace.basis


@dataclass(frozen=True)
class CompositionResult:
    transverse: bool
    embedded: bool
    kernel_dim: int
    composition: Optional[LagrangianCorrespondence] = None


def correspondence(
    source: SymplecticSpace, target: SymplecticSpace, basis: ImmutableMatrix
) -> LagrangianCorrespondence:
    space = product_space(dual_space(source), target)
    return LagrangianCorrespondence(source, target, LagrangianSubspace(space, basis))


def diagonal(V: SymplecticSpace) -> LagrangianCorrespondence:
    eye = identity(V.dim)
    return correspondence(V, V, vstack(eye, eye))


def transpose(L01: LagrangianCorrespondence) -> LagrangianCorrespondence:
    s = L01.source.dim
    basis = L01.basis
    return correspondence(L01.target, L01.source, vstack(basis[s:, :], basis[:s, :]))


def is_symplectic(A: ImmutableMatrix, V: SymplecticSpace) -> bool:
    A = ImmutableMatrix(A)
    if A.shape != (V.dim, V.dim):
        return False
    return A.T * V.form * A == V.form


def graph(A: ImmutableMatrix, V: SymplecticSpace) -> LagrangianCorrespondence:
    """The graph {(x, Ax)} of a linear symplectic map of V"""
    A = ImmutableMatrix(A)
    if not is_symplectic(A, V):
        raise NotSymplectic("A^T w A != w")
    return correspondence(V, V, vstack(identity(V.dim), A))


def split_correspondence(
    L0: LagrangianSubspace, L1: LagrangianSubspace
) -> LagrangianCorrespondence:
    """L0 x L1 as a correspondence from the space of L0 to the space of L1"""
    return correspondence(L0.space, L1.space, block_diagonal(L0.basis, L1.basis))


def lagrangian_as_correspondence(
    L: LagrangianSubspace, incoming: bool = False
) -> LagrangianCorrespondence:
    """View L as pt -> V, or as V -> pt when ``incoming``"""
    if incoming:
        return correspondence(L.space, POINT, L.basis)
    return correspondence(POINT, L.space, L.basis)


def correspondence_as_lagrangian(L01: LagrangianCorrespondence) -> LagrangianSubspace:
    """Inverse of lagrangian_as_correspondence for correspondences with a point end"""
    if L01.source.dim == 0:
        return LagrangianSubspace(L01.target, L01.basis)
    if L01.target.dim == 0:
        return LagrangianSubspace(L01.source, L01.basis)
    raise SpaceMismatch("Correspondence has no point end")


def are_transverse(L: LagrangianSubspace, K: LagrangianSubspace) -> bool:
    if L.space != K.space:
        raise SpaceMismatch("Lagrangians live in different spaces")
    return rank(hstack(L.basis, K.basis)) == L.space.dim


def intersection_dim(L: LagrangianSubspace, K: LagrangianSubspace) -> int:
    if L.space != K.space:
        raise SpaceMismatch("Lagrangians live in different spaces")
    return L.dim + K.dim - rank(hstack(L.basis, K.basis))


def compose(L01: LagrangianCorrespondence, L12: LagrangianCorrespondence) -> CompositionResult:
    """Geometric composition L01 o L12 with transversality and embeddedness tests"""
    if L01.target != L12.source:
        raise SpaceMismatch("Middle spaces differ")
    d0, d1, d2 = L01.source.dim, L01.target.dim, L12.target.dim
    X, Y = L01.basis, L12.basis
    X0, X1 = X[:d0, :], X[d0:, :]
    Y1, Y2 = Y[:d1, :], Y[d1:, :]

    total = d0 + 2 * d1 + d2
    zeros = ImmutableMatrix.zeros
    outer = [
        vstack(identity(d0), zeros(2 * d1 + d2, d0)),
        vstack(zeros(d0, d1), identity(d1), identity(d1), zeros(d2, d1)),
        vstack(zeros(d0 + 2 * d1, d2), identity(d2)),
    ]
    transverse = rank(hstack(block_diagonal(X, Y), *outer)) == total

    fiber = nullspace(hstack(X1, -Y1))
    if fiber.cols:
        image = vstack(X0 * fiber[: X.cols, :], Y2 * fiber[X.cols :, :])
    else:
        image = zeros(d0 + d2, 0)
    kernel_dim = fiber.cols - rank(image)
    embedded = transverse and kernel_dim == 0
    composite = correspondence(L01.source, L12.target, image) if embedded else None
    return CompositionResult(transverse, embedded, kernel_dim, composite)


def darboux_basis(V: SymplecticSpace) -> ImmutableMatrix:
    """Columns e1, f1, e2, f2, ... with w(ei, fi) = 1 and all other pairings zero"""
    remaining = column_list(identity(V.dim))
    ordered = []
    while remaining:
        e = remaining.pop(0)
        idx = next(i for i, v in enumerate(remaining) if V.omega(e, v) != 0)
        f = remaining.pop(idx)
        f = f / V.omega(e, f)
        remaining = [v - V.omega(v, f) * e + V.omega(v, e) * f for v in remaining]
        ordered += [e, f]
    if not ordered:
        return ImmutableMatrix.zeros(0, 0)
    return hstack(*ordered)


def complex_structure(V: SymplecticSpace) -> ImmutableMatrix:
    """A rational complex structure J compatible with the form: w(x, Jx) > 0 for x != 0"""
    if V.dim == 0:
        return ImmutableMatrix.zeros(0, 0)
    P = darboux_basis(V)
    J0 = standard_space(V.half_dim).form.T
    return ImmutableMatrix(P * J0 * P.inv())


def apply(A: ImmutableMatrix, L: LagrangianSubspace) -> LagrangianSubspace:
    """Image of L under a linear map preserving the form up to sign"""
    return LagrangianSubspace(L.space, A * L.basis)
