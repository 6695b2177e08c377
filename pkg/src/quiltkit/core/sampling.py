"""Seeded random data for property checks and demos"""

import random
from typing import List, Optional, Sequence

import numpy as np
from sympy import ImmutableMatrix, Rational

from quiltkit.core.builders import band
from quiltkit.core.graded import (
    DualityDatum,
    GradedMap,
    GradedModule,
    Generator,
    module,
)
from quiltkit.core.linalg import hstack, identity
from quiltkit.core.quilt import PatchLabel, QuiltedSurface, disjoint_union
from quiltkit.core.symplectic import (
    LagrangianSubspace,
    SymplecticSpace,
    darboux_basis,
)

COEFFICIENTS = (Rational(1), Rational(-1), Rational(2), Rational(-2), Rational(1, 2))


def random_vector(rng: random.Random, dim: int, bound: int = 2) -> ImmutableMatrix:
    while True:
        v = ImmutableMatrix([rng.randint(-bound, bound) for _ in range(dim)])
        if any(v):
            return v


def random_symplectic(rng: random.Random, V: SymplecticSpace, steps: int = 4) -> ImmutableMatrix:
    """Product of symplectic transvections x -> x + c w(v, x) v"""
    A = identity(V.dim)
    for _ in range(steps):
        v = random_vector(rng, V.dim)
        c = rng.choice(COEFFICIENTS)
        A = ImmutableMatrix((identity(V.dim) + c * v * v.T * V.form) * A)
    return A


def random_lagrangian(rng: random.Random, V: SymplecticSpace) -> LagrangianSubspace:
    P = darboux_basis(V)
    base = hstack(*(P[:, 2 * i] for i in range(V.half_dim)))
    return LagrangianSubspace(V, random_symplectic(rng, V) * base)


def slope_line(
    slope: Optional[Rational], V: Optional[SymplecticSpace] = None
) -> LagrangianSubspace:
    """The line of the given slope in the plane; None is the vertical line"""
    V = V or SymplecticSpace(ImmutableMatrix([[0, 1], [-1, 0]]))
    direction = [0, 1] if slope is None else [1, Rational(slope)]
    return LagrangianSubspace(V, ImmutableMatrix(direction))


def random_module(
    rng: random.Random, modulus: int, ring: str, rank: Optional[int] = None, name: str = "C"
) -> GradedModule:
    rank = rng.randint(1, 4) if rank is None else rank
    return module(modulus, ring, [rng.randrange(modulus) for _ in range(rank)], name)


def random_graded_map(
    rng: random.Random,
    source: GradedModule,
    target: GradedModule,
    degree: int,
    bound: int = 2,
) -> GradedMap:
    """Random entries wherever the degrees allow a nonzero one"""
    N = source.modulus
    matrix = np.zeros((target.rank, source.rank), dtype=object)
    for i, y in enumerate(target.basis):
        for j, x in enumerate(source.basis):
            if (x.degree + degree - y.degree) % N == 0:
                matrix[i, j] = rng.randint(-bound, bound)
    return GradedMap(source, target, degree, matrix)


def random_complex(
    rng: random.Random, modulus: int, ring: str, pairs: int = 2, singles: int = 1
) -> GradedMap:
    """A differential built from pieces x -> c y and isolated generators, shuffled"""
    basis: List[Generator] = []
    arrows = []
    for k in range(pairs):
        deg = rng.randrange(modulus)
        c = rng.choice((1, 2, 3, -1))
        basis += [Generator(f"x{k}", deg), Generator(f"y{k}", deg + 1)]
        arrows.append((f"x{k}", f"y{k}", c))
    for k in range(singles):
        basis.append(Generator(f"z{k}", rng.randrange(modulus)))
    rng.shuffle(basis)
    m = GradedModule(modulus, ring, tuple(basis), name="C")
    index = {g.name: i for i, g in enumerate(m.basis)}
    matrix = np.zeros((m.rank, m.rank), dtype=object)
    for x, y, c in arrows:
        matrix[index[y], index[x]] = c
    return GradedMap(m, m, 1, matrix)


def random_duality(
    rng: random.Random, modulus: int, ring: str, rank: Optional[int] = None, n: int = 1
) -> DualityDatum:
    C = random_module(rng, modulus, ring, rank)
    D = DualityDatum.standard(C, n)
    signs = tuple(rng.choice((1, -1)) for _ in range(C.rank))
    return DualityDatum(D.module, D.dual, n, signs)


PATCH_LABELS = (PatchLabel("M", 2), PatchLabel("N", 4))
BOUNDARY_NAMES = ("L0", "L1")
SEAM_NAMES = ("A", "B", "A^t")


def random_band(
    rng: random.Random,
    modulus: int,
    max_patches: int = 2,
    prefix: str = "p",
    kinds: Sequence[str] = ("strip", "cap", "cup"),
) -> QuiltedSurface:
    r = rng.randint(0, max_patches - 1)
    cyclic = r > 0 and rng.random() < 0.3
    labels = []
    if not cyclic:
        labels.append(rng.choice(BOUNDARY_NAMES))
    labels += [rng.choice(SEAM_NAMES) for _ in range(r if not cyclic else r + 1)]
    if not cyclic:
        labels.append(rng.choice(BOUNDARY_NAMES))
    patches = [rng.choice(PATCH_LABELS) for _ in range(r + 1)]
    return band(patches, labels, rng.choice(list(kinds)), cyclic, modulus, prefix)


def random_quilt(
    rng: random.Random, modulus: int, max_patches: int = 4, max_parts: int = 3
) -> QuiltedSurface:
    """Disjoint union of random strips, caps and cups, quilted or not"""
    q = QuiltedSurface(modulus=modulus)
    used = 0
    for k in range(rng.randint(1, max_parts)):
        room = max_patches - used
        if room <= 0:
            break
        part = random_band(rng, modulus, min(2, room), prefix=f"q{k}_")
        used += len(part.patches)
        q = disjoint_union(q, part)
    return q
