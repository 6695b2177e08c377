"""Z/N-graded free modules over Z or Z/2 and the maps between them.

Matrices are numpy object arrays of Python ints, columns indexed by the source basis and
rows by the target basis. Tensor products follow the Koszul sign rule

    (f1 (x) f2)(x1 (x) x2) = (-1)^{|f2||x1|} f1(x1) (x) f2(x2).
"""

import itertools
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from sympy import Matrix
from sympy.polys.domains import GF, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import invariant_factors

from quiltkit.shared.config import RINGS
from quiltkit.shared.errors import (
    DegreeMismatch,
    DimensionMismatch,
    FactorMismatch,
    ModulusMismatch,
    NonzeroDegree,
    NotAComplex,
    NotEndomorphism,
    NotHomogeneous,
    RingMismatch,
)


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int


@dataclass(frozen=True)
class GradedModule:
    """A free module with homogeneous basis; ``factors`` lists tensor factors, if any"""

    modulus: int
    ring: str
    basis: Tuple[Generator, ...]
    factors: Optional[Tuple["GradedModule", ...]] = None
    name: str = ""

    def __post_init__(self) -> None:
        if self.modulus <= 0 or self.modulus % 2:
            raise ModulusMismatch(f"Grading modulus {self.modulus} is not even and positive")
        if self.ring not in RINGS:
            raise RingMismatch(f"Unknown ring {self.ring}")
        basis = tuple(Generator(g.name, g.degree % self.modulus) for g in self.basis)
        object.__setattr__(self, "basis", basis)

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def degrees(self) -> List[int]:
        return [g.degree for g in self.basis]

    @property
    def factor_list(self) -> Tuple["GradedModule", ...]:
        return (self,) if self.factors is None else self.factors


def module(modulus: int, ring: str, degrees: Sequence[int], name: str = "C") -> GradedModule:
    basis = tuple(Generator(f"{name}{i}", d) for i, d in enumerate(degrees))
    return GradedModule(modulus, ring, basis, name=name)


def unit_module(modulus: int, ring: str) -> GradedModule:
    """The ground ring in degree 0, an empty tensor product"""
    return GradedModule(modulus, ring, (Generator("1", 0),), factors=(), name="1")


def _check_compatible(*modules: GradedModule) -> None:
    moduli = {m.modulus for m in modules}
    if len(moduli) > 1:
        raise ModulusMismatch(f"Grading moduli differ: {sorted(moduli)}")
    rings = {m.ring for m in modules}
    if len(rings) > 1:
        raise RingMismatch(f"Rings differ: {sorted(rings)}")


def tensor_module(*modules: GradedModule) -> GradedModule:
    if not modules:
        raise DimensionMismatch("Empty tensor product needs a modulus and ring")
    _check_compatible(*modules)
    factors = tuple(f for m in modules for f in m.factor_list)
    if len(factors) == 1:
        return factors[0]
    modulus, ring = modules[0].modulus, modules[0].ring
    if not factors:
        return unit_module(modulus, ring)
    basis = tuple(
        Generator("⊗".join(g.name for g in combo), sum(g.degree for g in combo))
        for combo in itertools.product(*(f.basis for f in factors))
    )
    return GradedModule(modulus, ring, basis, factors, "⊗".join(f.name for f in factors))


def _normalize(matrix, shape: Tuple[int, int], ring: str) -> np.ndarray:
    m = np.array(matrix, dtype=object)
    if m.size != shape[0] * shape[1]:
        raise DimensionMismatch(f"Matrix shape {m.shape} does not fit {shape[0]}x{shape[1]}")
    m = m.reshape(shape)
    if m.size:
        m = np.vectorize(int, otypes=[object])(m)
    if ring == "z2":
        m = m % 2
    return m


class GradedMap:
    """A homogeneous module map of a fixed degree"""

    def __init__(
        self, source: GradedModule, target: GradedModule, degree: int, matrix=None
    ) -> None:
        _check_compatible(source, target)
        self.source = source
        self.target = target
        self.degree = degree % source.modulus
        if matrix is None:
            matrix = np.zeros((target.rank, source.rank), dtype=object)
        m = _normalize(matrix, (target.rank, source.rank), source.ring)
        for i, j in zip(*np.nonzero(m != 0)):
            if (source.basis[j].degree + self.degree - target.basis[i].degree) % source.modulus:
                raise NotHomogeneous(
                    f"Entry ({i}, {j}) maps {source.basis[j].name} outside degree {self.degree}"
                )
        self.matrix = m

    @property
    def modulus(self) -> int:
        return self.source.modulus

    @property
    def ring(self) -> str:
        return self.source.ring

    def __eq__(self, other) -> bool:
        if not isinstance(other, GradedMap):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.degree == other.degree
            and np.array_equal(self.matrix, other.matrix)
        )

    def __repr__(self) -> str:
        return f"GradedMap({self.source.name} -> {self.target.name}, degree={self.degree})"

    def is_zero(self) -> bool:
        return not np.any(self.matrix != 0)


def identity_map(m: GradedModule) -> GradedMap:
    return GradedMap(m, m, 0, np.identity(m.rank, dtype=int).astype(object))


def zero_map(source: GradedModule, target: GradedModule, degree: int = 0) -> GradedMap:
    return GradedMap(source, target, degree)


def compose(g: GradedMap, f: GradedMap) -> GradedMap:
    """g after f"""
    if f.target != g.source:
        raise FactorMismatch(f"Cannot compose {g!r} after {f!r}")
    return GradedMap(f.source, g.target, f.degree + g.degree, g.matrix.dot(f.matrix))


def add(f: GradedMap, g: GradedMap) -> GradedMap:
    if f.source != g.source or f.target != g.target:
        raise FactorMismatch("Summands have different source or target")
    if f.degree != g.degree:
        raise DegreeMismatch(f"Summands have degrees {f.degree} and {g.degree}")
    return GradedMap(f.source, f.target, f.degree, f.matrix + g.matrix)


def scale(f: GradedMap, c: int) -> GradedMap:
    return GradedMap(f.source, f.target, f.degree, f.matrix * int(c))


def _column_signs(f1: GradedMap, f2: GradedMap) -> np.ndarray:
    signs = [
        -1 if (f2.degree * x1.degree) % 2 else 1
        for x1 in f1.source.basis
        for _ in f2.source.basis
    ]
    return np.array(signs, dtype=object)


def tensor_map(*maps: GradedMap) -> GradedMap:
    if not maps:
        raise DimensionMismatch("Empty tensor product of maps")
    result = maps[0]
    for f in maps[1:]:
        _check_compatible(result.source, f.source)
        matrix = np.kron(result.matrix, f.matrix) * _column_signs(result, f)
        result = GradedMap(
            tensor_module(result.source, f.source),
            tensor_module(result.target, f.target),
            result.degree + f.degree,
            matrix,
        )
    return result


def koszul_permutation(m: GradedModule, perm: Sequence[int]) -> GradedMap:
    """Reorder the tensor factors of m: factor a moves to position perm[a]"""
    factors = m.factor_list
    k = len(factors)
    if sorted(perm) != list(range(k)):
        raise FactorMismatch(f"{list(perm)} is not a permutation of {k} factors")
    target_factors = [None] * k
    for a, dest in enumerate(perm):
        target_factors[dest] = factors[a]
    target = tensor_module(*target_factors) if k else m
    ranks = [f.rank for f in factors]
    target_ranks = [f.rank for f in target_factors]
    inversions = [(a, b) for a in range(k) for b in range(a + 1, k) if perm[a] > perm[b]]
    matrix = np.zeros((target.rank, m.rank), dtype=object)
    for col, idx in enumerate(itertools.product(*(range(r) for r in ranks))):
        degrees = [factors[a].basis[i].degree for a, i in enumerate(idx)]
        exponent = sum(degrees[a] * degrees[b] for a, b in inversions)
        moved = [0] * k
        for a, i in enumerate(idx):
            moved[perm[a]] = i
        row = int(np.ravel_multi_index(moved, target_ranks)) if k else 0
        matrix[row, col] = -1 if exponent % 2 else 1
    return GradedMap(m, target, 0, matrix)


def swap(m1: GradedModule, m2: GradedModule) -> GradedMap:
    return koszul_permutation(tensor_module(m1, m2), [1, 0])


def graded_trace(f: GradedMap) -> int:
    """Supertrace: sum of (-1)^{|x_i|} f_ii"""
    if f.source != f.target:
        raise NotEndomorphism(f"{f!r} is not an endomorphism")
    if f.degree:
        raise NonzeroDegree(f"Trace of a map of degree {f.degree}")
    total = sum(
        (-1 if g.degree % 2 else 1) * f.matrix[i, i] for i, g in enumerate(f.source.basis)
    )
    return int(total) % 2 if f.ring == "z2" else int(total)


@dataclass(frozen=True)
class DualityDatum:
    """A module C, a dual C' with |x'_i| = n - |x_i|, and pairing signs"""

    module: GradedModule
    dual: GradedModule
    n: int
    signs: Tuple[int, ...]

    def __post_init__(self) -> None:
        _check_compatible(self.module, self.dual)
        if self.module.rank != self.dual.rank or len(self.signs) != self.module.rank:
            raise DimensionMismatch("Module, dual and signs have different sizes")
        N = self.module.modulus
        for x, xd in zip(self.module.basis, self.dual.basis):
            if (x.degree + xd.degree - self.n) % N:
                raise DegreeMismatch(f"|{x.name}| + |{xd.name}| != {self.n} mod {N}")
        if any(s not in (1, -1) for s in self.signs):
            raise DegreeMismatch("Pairing signs must be +1 or -1")

    @classmethod
    def standard(cls, module: GradedModule, n: int, name: Optional[str] = None) -> "DualityDatum":
        basis = tuple(Generator(f"{g.name}'", n - g.degree) for g in module.basis)
        dual = GradedModule(module.modulus, module.ring, basis, name=name or f"{module.name}'")
        return cls(module, dual, n, (1,) * module.rank)

    @classmethod
    def reversed_pair(
        cls, module: GradedModule, n: int, name: Optional[str] = None
    ) -> "DualityDatum":
        """The datum pairing the standard dual of ``module`` with ``module`` itself"""
        return cls.standard(module, n, name).reversed()

    def reversed(self) -> "DualityDatum":
        """C' paired with C, with signs that make the caps agree through the swap"""
        signs = []
        for x, xd, eps in zip(self.module.basis, self.dual.basis, self.signs):
            exponent = x.degree * xd.degree + x.degree + xd.degree
            signs.append(-eps if exponent % 2 else eps)
        return DualityDatum(self.dual, self.module, self.n, tuple(signs))


def cap_map(D: DualityDatum) -> GradedMap:
    """C (x) C' -> 1, x_i (x) x'_j |-> (-1)^{|x_i|} eps_i delta_ij"""
    source = tensor_module(D.module, D.dual)
    unit = unit_module(D.module.modulus, D.module.ring)
    r = D.module.rank
    matrix = np.zeros((1, r * r), dtype=object)
    for i, (x, eps) in enumerate(zip(D.module.basis, D.signs)):
        matrix[0, i * r + i] = -eps if x.degree % 2 else eps
    return GradedMap(source, unit, -D.n, matrix)


def cup_map(D: DualityDatum) -> GradedMap:
    """1 -> C (x) C', 1 |-> sum eps_i x_i (x) x'_i"""
    target = tensor_module(D.module, D.dual)
    unit = unit_module(D.module.modulus, D.module.ring)
    r = D.module.rank
    matrix = np.zeros((r * r, 1), dtype=object)
    for i, eps in enumerate(D.signs):
        matrix[i * r + i, 0] = eps
    return GradedMap(unit, target, D.n, matrix)


def _move(k: int, source: int, dest: int) -> List[int]:
    """Permutation of k factors moving factor ``source`` to ``dest``, others keep order"""
    order = [a for a in range(k) if a != source]
    order.insert(dest, source)
    perm = [0] * k
    for position, a in enumerate(order):
        perm[a] = position
    return perm


def algebraic_trace(f: GradedMap, D: DualityDatum, incoming: int, outgoing: int) -> GradedMap:
    """Contract input factor ``incoming`` of f against output factor ``outgoing``.

    The composite is cup, a Koszul reordering, f (x) 1_{C'}, a reordering and cap. Both
    contracted factors must equal the module of D.
    """
    ins, outs = f.source.factor_list, f.target.factor_list
    if not (0 <= incoming < len(ins)) or not (0 <= outgoing < len(outs)):
        raise FactorMismatch(f"No factor pair ({incoming}, {outgoing}) on {f!r}")
    C, Cd = D.module, D.dual
    if ins[incoming] != C or outs[outgoing] != C:
        raise FactorMismatch("Contracted factors differ from the duality module")
    rest_in = [m for a, m in enumerate(ins) if a != incoming]
    rest_out = [m for b, m in enumerate(outs) if b != outgoing]
    unit = unit_module(C.modulus, C.ring)
    X = tensor_module(*rest_in) if rest_in else unit

    step1 = tensor_map(cup_map(D), identity_map(X))
    # C, C', X_1..X_k  ->  X_1..C..X_k, C'
    k = len(rest_in) + 2
    perm = [0] * k
    perm[0] = incoming
    perm[1] = k - 1
    for a in range(len(rest_in)):
        perm[a + 2] = a if a < incoming else a + 1
    step2 = koszul_permutation(step1.target, perm)
    step3 = tensor_map(f, identity_map(Cd))
    # Y_1..C..Y_l, C'  ->  Y_1..Y_l, C, C'
    step4 = koszul_permutation(step3.target, _move(len(outs) + 1, outgoing, len(outs) - 1))
    Y = tensor_module(*rest_out) if rest_out else unit
    step5 = tensor_map(identity_map(Y), cap_map(D))

    result = step1
    for step in (step2, step3, step4, step5):
        result = compose(step, result)
    return result


def graded_trace_via_duality(f: GradedMap, D: DualityDatum) -> int:
    """The scalar of the one-factor algebraic trace"""
    return int(algebraic_trace(f, D, 0, 0).matrix[0, 0])


@dataclass(frozen=True)
class CohomologyGroup:
    degree: int
    rank: int
    torsion: Tuple[int, ...] = ()


def _block(d: GradedMap, k: int) -> Matrix:
    rows = [i for i, g in enumerate(d.target.basis) if g.degree == (k + 1) % d.modulus]
    cols = [j for j, g in enumerate(d.source.basis) if g.degree == k % d.modulus]
    return Matrix(len(rows), len(cols), lambda i, j: int(d.matrix[rows[i], cols[j]]))


def _rank(block: Matrix, ring: str) -> int:
    if block.rows == 0 or block.cols == 0:
        return 0
    dm = DomainMatrix.from_Matrix(block)
    return dm.convert_to(GF(2) if ring == "z2" else ZZ.get_field()).rank()


def _torsion(block: Matrix) -> Tuple[int, ...]:
    if block.rows == 0 or block.cols == 0:
        return ()
    factors = invariant_factors(DomainMatrix.from_Matrix(block).convert_to(ZZ))
    return tuple(sorted(abs(int(f)) for f in factors if abs(int(f)) > 1))


def is_complex(d: GradedMap) -> bool:
    return d.source == d.target and d.degree == 1 % d.modulus and compose(d, d).is_zero()


def cohomology(d: GradedMap) -> Dict[int, CohomologyGroup]:
    """Cohomology of (C, d) in each degree of Z/N, with torsion over Z"""
    if d.source != d.target or d.degree != 1 % d.modulus:
        raise NotAComplex(f"{d!r} is not a degree-one endomorphism")
    if not compose(d, d).is_zero():
        raise NotAComplex("d o d != 0")
    N = d.modulus
    blocks = {k: _block(d, k) for k in range(N)}
    ranks = {k: _rank(blocks[k], d.ring) for k in range(N)}
    dims = {k: sum(1 for g in d.source.basis if g.degree == k) for k in range(N)}
    groups = {}
    for k in range(N):
        torsion = () if d.ring == "z2" else _torsion(blocks[(k - 1) % N])
        groups[k] = CohomologyGroup(k, dims[k] - ranks[k] - ranks[(k - 1) % N], torsion)
    return groups


def is_chain_map(f: GradedMap, d1: GradedMap, d2: GradedMap) -> bool:
    """d2 f = (-1)^{|f|} f d1"""
    if f.source != d1.source or f.target != d2.source:
        raise FactorMismatch("Map and differentials do not line up")
    lhs = compose(d2, f)
    rhs = compose(f, d1)
    sign = -1 if f.degree % 2 else 1
    diff = lhs.matrix - sign * rhs.matrix
    if f.ring == "z2":
        diff = diff % 2
    return not np.any(diff != 0)


def sub(f: GradedMap, g: GradedMap) -> GradedMap:
    return add(f, scale(g, -1))


def euler_characteristic(m: GradedModule) -> int:
    """Even generators minus odd generators"""
    return sum(-1 if g.degree % 2 else 1 for g in m.basis)


@dataclass(frozen=True)
class ChainComplex:
    """A graded module with a degree-one differential squaring to zero"""

    differential: GradedMap

    def __post_init__(self) -> None:
        if not is_complex(self.differential):
            raise NotAComplex(f"{self.differential!r} does not square to zero in degree one")

    @property
    def module(self) -> GradedModule:
        return self.differential.source

    def cohomology(self) -> Dict[int, CohomologyGroup]:
        return cohomology(self.differential)

    def euler_characteristic(self) -> int:
        return euler_characteristic(self.module)
