import itertools
import random

import numpy as np
import pytest

from quiltkit.core.graded import (
    ChainComplex,
    DualityDatum,
    Generator,
    GradedMap,
    GradedModule,
    algebraic_trace,
    cap_map,
    cohomology,
    compose,
    cup_map,
    euler_characteristic,
    graded_trace,
    graded_trace_via_duality,
    identity_map,
    is_chain_map,
    koszul_permutation,
    module,
    scale,
    swap,
    tensor_map,
    tensor_module,
)
from quiltkit.core.sampling import random_complex, random_duality, random_graded_map, random_module
from quiltkit.shared.errors import (
    DegreeMismatch,
    FactorMismatch,
    ModulusMismatch,
    NonzeroDegree,
    NotAComplex,
    NotEndomorphism,
    NotHomogeneous,
    RingMismatch,
)


class TestModules:
    def test_degrees_reduce_mod_n(self):
        assert module(4, "z", [5, -1, 2]).degrees == [1, 3, 2]

    def test_odd_modulus_rejected(self):
        with pytest.raises(ModulusMismatch):
            module(3, "z", [0])

    def test_tensor_flattens_factors(self):
        A, B, C = module(2, "z", [0, 1], "a"), module(2, "z", [1], "b"), module(2, "z", [0], "c")
        m = tensor_module(tensor_module(A, B), C)
        assert m.factor_list == (A, B, C)
        assert m.degrees == [1, 0]

    def test_mixed_rings_rejected(self):
        with pytest.raises(RingMismatch):
            tensor_module(module(2, "z", [0]), module(2, "z2", [0]))

    def test_inhomogeneous_entry(self):
        with pytest.raises(NotHomogeneous):
            GradedMap(module(2, "z", [0]), module(2, "z", [0]), 1, [[1]])


class TestKoszul:
    def test_odd_swap_has_a_sign(self):
        a, b = module(2, "z", [1], "a"), module(2, "z", [1], "b")
        s = swap(a, b)
        assert s.matrix.tolist() == [[-1]]
        assert compose(swap(b, a), s) == identity_map(tensor_module(a, b))

    def test_tensor_of_maps_picks_up_source_degree(self):
        A = module(2, "z", [0, 1], "a")
        f2 = GradedMap(module(2, "z", [0], "b"), module(2, "z", [1], "c"), 1, [[1]])
        assert tensor_map(identity_map(A), f2).matrix.tolist() == [[1, 0], [0, -1]]

    def test_interchange_law(self):
        rng = random.Random(3)
        for _ in range(20):
            A1, A2, B1, B2, C1, C2 = (random_module(rng, 4, "z", 2, x) for x in "ABCDEF")
            g1 = random_graded_map(rng, A1, B1, rng.randrange(4))
            g2 = random_graded_map(rng, A2, B2, rng.randrange(4))
            f1 = random_graded_map(rng, B1, C1, rng.randrange(4))
            f2 = random_graded_map(rng, B2, C2, rng.randrange(4))
            sign = -1 if (f2.degree * g1.degree) % 2 else 1
            lhs = compose(tensor_map(f1, f2), tensor_map(g1, g2))
            assert lhs == scale(tensor_map(compose(f1, g1), compose(f2, g2)), sign)

    def test_permutations_compose(self):
        rng = random.Random(5)
        for _ in range(20):
            m = tensor_module(*(random_module(rng, 2, "z", 2, f"X{i}") for i in range(3)))
            rho, pi = [2, 0, 1], [1, 0, 2]
            first = koszul_permutation(m, rho)
            both = koszul_permutation(m, [pi[rho[a]] for a in range(3)])
            assert both == compose(koszul_permutation(first.target, pi), first)

    def test_not_a_permutation(self):
        m = tensor_module(module(2, "z", [0], "a"), module(2, "z", [0], "b"))
        with pytest.raises(FactorMismatch):
            koszul_permutation(m, [0, 0])


class TestTraces:
    def test_supertrace(self):
        C = module(2, "z", [0, 1, 1])
        f = GradedMap(C, C, 0, np.diag([3, 5, 7]).astype(object))
        assert graded_trace(f) == 3 - 5 - 7
        assert graded_trace(identity_map(C)) == euler_characteristic(C) == -1

    def test_trace_preconditions(self):
        C, E = module(2, "z", [0, 1]), module(2, "z", [0], "E")
        with pytest.raises(NonzeroDegree):
            graded_trace(GradedMap(C, C, 1, [[0, 1], [1, 0]]))
        with pytest.raises(NotEndomorphism):
            graded_trace(GradedMap(C, E, 0, [[1, 0]]))

    def test_trace_of_identity_through_duality(self):
        for degrees, n in (([0, 1, 1], 1), ([0, 2, 3], 2), ([1], 0)):
            C = module(4, "z", degrees)
            D = DualityDatum.standard(C, n)
            assert graded_trace_via_duality(identity_map(C), D) == euler_characteristic(C)

    def test_duality_trace_is_supertrace(self):
        rng = random.Random(7)
        for _ in range(30):
            D = random_duality(rng, 4, "z", rng.randint(1, 3), n=rng.randrange(4))
            f = random_graded_map(rng, D.module, D.module, 0)
            assert graded_trace_via_duality(f, D) == graded_trace(f)

    def test_partial_trace_of_identity(self):
        C, A = module(2, "z", [0, 1, 1]), module(2, "z", [0, 0], "A")
        D = DualityDatum.standard(C, 1)
        traced = algebraic_trace(identity_map(tensor_module(C, A)), D, 0, 0)
        assert traced == scale(identity_map(A), euler_characteristic(C))

    def test_cap_and_cup_degrees(self):
        C = module(8, "z", [0, 3])
        D = DualityDatum.standard(C, 2)
        assert cap_map(D).degree == 6
        assert cup_map(D).degree == 2
        assert cap_map(D).matrix.tolist() == [[1, 0, 0, -1]]

    def test_duality_degrees_must_add_up(self):
        C = module(2, "z", [0])
        with pytest.raises(DegreeMismatch):
            DualityDatum(C, C, 1, (1,))

    def test_reversed_datum_pairs_back(self):
        C = module(4, "z", [1, 2])
        D = DualityDatum.standard(C, 3)
        assert D.reversed().module == D.dual
        assert D.reversed().reversed() == D

    def test_reversed_pair_signs_follow_dual_degrees(self):
        C = module(4, "z", [1, 2])
        D = DualityDatum.reversed_pair(C, 2)
        assert D.dual == C
        assert D.module.degrees == [1, 0]
        assert D.signs == (-1, 1)


def random_z2_complex(rng, modulus, rank):
    """Uniform 0/1 differential on random degrees, resampled until it squares to zero"""
    basis = tuple(Generator(f"g{i}", rng.randrange(modulus)) for i in range(rank))
    C = GradedModule(modulus, "z2", basis, name="C")
    while True:
        matrix = np.zeros((rank, rank), dtype=object)
        for i, j in itertools.product(range(rank), repeat=2):
            if basis[i].degree == (basis[j].degree + 1) % modulus:
                matrix[i, j] = rng.randint(0, 1)
        d = GradedMap(C, C, 1, matrix)
        if compose(d, d).is_zero():
            return d


def counted_ranks(d):
    """Cohomology ranks over Z/2 by listing every cycle and every boundary"""
    M = d.matrix.astype(int)
    ranks = {}
    for k in range(d.modulus):
        here = [i for i, g in enumerate(d.source.basis) if g.degree == k]
        below = [i for i, g in enumerate(d.source.basis) if g.degree == (k - 1) % d.modulus]
        cycles = 0
        for bits in itertools.product((0, 1), repeat=len(here)):
            v = np.zeros(d.source.rank, dtype=int)
            v[here] = bits
            cycles += not np.any(M @ v % 2)
        boundaries = set()
        for bits in itertools.product((0, 1), repeat=len(below)):
            w = np.zeros(d.source.rank, dtype=int)
            w[below] = bits
            boundaries.add(tuple(M @ w % 2))
        ranks[k] = (cycles // len(boundaries)).bit_length() - 1
    return ranks


class TestCohomology:
    def test_multiplication_by_two(self):
        C = module(2, "z", [0, 1])
        d = GradedMap(C, C, 1, [[0, 0], [2, 0]])
        groups = cohomology(d)
        assert (groups[0].rank, groups[0].torsion) == (0, ())
        assert (groups[1].rank, groups[1].torsion) == (0, (2,))

    def test_multiplication_by_two_mod_two(self):
        C = module(2, "z2", [0, 1])
        groups = cohomology(GradedMap(C, C, 1, [[0, 0], [2, 0]]))
        assert [groups[k].rank for k in (0, 1)] == [1, 1]

    def test_random_complexes_keep_euler_characteristic(self):
        rng = random.Random(11)
        for _ in range(20):
            N = rng.choice((2, 4, 6))
            singles = rng.randint(0, 2)
            d = random_complex(rng, N, "z", pairs=2, singles=singles)
            groups = ChainComplex(d).cohomology()
            assert sum(g.rank for g in groups.values()) == singles
            alternating = sum((-1) ** k * groups[k].rank for k in range(N))
            assert alternating == euler_characteristic(d.source)

    def test_z2_ranks_match_counting(self):
        rng = random.Random(21)
        for _ in range(200):
            N = rng.choice((2, 4))
            d = random_z2_complex(rng, N, rng.randint(1, 6))
            groups = cohomology(d)
            assert {k: g.rank for k, g in groups.items()} == counted_ranks(d)
            assert all(g.torsion == () for g in groups.values())

    def test_square_must_vanish(self):
        C = module(2, "z", [0, 1, 0])
        d = GradedMap(C, C, 1, [[0, 0, 0], [1, 0, 0], [0, 1, 0]])
        with pytest.raises(NotAComplex):
            ChainComplex(d)
        with pytest.raises(NotAComplex):
            cohomology(GradedMap(C, C, 0))

    def test_chain_map_sign(self):
        C = module(2, "z", [0, 1])
        d = GradedMap(C, C, 1, [[0, 0], [1, 0]])
        assert is_chain_map(identity_map(C), d, d)
        odd = GradedMap(C, C, 1, [[0, 0], [1, 0]])
        assert is_chain_map(odd, d, d)
