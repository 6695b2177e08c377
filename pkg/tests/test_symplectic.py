import random

import pytest
from sympy import ImmutableMatrix, Rational

from quiltkit.core.linalg import matrix, rational, same_span, signature
from quiltkit.core.sampling import random_lagrangian, random_symplectic, slope_line
from quiltkit.core.symplectic import (
    LagrangianSubspace,
    SymplecticSpace,
    are_transverse,
    compose,
    correspondence_as_lagrangian,
    complex_structure,
    darboux_basis,
    diagonal,
    graph,
    intersection_dim,
    is_lagrangian,
    is_symplectic,
    lagrangian_as_correspondence,
    split_correspondence,
    standard_space,
    transpose,
)
from quiltkit.shared.errors import NotLagrangian, NotSymplectic, SpaceMismatch

V2 = standard_space(1)
V4 = standard_space(2)


class TestSpaces:
    def test_standard_form_is_interleaved(self):
        assert V4.form == ImmutableMatrix(
            [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]
        )

    def test_lagrangian_check(self):
        assert is_lagrangian(matrix([[1, 0], [0, 0], [0, 1], [0, 0]]), V4)
        assert not is_lagrangian(matrix([[1, 0], [0, 1], [0, 0], [0, 0]]), V4)

    def test_non_lagrangian_basis_rejected(self):
        with pytest.raises(NotLagrangian):
            LagrangianSubspace(V4, matrix([[1, 0], [0, 1], [0, 0], [0, 0]]))

    def test_subspace_equality_ignores_basis_choice(self):
        a = LagrangianSubspace(V2, matrix([[1], [1]]))
        b = LagrangianSubspace(V2, matrix([["-1/2"], ["-1/2"]]))
        assert a == b

    def test_darboux_basis_and_complex_structure(self):
        V = SymplecticSpace(matrix([[0, 2], [-2, 0]]))
        P = darboux_basis(V)
        assert P.T * V.form * P == V2.form
        J = complex_structure(V)
        assert J * J == -ImmutableMatrix.eye(2)
        x = matrix([[1], [3]])
        assert V.omega(x, J * x) > 0


class TestComposition:
    def test_identity_law(self):
        rng = random.Random(0)
        for V in (V2, V4):
            for _ in range(100):
                L = graph(random_symplectic(rng, V), V)
                result = compose(diagonal(V), L)
                assert result.embedded
                assert result.composition == L

    def test_graph_law_and_associativity(self):
        rng = random.Random(1)
        for V in (V2, V4):
            for _ in range(100):
                A, B, C = (random_symplectic(rng, V) for _ in range(3))
                ab = compose(graph(A, V), graph(B, V)).composition
                assert ab == graph(B * A, V)
                left = compose(ab, graph(C, V)).composition
                right = compose(graph(A, V), compose(graph(B, V), graph(C, V)).composition)
                assert left == right.composition

    def test_transpose_reverses_composition(self):
        rng = random.Random(2)
        for V in (V2, V4):
            for _ in range(100):
                A, B = random_symplectic(rng, V), random_symplectic(rng, V)
                L01, L12 = graph(A, V), graph(B, V)
                lhs = transpose(compose(L01, L12).composition)
                rhs = compose(transpose(L12), transpose(L01)).composition
                assert lhs == rhs

    def test_transverse_split_composition(self):
        L0, L1 = slope_line(0), slope_line(None)
        result = compose(split_correspondence(L0, L1), split_correspondence(L0, L1))
        assert result.transverse and result.embedded
        assert result.kernel_dim == 0
        assert result.composition == split_correspondence(L0, L1)

    def test_non_transverse_pair(self):
        L0, L1 = slope_line(0), slope_line(None)
        result = compose(split_correspondence(L0, L1), split_correspondence(L1, L0))
        assert not result.transverse
        assert not result.embedded
        assert result.kernel_dim == 1
        assert result.composition is None

    def test_transverse_iff_trivial_kernel(self):
        rng = random.Random(4)
        for _ in range(20):
            L0, L1 = random_lagrangian(rng, V2), random_lagrangian(rng, V2)
            K0, K1 = random_lagrangian(rng, V2), random_lagrangian(rng, V2)
            result = compose(split_correspondence(L0, L1), split_correspondence(K0, K1))
            assert result.transverse == (result.kernel_dim == 0)
            assert result.transverse == are_transverse(L1, K0)

    def test_middle_spaces_must_agree(self):
        with pytest.raises(SpaceMismatch):
            compose(diagonal(V2), diagonal(V4))

    def test_graph_requires_symplectic_map(self):
        with pytest.raises(NotSymplectic):
            graph(matrix([[2, 0], [0, 1]]), V2)
        assert is_symplectic(matrix([[2, 0], [0, Rational(1, 2)]]), V2)


class TestPointCorrespondences:
    def test_lagrangian_round_trip(self):
        L = slope_line(2)
        assert correspondence_as_lagrangian(lagrangian_as_correspondence(L)) == L
        assert correspondence_as_lagrangian(lagrangian_as_correspondence(L, incoming=True)) == L

    def test_composing_with_a_point_end(self):
        # pt -> V then V -> V by a graph moves the Lagrangian
        A = matrix([[1, 0], [1, 1]])
        L = slope_line(0)
        moved = compose(lagrangian_as_correspondence(L), graph(A, V2)).composition
        assert same_span(correspondence_as_lagrangian(moved).basis, A * L.basis)

    def test_intersection_dimension(self):
        assert intersection_dim(slope_line(1), slope_line(1)) == 1
        assert intersection_dim(slope_line(1), slope_line(-1)) == 0


class TestExactHelpers:
    def test_rational_strings(self):
        assert rational("-3/6") == Rational(-1, 2)
        assert rational(" 4 ") == 4
        for bad in ("1/0", "x", 1.5, True):
            with pytest.raises(ValueError):
                rational(bad)

    @pytest.mark.parametrize(
        "rows, expected",
        [
            ([[2, 0], [0, 3]], 2),
            ([[0, 1], [1, 0]], 0),
            ([[1, 2], [2, 1]], 0),
            ([[-1, 0, 0], [0, -2, 0], [0, 0, 0]], -2),
            ([[0, 0], [0, 0]], 0),
            ([["1/2", 1, 0], [1, 3, 1], [0, 1, -4]], 1),
        ],
    )
    def test_signature(self, rows, expected):
        assert signature(matrix(rows)) == expected
