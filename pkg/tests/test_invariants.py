import random

import pytest

from quiltkit.core.builders import cap, cup, disk, strip
from quiltkit.core.graded import (
    GradedMap,
    euler_characteristic,
    graded_trace,
    identity_map,
    module,
)
from quiltkit.core.invariants import (
    DisjointUnion,
    GeneratorAssignment,
    Glue,
    Leaf,
    evaluate,
    shrink_transport,
    sphere_with_holes,
    verify_assignment,
)
from quiltkit.core.quilt import (
    BoundaryCircle,
    BoundaryLabel,
    Direction,
    EndRef,
    MarkedPoint,
    Patch,
    PatchLabel,
    QuiltedSurface,
    Side,
    degree_shift,
    disjoint_union,
    extract_ends,
    with_default_order,
)
from quiltkit.core.sampling import random_graded_map, random_module
from quiltkit.core.section6 import cylinder
from quiltkit.shared.errors import (
    DegreeMismatch,
    InvalidQuilt,
    ModulusMismatch,
    RingMismatch,
    UnassignedGenerator,
)

MODULI = (2, 4, 6, 8)


def cylinder_assignment(modulus=8):
    return GeneratorAssignment(
        modulus,
        "z",
        {"HF(M0)": module(modulus, "z", [0], "h"), "HF(M1)": module(modulus, "z", [1], "k")},
    )


class TestBuiltinMaps:
    @pytest.mark.parametrize("N", MODULI)
    def test_disk_is_zero(self, N):
        f = evaluate(Leaf(disk(modulus=N)), GeneratorAssignment(N)).map
        assert f.is_zero()
        assert f.degree == degree_shift(disk(modulus=N))

    def test_strip_is_identity(self):
        C = module(4, "z", [0, 1, 3])
        f = evaluate(Leaf(strip(modulus=4)), GeneratorAssignment(4, "z", {"(L0, L1)": C})).map
        assert f == identity_map(C)

    def test_unknown_generator(self):
        with pytest.raises(UnassignedGenerator):
            evaluate(Leaf(cylinder(modulus=2)), GeneratorAssignment(2))

    def test_modulus_must_match(self):
        with pytest.raises(ModulusMismatch):
            evaluate(Leaf(strip(modulus=4)), GeneratorAssignment(2))

    def test_unknown_ring(self):
        with pytest.raises(RingMismatch):
            GeneratorAssignment(2, "q")


class TestAnnulus:
    def test_annulus_is_euler_characteristic(self):
        rng = random.Random(0)
        for _ in range(200):
            N = rng.choice(MODULI)
            C = random_module(rng, N, "z", rng.randint(1, 6))
            result = evaluate(
                Glue(Leaf(strip(modulus=N)), 0, 0), GeneratorAssignment(N, "z", {"(L0, L1)": C})
            )
            assert int(result.map.matrix[0, 0]) == euler_characteristic(C)
            assert result.sign_exact
            assert result.degree_sound

    def test_higher_dimensional_annulus(self):
        C = module(6, "z", [0, 1, 3])
        q = strip(label=PatchLabel("M", 4), modulus=6)
        result = evaluate(Glue(Leaf(q), 0, 0), GeneratorAssignment(6, "z", {"(L0, L1)": C}))
        assert int(result.map.matrix[0, 0]) == -1

    @pytest.mark.parametrize("degrees, chi", [([0], 1), ([1], -1), ([0, 1, 1], -1)])
    def test_cup_then_cap_is_euler_characteristic(self, degrees, chi):
        pieces = disjoint_union(cap(modulus=4), cup(modulus=4))
        by_key = {(e.key, e.direction): e.lead for e in extract_ends(pieces)}
        first = Glue(
            DisjointUnion(Leaf(cap(modulus=4)), Leaf(cup(modulus=4))),
            by_key[("(L0, L1)", Direction.INCOMING)],
            by_key[("(L0, L1)", Direction.OUTGOING)],
        )
        a = GeneratorAssignment(4, "z", {"(L0, L1)": module(4, "z", degrees)})
        result = evaluate(Glue(first, 0, 0), a)
        assert not result.quilt.incoming and not result.quilt.outgoing
        assert result.map.matrix.shape == (1, 1)
        assert int(result.map.matrix[0, 0]) == chi


class TestComposition:
    def test_strips_compose_to_identity(self):
        C = module(4, "z", [0, 3])
        a = GeneratorAssignment(4, "z", {"(L0, L1)": C})
        expr = Glue(
            DisjointUnion(Leaf(strip(modulus=4, prefix="a")), Leaf(strip(modulus=4, prefix="b"))),
            EndRef("a0", "u"),
            EndRef("b0", "v"),
        )
        result = evaluate(expr, a)
        assert result.map == identity_map(C)
        assert result.sign_exact
        assert len(result.quilt.patches) == 1

    def test_union_is_tensor_product(self):
        C = module(2, "z", [1])
        a = GeneratorAssignment(2, "z", {"(L0, L1)": C})
        expr = DisjointUnion(Leaf(strip(modulus=2)), Leaf(strip(modulus=2)))
        result = evaluate(expr, a)
        assert result.map.source.factor_list == (C, C)
        assert result.map.matrix.tolist() == [[1]]


class TestAssignments:
    def test_assign_uses_degree_shift(self):
        a = cylinder_assignment()
        f = a.assign(cylinder(), [[5]])
        assert f.degree == 1
        result = evaluate(Leaf(cylinder()), a)
        assert result.map == f
        assert result.degree_sound
        assert verify_assignment(cylinder(), f)

    def test_register_checks_degree(self):
        a = cylinder_assignment()
        h, k = a.modules["HF(M0)"], a.modules["HF(M1)"]
        with pytest.raises(DegreeMismatch):
            a.register(cylinder(), GradedMap(h, k, 3))


class TestClosedSurfaces:
    def test_sphere_with_holes(self):
        rng = random.Random(2)
        for _ in range(20):
            N = rng.choice(MODULI)
            C = random_module(rng, N, "z", rng.randint(1, 4))
            phi = random_graded_map(rng, C, C, 0)
            assert sphere_with_holes(1, phi) == euler_characteristic(C)
            assert sphere_with_holes(2, phi) == graded_trace(phi)

    def test_genus_must_be_positive(self):
        C = module(2, "z", [0])
        with pytest.raises(InvalidQuilt):
            sphere_with_holes(0, identity_map(C))


class TestShrinkTransport:
    @pytest.mark.parametrize("half_dim", [1, 2])
    def test_duality_pairing_moves_degree(self, half_dim):
        q = cap(label=PatchLabel("M", 2 * half_dim), modulus=8)
        a = GeneratorAssignment(8, "z", {"(L0, L1)": module(8, "z", [0], "x")})
        moved = shrink_transport(q, "cap0", a, allow_closed=True)
        f = moved.assignment.map_for(moved.quilt)
        assert moved.quilt.patches == ()
        assert moved.record_shift == -half_dim
        assert f.degree == 0
        assert abs(int(f.matrix[0, 0])) == 1

    def test_closed_strip_folds_end_degrees_into_the_map(self):
        C = module(4, "z", [1])
        a = GeneratorAssignment(4, "z", {"(L0, L1)": C})
        moved = shrink_transport(strip(modulus=4), "s0", a, allow_closed=True)
        assert moved.record.d == 0
        assert moved.identification == {}
        assert moved.assignment.map_for(moved.quilt).degree == 0


def four_point_disk(modulus=4):
    marks = (("a", Direction.INCOMING), ("b", Direction.OUTGOING))
    marks += (("c", Direction.INCOMING), ("d", Direction.OUTGOING))
    circle = BoundaryCircle("c", tuple(MarkedPoint(m, d) for m, d in marks))
    p = Patch("P", PatchLabel("M", 2), (circle,))
    boundary = tuple((Side("P", "c", m), BoundaryLabel("L")) for m, _ in marks)
    q = QuiltedSurface(modulus=modulus, patches=(p,), boundary=boundary)
    return with_default_order(q)


class TestSignRegimes:
    def test_trace_with_other_ends_left_is_not_exact(self):
        q = four_point_disk()
        a = GeneratorAssignment(4, "z", {"(L, L)": module(4, "z", [0], "x")})
        source, target = a.end_modules(q)
        a.register(q, GradedMap(source, target, degree_shift(q)))
        result = evaluate(Glue(Leaf(q), EndRef("P", "a"), EndRef("P", "b")), a)
        assert len(result.quilt.incoming) == len(result.quilt.outgoing) == 1
        assert not result.sign_exact

    def test_strip_trace_is_exact(self):
        C = module(4, "z", [0, 1])
        result = evaluate(
            Glue(Leaf(strip(modulus=4)), 0, 0), GeneratorAssignment(4, "z", {"(L0, L1)": C})
        )
        assert result.sign_exact
