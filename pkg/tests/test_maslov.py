import itertools
import math
import random

import pytest

from quiltkit.core.builders import annulus, strip
from quiltkit.core.maslov import (
    BoundaryDatum,
    LagrangianLoop,
    SurfaceIndexData,
    boundary_maslov,
    fredholm_index,
    fredholm_index_quilt,
    kashiwara_index,
    loop_parity_check,
    maslov_loop,
    product_loop,
    quilt_index,
    topological_index,
)
from quiltkit.core.sampling import random_lagrangian, slope_line
from quiltkit.core.section6 import cylinder
from quiltkit.shared.errors import NonIntegralIndex, SpaceMismatch

HALF_TURN = (0, 1, None, -1)
SLOPES = (0, 1, -1, 2, -2, None)


def loop(*slopes):
    samples = tuple(slope_line(s) for s in slopes)
    return LagrangianLoop(samples[0].space, samples)


def winding(slopes):
    """Half-turns made by rotating each line to the next by less than a right angle"""
    angles = [90.0 if s is None else math.degrees(math.atan(s)) for s in slopes]
    total = 0.0
    for a, b in zip(angles, angles[1:] + angles[:1]):
        step = (b - a + 90) % 180 - 90
        if math.isclose(abs(step), 90, abs_tol=1e-9):
            return None
        total += step
    return round(total / 180)


def windable(rng, count, low=2, high=12, start=None):
    found = []
    while len(found) < count:
        slopes = [rng.choice(SLOPES) for _ in range(rng.randint(low, high))]
        if start is not None:
            slopes[0] = start
        if winding(slopes) is not None:
            found.append(slopes)
    return found


class TestKashiwara:
    def test_value_on_three_lines(self):
        assert kashiwara_index(slope_line(0), slope_line(None), slope_line(1)) == -1

    def test_alternating(self):
        a, b, c = slope_line(0), slope_line(2), slope_line(-1)
        assert kashiwara_index(a, b, c) == -kashiwara_index(b, a, c)
        assert kashiwara_index(a, b, c) == kashiwara_index(b, c, a)

    def test_repeated_line_gives_zero(self):
        a, b = slope_line(1), slope_line(-2)
        assert kashiwara_index(a, a, b) == 0


class TestMaslovLoop:
    def test_half_turn(self):
        assert maslov_loop(loop(*HALF_TURN)) == 1

    def test_reversal_flips_sign(self):
        assert maslov_loop(loop(*HALF_TURN).reversed()) == -1

    def test_reference_independence(self):
        half = loop(*HALF_TURN)
        for ref in (0, 2, -1, None):
            assert maslov_loop(half, slope_line(ref)) == 1

    def test_rotation_invariance(self):
        half = loop(*HALF_TURN)
        assert all(maslov_loop(half.rotated(k)) == 1 for k in range(4))

    def test_concatenation_adds(self):
        assert maslov_loop(loop(*HALF_TURN, *HALF_TURN)) == 2

    def test_constant_loop(self):
        assert maslov_loop(loop(2, 2, 2)) == 0

    def test_back_and_forth_cancels(self):
        assert maslov_loop(loop(0, 1, 0, -1)) == 0

    def test_too_coarse_sampling(self):
        with pytest.raises(NonIntegralIndex):
            maslov_loop(loop(0, None))

    def test_product_loop_adds(self):
        assert maslov_loop(product_loop(loop(*HALF_TURN), loop(*HALF_TURN))) == 2

    def test_product_needs_equal_lengths(self):
        with pytest.raises(SpaceMismatch):
            product_loop(loop(*HALF_TURN), loop(0, 1, None))


class TestParity:
    def test_oriented_full_turn_is_even(self):
        datum = BoundaryDatum(loop(*HALF_TURN, *HALF_TURN), oriented=True)
        assert loop_parity_check(datum)

    def test_oriented_half_turn_fails(self):
        assert not loop_parity_check(BoundaryDatum(loop(*HALF_TURN), oriented=True))

    def test_unoriented_is_unconstrained(self):
        assert loop_parity_check(BoundaryDatum(loop(*HALF_TURN), oriented=False))


class TestIndexFormula:
    def test_topological_index_sums(self):
        indices = boundary_maslov([(loop(*HALF_TURN), slope_line(0)), (loop(2, 2), slope_line(0))])
        assert indices == [1, 0]
        data = SurfaceIndexData(1, 1, 3, tuple(indices), (2,))
        assert topological_index(data) == 6

    def test_fredholm_index(self):
        assert fredholm_index(2, -1, 5) == 3
        assert fredholm_index_quilt([(1, 1), (2, 0), (3, -1)], 4) == 1 + 0 - 3 + 4

    def test_quilt_index_reads_patches(self):
        assert quilt_index(strip(), 0) == 1
        assert quilt_index(annulus(), 2) == 2
        # two disks of ranks 1 and 2
        assert quilt_index(cylinder(), 0) == 3


def assert_matches_winding(slopes):
    expected = winding(slopes)
    if expected is None:
        with pytest.raises(NonIntegralIndex):
            maslov_loop(loop(*slopes))
    else:
        assert maslov_loop(loop(*slopes)) == expected


class TestAgainstWinding:
    @pytest.mark.parametrize("length", [1, 2, 3])
    def test_every_short_loop(self, length):
        for slopes in itertools.product(SLOPES, repeat=length):
            assert_matches_winding(list(slopes))

    def test_random_long_loops(self):
        rng = random.Random(12)
        for _ in range(150):
            assert_matches_winding([rng.choice(SLOPES) for _ in range(rng.randint(4, 12))])

    def test_reference_does_not_matter(self):
        rng = random.Random(1)
        for slopes in windable(rng, 25):
            lp = loop(*slopes)
            assert {maslov_loop(lp, slope_line(r)) for r in SLOPES} == {winding(slopes)}

    def test_reversal_negates(self):
        rng = random.Random(2)
        for slopes in windable(rng, 25):
            lp = loop(*slopes)
            assert maslov_loop(lp.reversed()) == -maslov_loop(lp)

    def test_concatenation_at_a_shared_sample(self):
        rng = random.Random(3)
        for first in windable(rng, 15, high=6):
            (second,) = windable(rng, 1, high=6, start=first[0])
            joined = maslov_loop(loop(*first, *second))
            assert joined == maslov_loop(loop(*first)) + maslov_loop(loop(*second))

    def test_oriented_parity_follows_the_index(self):
        rng = random.Random(4)
        for slopes in windable(rng, 25):
            datum = BoundaryDatum(loop(*slopes), oriented=True)
            assert loop_parity_check(datum) == (winding(slopes) % 2 == 0)

    def test_products_in_dimension_four(self):
        rng = random.Random(5)
        for _ in range(10):
            length = rng.randint(2, 8)
            a, b = windable(rng, 2, low=length, high=length)
            lp = product_loop(loop(*a), loop(*b))
            expected = winding(a) + winding(b)
            assert maslov_loop(lp) == expected
            assert maslov_loop(lp, random_lagrangian(rng, lp.space)) == expected
