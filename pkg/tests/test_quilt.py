import random

import pytest

from quiltkit.core.builders import annulus, band, cap, cup, disk, strip
from quiltkit.core.quilt import (
    BoundaryCircle,
    Direction,
    EndRef,
    Patch,
    PatchLabel,
    QuiltedSurface,
    combinatorial_eq,
    degree_shift,
    disjoint_union,
    euler,
    extract_ends,
    rename_patches,
    validate,
)
from quiltkit.core.sampling import random_quilt
from quiltkit.core.section6 import M0, M1, cylinder, psi_half, quilted_pants
from quiltkit.core.surgery import check_glueable, glue, shrink_strip
from quiltkit.shared.codec import quilt_from_model, quilt_to_model
from quiltkit.shared.errors import (
    BothSidesBoundary,
    EndMismatch,
    InvalidQuilt,
    NotAStrip,
    SchemaError,
)
from quiltkit.shared.fixtures import load_quilt, parse_quilt
from quiltkit.shared.models import QuiltModel

M = PatchLabel("M", 2)


class TestEnds:
    def test_strip_ends(self):
        ends = extract_ends(strip())
        assert [e.direction for e in ends] == [Direction.INCOMING, Direction.OUTGOING]
        assert [e.key for e in ends] == ["(L0, L1)", "(L0, L1)"]

    def test_cap_and_cup_read_labels_both_ways(self):
        for q, direction in ((cap(), Direction.INCOMING), (cup(), Direction.OUTGOING)):
            ends = extract_ends(q)
            assert {e.direction for e in ends} == {direction}
            assert sorted(e.key for e in ends) == ["(L0, L1)", "(L1, L0)"]

    def test_quilted_band_labels(self):
        q = band([M0, M1], ["L0", "L01", "L1"])
        incoming, outgoing = extract_ends(q)
        assert incoming.key == "(L0, L01, L1)"
        assert incoming.n == 3
        assert outgoing.half_dims == (1, 2)

    def test_cyclic_and_cylindrical_keys(self):
        assert [e.key for e in extract_ends(cylinder())] == ["HF(M0)", "HF(M1)"]
        keys = [e.key for e in extract_ends(psi_half())]
        assert keys == ["HF(M0)", "<L01, L01^t>"]


class TestValidation:
    def test_builders_are_valid(self):
        for q in (strip(), cap(), cup(), disk(), annulus(), cylinder(), quilted_pants()):
            assert validate(q) == []

    def test_unlabeled_boundary_component(self):
        q = QuiltedSurface(patches=(Patch("d", M, (BoundaryCircle("c"),)),))
        assert validate(q) == ["unlabeled boundary component: d/c"]

    def test_odd_modulus(self):
        q = strip(modulus=2)
        bad = QuiltedSurface(3, q.patches, q.seams, q.boundary, q.incoming, q.outgoing)
        assert validate(bad) == ["modulus 3 is not even and positive"]

    def test_missing_end_order(self):
        q = strip()
        bad = QuiltedSurface(q.modulus, q.patches, q.seams, q.boundary, q.incoming, ())
        assert validate(bad) == ["end not ordered: s0/v"]

    def test_band_label_count(self):
        with pytest.raises(InvalidQuilt):
            band([M, M], ["L0", "L1"])


class TestDegreeShift:
    @pytest.mark.parametrize(
        "builder, expected",
        [(strip, 0), (cap, 7), (cup, 1), (disk, 7), (annulus, 0)],
    )
    def test_planar_pieces(self, builder, expected):
        assert degree_shift(builder(modulus=8)) == expected

    def test_cylinder_shift_is_dimension_difference(self):
        assert degree_shift(cylinder(M0, M1, modulus=8)) == 1

    def test_euler_characteristics(self):
        assert euler(annulus()) == ({"a": 0}, 0)
        assert euler(cylinder()) == ({"P0": 1, "P1": 1}, 2)


class TestSurgery:
    def test_glue_two_strips_gives_a_strip(self):
        q = disjoint_union(strip(prefix="a"), strip(prefix="b"))
        glued = glue(q, EndRef("b0", "u"), EndRef("a0", "v"))
        assert len(glued.patches) == 1
        assert combinatorial_eq(glued, strip())
        assert degree_shift(glued) == 0

    def test_glue_by_position(self):
        q = disjoint_union(strip(prefix="a"), strip(prefix="b"))
        assert combinatorial_eq(glue(q, 1, 0), strip())

    def test_glue_rejects_different_labels(self):
        q = disjoint_union(strip("L0", "L1", prefix="a"), strip("L0", "L2", prefix="b"))
        with pytest.raises(EndMismatch):
            glue(q, EndRef("b0", "u"), EndRef("a0", "v"))

    def test_glue_rejects_different_dimensions(self):
        q = disjoint_union(strip(prefix="a"), strip(label=PatchLabel("M", 4), prefix="b"))
        with pytest.raises(EndMismatch, match="half dims"):
            glue(q, EndRef("b0", "u"), EndRef("a0", "v"))

    def test_glue_needs_opposite_directions(self):
        with pytest.raises(EndMismatch):
            glue(cap(), EndRef("cap0", "u"), EndRef("cap0", "v"))

    @pytest.mark.parametrize("N", [2, 4, 6])
    def test_random_glues_keep_degree_shift(self, N):
        rng = random.Random(N)
        glued_count = 0
        for _ in range(60):
            q = random_quilt(rng, N, max_patches=5)
            ends = extract_ends(q)
            _, chi = euler(q)
            for minus in ends:
                for plus in ends:
                    try:
                        check_glueable(minus, plus)
                    except EndMismatch:
                        continue
                    glued = glue(q, minus, plus)
                    assert degree_shift(glued) == degree_shift(q)
                    assert euler(glued)[1] == chi - len(minus.points)
                    assert len(extract_ends(glued)) == len(ends) - 2
                    glued_count += 1
        assert glued_count > 0

    def test_shrink_middle_strip(self):
        q = band([M, M, M], ["L0", "A", "B", "L1"], modulus=8)
        shrunk, record = shrink_strip(q, "p1")
        assert (record.n, record.d) == (1, 0)
        assert [p.id for p in shrunk.patches] == ["p0", "p2"]
        assert len(shrunk.seams) == 1
        assert degree_shift(shrunk) == degree_shift(q)

    def test_shrink_outer_strip_moves_label_to_boundary(self):
        q = band([M, M], ["L0", "A", "L1"], modulus=8)
        shrunk, _ = shrink_strip(q, "p0")
        assert not shrunk.seams
        assert len(shrunk.boundary) == 2

    def test_shrink_closed_strip(self):
        with pytest.raises(BothSidesBoundary):
            shrink_strip(strip(), "s0")
        empty, record = shrink_strip(strip(), "s0", allow_closed=True)
        assert empty.patches == ()
        assert record.d == 0

    def test_shrink_records_cap_and_cup(self):
        assert shrink_strip(cap(), "cap0", allow_closed=True)[1].d == -1
        assert shrink_strip(cup(), "cup0", allow_closed=True)[1].d == 1

    def test_shrink_rejects_a_disk(self):
        with pytest.raises(NotAStrip):
            shrink_strip(disk(), "d")


class TestCombinatorialType:
    def test_renaming_keeps_the_type(self):
        q = quilted_pants()
        renamed = rename_patches(q, {p.id: f"x{i}" for i, p in enumerate(q.patches)})
        assert combinatorial_eq(q, renamed)

    def test_labels_distinguish(self):
        assert not combinatorial_eq(strip("L0", "L1"), strip("L1", "L0"))
        assert not combinatorial_eq(cap(), cup())

    def test_symmetric_cyclic_band(self):
        q = band([M] * 8, ["A"] * 8, cyclic=True)
        renamed = rename_patches(q, {p.id: f"x{(3 * i) % 8}" for i, p in enumerate(q.patches)})
        shuffled = QuiltedSurface(
            renamed.modulus,
            tuple(reversed(renamed.patches)),
            renamed.seams,
            renamed.boundary,
            renamed.incoming,
            renamed.outgoing,
        )
        assert combinatorial_eq(q, shuffled)
        assert not combinatorial_eq(q, band([M] * 8, ["A"] * 7 + ["B"], cyclic=True))

    def test_identical_components_in_any_order(self):
        parts = [strip(prefix=x) for x in "abcdef"]
        q = parts[0]
        for part in parts[1:]:
            q = disjoint_union(q, part)
        reordered = QuiltedSurface(
            q.modulus, tuple(reversed(q.patches)), q.seams, q.boundary, q.incoming, q.outgoing
        )
        assert combinatorial_eq(q, reordered)


class TestCodec:
    @pytest.mark.parametrize("builder", [strip, cap, annulus, cylinder, psi_half, quilted_pants])
    def test_json_form_decodes_to_the_same_quilt(self, builder):
        q = builder(modulus=8)
        assert quilt_from_model(QuiltModel.model_validate(quilt_to_model(q))) == q

    def test_schema_error(self):
        with pytest.raises(SchemaError):
            parse_quilt({"modulus": "eight"})

    def test_unknown_patch_in_seam(self):
        data = quilt_to_model(band([M, M], ["L0", "A", "L1"]))
        data["seams"][0]["a"][0] = "nowhere"
        with pytest.raises(InvalidQuilt):
            parse_quilt(data)

    def test_builtin_by_name(self, tmp_path):
        assert load_quilt("strip", tmp_path, modulus=4) == strip(modulus=4)
