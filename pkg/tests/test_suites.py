import pytest

from quiltkit.cli.suites import SUITES
from quiltkit.core.section6 import defect_linearity, section6_suite


def failed(checks):
    return [c["check"] for c in checks if not c["pass"]]


class TestSection6:
    @pytest.mark.parametrize("n0, n1, modulus", [(1, 2, 8), (2, 1, 4), (1, 3, 6)])
    def test_all_checks_pass(self, n0, n1, modulus):
        checks = section6_suite(n0, n1, modulus)
        assert failed(checks) == []
        assert {c["check"] for c in checks} >= {
            "factorization",
            "three_point_ancestor",
            "two_point_ancestor",
            "annulus_shrinking",
            "cylinder_degree",
            "defect_degree",
            "defect_linearity",
        }

    @pytest.mark.parametrize("seed", range(5))
    def test_defect_linearity(self, seed):
        ok, detail = defect_linearity(seed)
        assert ok
        assert detail["seed"] == seed


class TestDemoSuites:
    @pytest.mark.parametrize("name", sorted(SUITES))
    def test_suite_passes(self, name):
        assert failed(SUITES[name](seed=0)) == []

    def test_closed_surfaces_at_full_size(self):
        assert failed(SUITES["closed_surfaces"](seed=1, instances=100)) == []

    def test_trace_laws_at_full_size(self):
        assert failed(SUITES["trace_laws"](seed=1, instances=500)) == []

    def test_shrink_bookkeeping_at_full_size(self):
        assert failed(SUITES["shrink"](seed=1, instances=200)) == []
