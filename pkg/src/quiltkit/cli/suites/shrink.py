import random
from typing import Any, Dict, List

from quiltkit.cli.utils import log
from quiltkit.core.builders import cap
from quiltkit.core.graded import module
from quiltkit.core.invariants import GeneratorAssignment, shrink_transport
from quiltkit.core.quilt import PatchLabel, degree_shift
from quiltkit.core.sampling import random_quilt
from quiltkit.core.section6 import M0, M1, M2, two_correspondence_cylinder
from quiltkit.core.surgery import shrink_strip
from quiltkit.shared.errors import MathError

MODULI = (2, 4, 6, 8)


def _bookkeeping(rng: random.Random, instances: int) -> Dict[str, Any]:
    """degree_shift drops by n*d on every shrink"""
    failures, skipped = [], 0
    for k in range(instances):
        N = rng.choice(MODULI)
        q = random_quilt(rng, N)
        patch = rng.choice(q.patches).id
        try:
            shrunk, record = shrink_strip(q, patch, allow_closed=True)
        except MathError:
            skipped += 1
            continue
        expected = (degree_shift(q) - record.n * record.d) % N
        if degree_shift(shrunk) != expected:
            failures.append({"instance": k, "patch": patch, "expected": expected})
    return {
        "check": "degree_shift_follows_record",
        "pass": not failures,
        "detail": {"instances": instances, "skipped": skipped, "failures": failures},
    }


def _duality_pairing(modulus: int, half_dim: int = 1) -> Dict[str, Any]:
    """The two-incoming disk over one intersection point shrinks to the empty quilt"""
    label = PatchLabel("M", 2 * half_dim)
    q = cap(label=label, modulus=modulus)
    a = GeneratorAssignment(modulus, "z", {"(L0, L1)": module(modulus, "z", [0], "x")})
    moved = shrink_transport(q, "cap0", a, allow_closed=True)
    f = moved.assignment.map_for(moved.quilt)
    ok = (
        not moved.quilt.patches
        and moved.record_shift == -half_dim
        and f.degree == 0
        and abs(int(f.matrix[0, 0])) == 1
    )
    return {
        "check": "duality_pairing_shift",
        "pass": ok,
        "detail": {"record": [moved.record.n, moved.record.d], "shift": moved.record_shift},
    }


def _annulus_record(modulus: int) -> Dict[str, Any]:
    q = two_correspondence_cylinder(M0, M1, M2, modulus)
    shrunk, record = shrink_strip(q, "A1")
    ok = record.d == 0 and degree_shift(shrunk) == degree_shift(q)
    return {
        "check": "annulus_shrink_keeps_degree",
        "pass": ok,
        "detail": {"record": [record.n, record.d]},
    }


def run_suite(seed: int = 0, instances: int = 50) -> List[Dict[str, Any]]:
    """Strip shrinking against the degree bookkeeping of its shift record"""
    log("Shrink", "Starting checks")
    rng = random.Random(seed)
    checks = [
        _bookkeeping(rng, instances),
        _duality_pairing(8, 1),
        _duality_pairing(8, 2),
        _annulus_record(8),
    ]
    log("Shrink", "Checks complete")
    return checks
