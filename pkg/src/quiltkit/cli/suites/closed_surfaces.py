import random
from typing import Any, Dict, List

import numpy as np

from quiltkit.cli.utils import log
from quiltkit.core.builders import disk, strip
from quiltkit.core.graded import (
    DualityDatum,
    GradedMap,
    cap_map,
    compose,
    cup_map,
    euler_characteristic,
)
from quiltkit.core.invariants import (
    GeneratorAssignment,
    Glue,
    Leaf,
    evaluate,
    sphere_with_holes,
)
from quiltkit.core.sampling import random_graded_map, random_module

MODULI = (2, 4, 6, 8)


def _supertrace_of_power(phi: GradedMap, k: int) -> int:
    power = np.identity(phi.source.rank, dtype=int).astype(object)
    for _ in range(k):
        power = phi.matrix.dot(power)
    signs = [-1 if g.degree % 2 else 1 for g in phi.source.basis]
    return int(sum(s * power[i, i] for i, s in enumerate(signs)))


def run_suite(seed: int = 0, instances: int = 10) -> List[Dict[str, Any]]:
    """Disk, annulus and closed-surface invariants against their closed forms"""
    log("ClosedSurfaces", "Starting checks")
    rng = random.Random(seed)
    checks = []

    nonzero = []
    for N in MODULI:
        f = evaluate(Leaf(disk(modulus=N)), GeneratorAssignment(N)).map
        if not f.is_zero():
            nonzero.append(N)
    checks.append(
        {"check": "disk_vanishes", "pass": not nonzero, "detail": {"failed_moduli": nonzero}}
    )

    failures = []
    for k in range(instances):
        N = rng.choice(MODULI)
        C = random_module(rng, N, "z", rng.randint(1, 6))
        a = GeneratorAssignment(N, "z", {"(L0, L1)": C})
        result = evaluate(Glue(Leaf(strip(modulus=N)), 0, 0), a)
        D = DualityDatum.standard(C, 1)
        via_cup_cap = int(compose(cap_map(D), cup_map(D)).matrix[0, 0])
        value = int(result.map.matrix[0, 0])
        chi = euler_characteristic(C)
        if not (value == chi == via_cup_cap and result.sign_exact):
            failures.append({"instance": k, "annulus": value, "euler": chi})
    checks.append(
        {
            "check": "annulus_is_euler_characteristic",
            "pass": not failures,
            "detail": {"instances": instances, "failures": failures},
        }
    )

    failures = []
    for k in range(instances):
        N = rng.choice(MODULI)
        C = random_module(rng, N, "z", rng.randint(1, 4))
        phi = random_graded_map(rng, C, C, 0)
        for g in range(1, 5):
            expected = _supertrace_of_power(phi, g - 1)
            if sphere_with_holes(g, phi) != expected:
                failures.append({"instance": k, "genus": g, "expected": expected})
    checks.append(
        {
            "check": "sphere_with_holes_is_trace_of_power",
            "pass": not failures,
            "detail": {"instances": instances, "failures": failures},
        }
    )

    log("ClosedSurfaces", "Checks complete")
    return checks
