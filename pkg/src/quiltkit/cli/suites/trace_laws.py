import random
from typing import Any, Dict, List

from quiltkit.cli.utils import log
from quiltkit.core.graded import (
    DualityDatum,
    algebraic_trace,
    compose,
    graded_trace,
    graded_trace_via_duality,
    koszul_permutation,
    scale,
    tensor_map,
    tensor_module,
)
from quiltkit.core.sampling import (
    random_duality,
    random_graded_map,
    random_module,
)

MODULI = (2, 4, 6, 8)


def _result(name: str, instances: int, failures: List[int]) -> Dict[str, Any]:
    return {
        "check": name,
        "pass": not failures,
        "detail": {"instances": instances, "failures": failures},
    }


def _random_permutation(rng: random.Random, k: int) -> List[int]:
    perm = list(range(k))
    rng.shuffle(perm)
    return perm


def run_suite(seed: int = 0, instances: int = 25) -> List[Dict[str, Any]]:
    """Koszul coherence and trace identities on random graded data"""
    log("TraceLaws", "Starting checks")
    rng = random.Random(seed)
    checks = []

    failures = []
    for k in range(instances):
        N = rng.choice(MODULI)
        D = random_duality(rng, N, "z", rng.randint(1, 3), n=rng.randrange(N))
        plain = DualityDatum.standard(D.module, D.n, name=D.dual.name)
        A, B = random_module(rng, N, "z", 2, "A"), random_module(rng, N, "z", 2, "B")
        f = random_graded_map(rng, tensor_module(D.module, A), tensor_module(D.module, B), 0)
        if algebraic_trace(f, D, 0, 0) != algebraic_trace(f, plain, 0, 0):
            failures.append(k)
    checks.append(_result("trace_independent_of_pairing_signs", instances, failures))

    failures = []
    for k in range(instances):
        N = rng.choice(MODULI)
        D = random_duality(rng, N, "z", rng.randint(1, 4), n=rng.randrange(N))
        f = random_graded_map(rng, D.module, D.module, 0)
        if graded_trace(f) != graded_trace_via_duality(f, D):
            failures.append(k)
    checks.append(_result("algebraic_trace_is_supertrace", instances, failures))

    failures = []
    for k in range(instances):
        N = rng.choice(MODULI)
        C1, C2 = random_module(rng, N, "z", name="C"), random_module(rng, N, "z", name="E")
        d = rng.randrange(N)
        f = random_graded_map(rng, C1, C2, d)
        g = random_graded_map(rng, C2, C1, -d)
        sign = -1 if d % 2 else 1
        if graded_trace(compose(g, f)) != sign * graded_trace(compose(f, g)):
            failures.append(k)
    checks.append(_result("trace_cyclicity", instances, failures))

    failures = []
    for k in range(instances):
        N = rng.choice(MODULI)
        factors = [random_module(rng, N, "z", rng.randint(1, 2), f"X{i}") for i in range(3)]
        m = tensor_module(*factors)
        rho, pi = _random_permutation(rng, 3), _random_permutation(rng, 3)
        first = koszul_permutation(m, rho)
        composite = [pi[rho[a]] for a in range(3)]
        if koszul_permutation(m, composite) != compose(
            koszul_permutation(first.target, pi), first
        ):
            failures.append(k)
    checks.append(_result("koszul_permutation_homomorphism", instances, failures))

    failures = []
    for k in range(instances):
        N = rng.choice(MODULI)
        A1, A2, B1, B2, C1, C2 = (random_module(rng, N, "z", 2, x) for x in "ABCDEF")
        g1 = random_graded_map(rng, A1, B1, rng.randrange(N))
        g2 = random_graded_map(rng, A2, B2, rng.randrange(N))
        f1 = random_graded_map(rng, B1, C1, rng.randrange(N))
        f2 = random_graded_map(rng, B2, C2, rng.randrange(N))
        lhs = compose(tensor_map(f1, f2), tensor_map(g1, g2))
        sign = -1 if (f2.degree * g1.degree) % 2 else 1
        rhs = scale(tensor_map(compose(f1, g1), compose(f2, g2)), sign)
        if lhs != rhs:
            failures.append(k)
    checks.append(_result("tensor_interchange_law", instances, failures))

    log("TraceLaws", "Checks complete")
    return checks
