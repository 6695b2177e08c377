from typing import Any, Dict, List

from quiltkit.cli.utils import log
from quiltkit.core.section6 import section6_suite


def run_suite(seed: int = 0, n0: int = 1, n1: int = 2, modulus: int = 8) -> List[Dict[str, Any]]:
    """Factorization of the correspondence cylinder and the defect quilts"""
    log("Section6", f"Starting checks (n0={n0}, n1={n1}, N={modulus})")
    checks = section6_suite(n0, n1, modulus, seed)
    log("Section6", "Checks complete")
    return checks
