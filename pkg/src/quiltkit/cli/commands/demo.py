import sys

import click

from quiltkit.cli.suites import SUITES
from quiltkit.cli.utils import emit, fail, show_checks
from quiltkit.shared.config import Config


@click.command()
@click.argument("name", type=click.Choice([*SUITES, "all"]))
@click.option(
    "--seed", type=int, default=None, help="Seed for random data (default: QUILTKIT_SEED)"
)
def demo(name: str, seed: int) -> None:
    """Run a packaged suite of checks and report pass/fail per check"""
    try:
        seed = Config().seed if seed is None else seed
        names = list(SUITES) if name == "all" else [name]
        report = {}
        passed = True
        for suite in names:
            checks = SUITES[suite](seed=seed)
            passed = show_checks(suite, checks) and passed
            report[suite] = checks
        emit({"seed": seed, "suites": report, "pass": passed})
        if not passed:
            sys.exit(1)
    except Exception as e:
        fail(e)
