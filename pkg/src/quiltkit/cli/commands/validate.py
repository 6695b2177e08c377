import sys

import click

from quiltkit.cli.utils import emit, fail, log, read_quilt
from quiltkit.core import quilt
from quiltkit.shared.errors import InvalidQuilt


@click.command()
@click.argument("source")
def validate(source: str) -> None:
    """Check a quilt (JSON file or fixture name) for structural violations"""
    try:
        log("Validate", f"Reading {source}")
        try:
            q = read_quilt(source)
        except InvalidQuilt as e:
            emit({"violations": e.violations, "warnings": []})
            sys.exit(1)

        violations = quilt.validate(q)
        warnings = [] if violations else quilt.lint(q)
        log("Validate", f"{len(violations)} violation(s), {len(warnings)} warning(s)")
        emit({"violations": violations, "warnings": warnings})
        if violations:
            sys.exit(1)
    except Exception as e:
        fail(e)
