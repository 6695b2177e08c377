from pathlib import Path

import click

from quiltkit.cli.utils import emit, fail, log, read_model, resolver, settings
from quiltkit.core import invariants
from quiltkit.core.quilt import combinatorial_type, degree_shift
from quiltkit.shared.codec import (
    assignment_from_model,
    expression_from_model,
    map_to_model,
)
from quiltkit.shared.models import EvaluateRequest


@click.command()
@click.argument("path", type=click.Path())
def evaluate(path: str) -> None:
    """Evaluate a quilt expression against an assignment of generator maps"""
    try:
        opts = settings()
        request = read_model(EvaluateRequest, path)
        modulus = request.assignment.modulus or opts["modulus"]
        ring = request.assignment.ring or opts["ring"]
        resolve = resolver(Path(path).parent, modulus)
        expression = expression_from_model(request.expression, resolve)
        assignment = assignment_from_model(request.assignment, resolve, modulus, ring)
        log("Evaluate", f"{len(assignment.maps)} generator map(s) assigned")
        result = invariants.evaluate(expression, assignment)
        emit(
            {
                "map": map_to_model(result.map),
                "sign_exact": result.sign_exact,
                "degree_sound": result.degree_sound,
                "shift": result.shift,
                "degree_shift": degree_shift(result.quilt),
                "type": combinatorial_type(result.quilt),
            }
        )
    except Exception as e:
        fail(e)
