from typing import Any, Dict

import click

from quiltkit.cli.utils import emit, fail, read_quilt
from quiltkit.core.quilt import Direction, QuiltedEnd, extract_ends


def end_summary(end: QuiltedEnd) -> Dict[str, Any]:
    return {
        "key": end.key,
        "direction": end.direction.value,
        "cyclic": end.cyclic,
        "cylindrical": end.cylindrical,
        "points": [[ref.patch, ref.point] for ref in end.points],
        "labels": list(end.labels),
        "widths": [str(w) for w in end.widths],
        "n": end.n,
    }


@click.command()
@click.argument("source")
def ends(source: str) -> None:
    """List the quilted ends of a quilt in their stored order"""
    try:
        q = read_quilt(source)
        found = extract_ends(q)
        emit(
            {
                "incoming": [end_summary(e) for e in found if e.direction == Direction.INCOMING],
                "outgoing": [end_summary(e) for e in found if e.direction == Direction.OUTGOING],
            }
        )
    except Exception as e:
        fail(e)
