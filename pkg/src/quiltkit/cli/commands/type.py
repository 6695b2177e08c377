from typing import Optional

import click

from quiltkit.cli.utils import emit, fail, read_quilt
from quiltkit.core.quilt import combinatorial_type


@click.command(name="type")
@click.argument("source")
@click.argument("other", required=False)
def type_(source: str, other: Optional[str]) -> None:
    """Canonical combinatorial type of a quilt, optionally compared with another"""
    try:
        t = combinatorial_type(read_quilt(source))
        report = {"type": t}
        if other is not None:
            u = combinatorial_type(read_quilt(other))
            report.update({"other": u, "equal": t == u})
        emit(report)
    except Exception as e:
        fail(e)
