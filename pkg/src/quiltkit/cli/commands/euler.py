import click

from quiltkit.cli.utils import emit, fail, read_quilt
from quiltkit.core import quilt


@click.command()
@click.argument("source")
def euler(source: str) -> None:
    """Euler characteristic of each patch and of the whole quilt"""
    try:
        q = read_quilt(source)
        quilt.require_valid(q)
        per_patch, total = quilt.euler(q)
        emit({"patches": per_patch, "total": total})
    except Exception as e:
        fail(e)
