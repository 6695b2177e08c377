import click

from quiltkit.cli.utils import emit, fail, read_quilt
from quiltkit.core.quilt import degree_shift, outgoing_count


@click.command()
@click.argument("source")
def degree(source: str) -> None:
    """Degree shift of the relative invariant of a quilt"""
    try:
        q = read_quilt(source)
        emit(
            {
                "degree_shift": degree_shift(q),
                "modulus": q.modulus,
                "outgoing_counts": {p.id: outgoing_count(p) for p in q.patches},
            }
        )
    except Exception as e:
        fail(e)
