import click

from quiltkit.cli.utils import emit, end_ref, fail, log, read_quilt
from quiltkit.core import surgery
from quiltkit.shared.codec import quilt_to_model


@click.command()
@click.argument("source")
@click.option("--minus", required=True, help="Incoming end: position or patch/point")
@click.option("--plus", required=True, help="Outgoing end: position or patch/point")
def glue(source: str, minus: str, plus: str) -> None:
    """Glue an incoming end of a quilt to one of its outgoing ends"""
    try:
        q = read_quilt(source)
        log("Glue", f"Gluing {minus} to {plus}")
        glued = surgery.glue(q, end_ref(minus), end_ref(plus))
        emit(quilt_to_model(glued))
    except Exception as e:
        fail(e)
