import click

from quiltkit.cli.utils import emit, fail, log, read_quilt
from quiltkit.core.quilt import degree_shift
from quiltkit.core.surgery import shrink_strip
from quiltkit.shared.codec import quilt_to_model


@click.command()
@click.argument("source")
@click.option("--patch", "patch_id", required=True, help="Id of the strip patch to remove")
@click.option(
    "--allow-closed",
    is_flag=True,
    help="Also remove a strip whose two sides lie on true boundary",
)
def shrink(source: str, patch_id: str, allow_closed: bool) -> None:
    """Shrink a strip patch into a seam labelled by the composed correspondence"""
    try:
        q = read_quilt(source)
        log("Shrink", f"Removing patch {patch_id}")
        shrunk, record = shrink_strip(q, patch_id, allow_closed=allow_closed)
        emit(
            {
                "quilt": quilt_to_model(shrunk),
                "record": {"n": record.n, "d": record.d},
                "shift": record.n * record.d,
                "degree_shift": {"before": degree_shift(q), "after": degree_shift(shrunk)},
            }
        )
    except Exception as e:
        fail(e)
