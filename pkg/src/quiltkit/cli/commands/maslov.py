import sys

import click

from quiltkit.cli.utils import emit, fail, read_model
from quiltkit.core.maslov import BoundaryDatum, loop_parity_check, maslov_loop
from quiltkit.shared.codec import loop_from_model
from quiltkit.shared.models import LoopModel


@click.command()
@click.argument("path", type=click.Path())
def maslov(path: str) -> None:
    """Maslov index of a sampled Lagrangian loop"""
    try:
        loop, reference, oriented = loop_from_model(read_model(LoopModel, path))
        index = maslov_loop(loop, reference)
        parity_ok = loop_parity_check(BoundaryDatum(loop, oriented), reference)
        emit({"index": index, "oriented": oriented, "parity_ok": parity_ok})
        if not parity_ok:
            sys.exit(1)
    except Exception as e:
        fail(e)
