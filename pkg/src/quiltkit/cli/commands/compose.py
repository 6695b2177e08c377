import click

from quiltkit.cli.utils import emit, fail, log, read_model
from quiltkit.core import symplectic
from quiltkit.shared.codec import correspondence_from_model, correspondence_to_model
from quiltkit.shared.errors import CompositionNotEmbedded
from quiltkit.shared.models import CorrespondenceModel


@click.command()
@click.argument("first", type=click.Path())
@click.argument("second", type=click.Path())
def compose(first: str, second: str) -> None:
    """Geometric composition of two linear Lagrangian correspondences"""
    try:
        L01 = correspondence_from_model(read_model(CorrespondenceModel, first))
        L12 = correspondence_from_model(read_model(CorrespondenceModel, second))
        result = symplectic.compose(L01, L12)
        log("Compose", f"transverse={result.transverse}, kernel_dim={result.kernel_dim}")
        if not result.embedded:
            raise CompositionNotEmbedded(
                "Composition is not transverse and embedded",
                {"transverse": result.transverse, "kernel_dim": result.kernel_dim},
            )
        emit(
            {
                "transverse": result.transverse,
                "embedded": result.embedded,
                "kernel_dim": result.kernel_dim,
                "composition": correspondence_to_model(result.composition),
            }
        )
    except Exception as e:
        fail(e)
