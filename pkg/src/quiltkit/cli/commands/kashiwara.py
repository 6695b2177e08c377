import click

from quiltkit.cli.utils import emit, fail, read_model
from quiltkit.core.maslov import kashiwara_index
from quiltkit.shared.codec import lagrangian_from_model
from quiltkit.shared.models import KashiwaraRequest, LagrangianModel


@click.command()
@click.argument("path", type=click.Path())
def kashiwara(path: str) -> None:
    """Kashiwara index of three Lagrangian subspaces"""
    try:
        request = read_model(KashiwaraRequest, path)
        L1, L2, L3 = (
            lagrangian_from_model(LagrangianModel(dim=request.dim, basis=basis))
            for basis in request.lagrangians
        )
        emit({"index": kashiwara_index(L1, L2, L3)})
    except Exception as e:
        fail(e)
