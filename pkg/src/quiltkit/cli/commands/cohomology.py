import click

from quiltkit.cli.utils import emit, fail, read_model, settings
from quiltkit.core.graded import euler_characteristic
from quiltkit.shared.codec import complex_from_model
from quiltkit.shared.models import ComplexModel


@click.command()
@click.argument("path", type=click.Path())
def cohomology(path: str) -> None:
    """Cohomology of a Z/N-graded chain complex, with torsion over Z"""
    try:
        opts = settings()
        cx = complex_from_model(read_model(ComplexModel, path), opts["modulus"], opts["ring"])
        groups = cx.cohomology()
        emit(
            {
                "modulus": cx.module.modulus,
                "ring": cx.module.ring,
                "groups": {
                    str(k): {"rank": g.rank, "torsion": list(g.torsion)}
                    for k, g in groups.items()
                },
                "euler_characteristic": euler_characteristic(cx.module),
            }
        )
    except Exception as e:
        fail(e)
