from quiltkit.cli.commands.validate import validate
from quiltkit.cli.commands.ends import ends
from quiltkit.cli.commands.euler import euler
from quiltkit.cli.commands.degree import degree
from quiltkit.cli.commands.glue import glue
from quiltkit.cli.commands.shrink import shrink
from quiltkit.cli.commands.type import type_
from quiltkit.cli.commands.maslov import maslov
from quiltkit.cli.commands.kashiwara import kashiwara
from quiltkit.cli.commands.compose import compose
from quiltkit.cli.commands.cohomology import cohomology
from quiltkit.cli.commands.evaluate import evaluate
from quiltkit.cli.commands.demo import demo
from quiltkit.cli.commands.fixtures import fixtures

__all__ = [
    "validate",
    "ends",
    "euler",
    "degree",
    "glue",
    "shrink",
    "type_",
    "maslov",
    "kashiwara",
    "compose",
    "cohomology",
    "evaluate",
    "demo",
    "fixtures",
]
