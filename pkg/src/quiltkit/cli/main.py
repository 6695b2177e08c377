import sys
from pathlib import Path
from typing import Optional

import click

from quiltkit import __version__
from quiltkit.cli.commands import (
    cohomology,
    compose,
    degree,
    demo,
    ends,
    euler,
    evaluate,
    fixtures,
    glue,
    kashiwara,
    maslov,
    shrink,
    type_,
    validate,
)
from quiltkit.shared.config import RINGS, Config, load_env


def display_banner():
    """Load and display banner on stderr"""
    if len(sys.argv) > 1 and sys.argv[1] in ["--help", "-h", "--version", "-v"]:
        return

    banner_path = Path(__file__).parent / "banner.txt"
    try:
        with open(banner_path, "r", encoding="utf-8") as f:
            banner = f.read()
            if banner:
                click.echo(banner, err=True)
    except FileNotFoundError:
        pass


@click.group()
@click.version_option(version=__version__, prog_name="quiltkit")
@click.option("--ring", type=click.Choice(RINGS), default=None, help="Coefficient ring")
@click.option("--modulus", type=int, default=None, help="Grading modulus N (even)")
@click.option("--verbose", is_flag=True, help="Log progress to stderr")
@click.option("--output", "-o", type=click.Path(), default=None, help="Write the JSON report here")
@click.pass_context
def cli(
    ctx: click.Context,
    ring: Optional[str],
    modulus: Optional[int],
    verbose: bool,
    output: Optional[str],
):
    """Quilted surfaces, their gluings and formal relative invariants"""
    load_env()
    cfg = Config()
    if ring is not None:
        cfg.QUILTKIT_RING = ring
    if modulus is not None:
        cfg.QUILTKIT_MODULUS = str(modulus)
    try:
        cfg.validate_cli()
    except ValueError as e:
        click.echo(f"\nError: {str(e)}", err=True)
        sys.exit(3)
    ctx.obj = {
        "modulus": cfg.modulus,
        "ring": cfg.ring,
        "verbose": verbose or cfg.verbose,
        "output": output,
        "fixtures": cfg.fixtures_dir,
    }


# Register commands
cli.add_command(validate)
cli.add_command(ends)
cli.add_command(euler)
cli.add_command(degree)
cli.add_command(glue)
cli.add_command(shrink)
cli.add_command(type_)
cli.add_command(maslov)
cli.add_command(kashiwara)
cli.add_command(compose)
cli.add_command(cohomology)
cli.add_command(evaluate)
cli.add_command(demo)
cli.add_command(fixtures)


def main():
    """Entry point for CLI"""
    display_banner()
    cli()


if __name__ == "__main__":
    main()
