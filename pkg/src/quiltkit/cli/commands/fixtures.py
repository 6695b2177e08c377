import sys
from typing import Optional

import click

from quiltkit.cli.utils import emit, fail, log, settings
from quiltkit.shared.fixtures import BUILTIN_QUILTS, check_fixture, export_builtin, list_fixtures


@click.command()
@click.option("--export", "export_name", default=None, help="Write a built-in quilt as JSON")
def fixtures(export_name: Optional[str]) -> None:
    """List the fixture directory and check that every quilt in it validates"""
    try:
        opts = settings()
        directory = opts["fixtures"]
        if export_name is not None:
            export_builtin(export_name, directory, opts["modulus"])
            log("Fixtures", f"Exported {export_name} to {directory}")

        found = list_fixtures(directory)
        log("Fixtures", f"{len(found)} fixture(s) in {directory}")

        report = {}
        for name, data in found.items():
            if "patches" not in data:
                report[name] = {"kind": "data"}
                continue
            ok, detail = check_fixture(name, directory)
            report[name] = {"kind": "quilt", "ok": ok, **detail}

        emit({"directory": str(directory), "fixtures": report, "builtins": sorted(BUILTIN_QUILTS)})
        if any(entry.get("ok") is False for entry in report.values()):
            sys.exit(1)
    except Exception as e:
        fail(e)
