import json
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Type, TypeVar

import click
from pydantic import BaseModel, ValidationError

from quiltkit.core.quilt import EndRef, QuiltedSurface
from quiltkit.shared.config import Config
from quiltkit.shared.errors import FixtureNotFound, InputError, QuiltkitError, SchemaError
from quiltkit.shared.fixtures import load_quilt, parse_quilt

ModelT = TypeVar("ModelT", bound=BaseModel)


def settings() -> Dict[str, Any]:
    """Options of the root command, or the configured defaults outside a click context"""
    ctx = click.get_current_context(silent=True)
    if ctx is not None and ctx.find_root().obj:
        return ctx.find_root().obj
    cfg = Config()
    return {
        "modulus": cfg.modulus,
        "ring": cfg.ring,
        "verbose": cfg.verbose,
        "output": None,
        "fixtures": cfg.fixtures_dir,
    }


def log(tag: str, message: str, always: bool = False) -> None:
    """Tagged progress line on stderr"""
    if always or settings().get("verbose"):
        click.echo(f"[{tag}] {message}", err=True)


def dumps(payload: Any) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def emit(payload: Any) -> None:
    """Write the JSON report to --output or stdout"""
    text = dumps(payload)
    output = settings().get("output")
    if output:
        Path(output).write_text(text, encoding="utf-8")
        log("Output", f"Report written to {output}")
    else:
        click.echo(text, nl=False)


def fail(e: Exception) -> None:
    """Report an exception as a JSON error object and exit with its code"""
    if isinstance(e, QuiltkitError):
        click.echo(dumps(e.to_dict()), nl=False)
        sys.exit(e.exit_code)
    click.echo(f"\nError: {str(e)}", err=True)
    sys.exit(2)


def read_json(path: str) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError as e:
        raise FixtureNotFound(f"File not found: {path}", {"path": path}) from e
    except OSError as e:
        raise InputError(f"Cannot read {path}: {e}", {"path": path}) from e
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path} is not valid JSON: {e}", {"path": path}) from e


def parse(model: Type[ModelT], data: Any) -> ModelT:
    try:
        return model.model_validate(data)
    except ValidationError as e:
        errors = [f"{'.'.join(str(x) for x in err['loc'])}: {err['msg']}" for err in e.errors()]
        raise SchemaError(f"Input does not match {model.__name__}", {"errors": errors}) from e


def read_model(model: Type[ModelT], path: str) -> ModelT:
    return parse(model, read_json(path))


def resolver(
    base: Optional[Path] = None, modulus: Optional[int] = None
) -> Callable[[str], QuiltedSurface]:
    """Quilt lookup by name: next to the input file, then the fixture directory"""
    opts = settings()
    modulus = modulus or opts.get("modulus")

    def resolve(name: str) -> QuiltedSurface:
        if base is not None and (base / f"{name}.json").exists():
            return load_quilt(name, base, modulus)
        return load_quilt(name, opts.get("fixtures"), modulus)

    return resolve


def read_quilt(source: str) -> QuiltedSurface:
    """A quilt from a JSON file, or a fixture name"""
    path = Path(source)
    if path.suffix == ".json" or path.exists():
        return parse_quilt(read_json(source), settings().get("modulus"))
    return resolver()(source)


def end_ref(text: str):
    """Positional index ("0") or patch/point ("P0/z")"""
    if text.lstrip("-").isdigit():
        return int(text)
    if "/" not in text:
        raise SchemaError(f"End reference {text!r} is neither an index nor patch/point")
    patch, point = text.split("/", 1)
    return EndRef(patch, point)


def show_checks(tag: str, checks: List[Dict[str, Any]]) -> bool:
    """Print pass/fail per check on stderr; True when all passed"""
    for check in checks:
        status = "PASS" if check["pass"] else "FAIL"
        log(tag, f"{status} {check['check']}", always=True)
    failed = sum(1 for c in checks if not c["pass"])
    if failed:
        log(tag, f"{failed} of {len(checks)} check(s) failed", always=True)
    else:
        log(tag, f"All {len(checks)} check(s) passed", always=True)
    return not failed
