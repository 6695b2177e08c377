import json
from pathlib import Path
from typing import Any, Callable, Dict, Optional, Tuple

from pydantic import ValidationError

from quiltkit.core import builders, section6
from quiltkit.core.quilt import QuiltedSurface, validate
from quiltkit.shared.codec import quilt_from_model, quilt_to_model
from quiltkit.shared.config import Config
from quiltkit.shared.errors import FixtureNotFound, InvalidQuilt, SchemaError
from quiltkit.shared.models import QuiltModel

# Quilts available by name without a JSON file
BUILTIN_QUILTS: Dict[str, Callable[..., QuiltedSurface]] = {
    "strip": builders.strip,
    "cap": builders.cap,
    "cup": builders.cup,
    "disk": builders.disk,
    "annulus": builders.annulus,
    "cylinder": section6.cylinder,
    "psi_half": section6.psi_half,
    "theta_half": section6.theta_half,
    "quilted_pants": section6.quilted_pants,
    "three_components": section6.three_components,
    "defect_disk_m1": section6.defect_disk_m1,
    "defect_disk_m0": section6.defect_disk_m0,
    "three_point_pants": section6.three_point_pants,
    "two_point_pants": section6.two_point_pants,
    "two_correspondence_cylinder": section6.two_correspondence_cylinder,
}


def _fixture_path(name: str, directory: Optional[Path] = None) -> Path:
    directory = Path(directory) if directory is not None else Config().fixtures_dir
    return directory / f"{name}.json"


def get_fixture(name: str, directory: Optional[Path] = None) -> Optional[Dict[str, Any]]:
    """Read a single fixture JSON: <name>.json"""
    try:
        return json.loads(_fixture_path(name, directory).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError):
        return None


def save_fixture(name: str, data: Dict[str, Any], directory: Optional[Path] = None) -> bool:
    """Write a single fixture JSON: <name>.json"""
    path = _fixture_path(name, directory)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return True


def list_fixtures(directory: Optional[Path] = None) -> Dict[str, Dict[str, Any]]:
    """All readable *.json fixtures in the directory, as {name: data}"""
    directory = Path(directory) if directory is not None else Config().fixtures_dir
    fixtures: Dict[str, Dict[str, Any]] = {}
    if not directory.is_dir():
        return fixtures
    for path in sorted(directory.glob("*.json")):
        data = get_fixture(path.stem, directory)
        if data is not None:
            fixtures[path.stem] = data
    return fixtures


def parse_quilt(data: Dict[str, Any], modulus: Optional[int] = None) -> QuiltedSurface:
    try:
        model = QuiltModel.model_validate(data)
    except ValidationError as e:
        raise SchemaError(f"Invalid quilt: {e.error_count()} schema errors", {"errors": _errors(e)})
    return quilt_from_model(model, modulus or Config().modulus)


def _errors(e: ValidationError) -> list:
    return [f"{'.'.join(str(x) for x in err['loc'])}: {err['msg']}" for err in e.errors()]


def load_quilt(
    name: str, directory: Optional[Path] = None, modulus: Optional[int] = None
) -> QuiltedSurface:
    """Quilt by fixture name: a JSON file first, then the built-in quilts"""
    data = get_fixture(name, directory)
    if data is not None:
        return parse_quilt(data, modulus)
    if name in BUILTIN_QUILTS:
        return BUILTIN_QUILTS[name](**({"modulus": modulus} if modulus else {}))
    raise FixtureNotFound(f"No fixture named {name}", {"name": name})


def export_builtin(name: str, directory: Optional[Path] = None, modulus: int = 2) -> bool:
    if name not in BUILTIN_QUILTS:
        raise FixtureNotFound(f"No built-in quilt named {name}", {"name": name})
    return save_fixture(name, quilt_to_model(BUILTIN_QUILTS[name](modulus=modulus)), directory)


def check_fixture(name: str, directory: Optional[Path] = None) -> Tuple[bool, Dict[str, Any]]:
    """Check that a fixture parses and validates; returns (ok, detail)"""
    try:
        q = load_quilt(name, directory)
    except InvalidQuilt as e:
        return False, {"violations": e.violations}
    except (SchemaError, FixtureNotFound) as e:
        return False, e.to_dict()
    violations = validate(q)
    return not violations, {"violations": violations}
