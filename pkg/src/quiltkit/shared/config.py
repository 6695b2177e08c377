import os
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv

RINGS = ("z", "z2")


class Config:
    """Configuration class for quiltkit"""

    def __init__(self) -> None:
        # Fixture Configurations
        self.QUILTKIT_FIXTURES = os.environ.get(
            "QUILTKIT_FIXTURES", str(Path.cwd() / "fixtures")
        )

        # Grading Configurations
        self.QUILTKIT_MODULUS = os.environ.get("QUILTKIT_MODULUS", "2")
        self.QUILTKIT_RING = os.environ.get("QUILTKIT_RING", "z")

        # Demo Configurations
        self.QUILTKIT_SEED = os.environ.get("QUILTKIT_SEED", "0")
        self.QUILTKIT_VERBOSE = os.environ.get("QUILTKIT_VERBOSE", "")

    @property
    def modulus(self) -> int:
        return int(self.QUILTKIT_MODULUS)

    @property
    def ring(self) -> str:
        return self.QUILTKIT_RING.lower()

    @property
    def seed(self) -> int:
        return int(self.QUILTKIT_SEED)

    @property
    def verbose(self) -> bool:
        return self.QUILTKIT_VERBOSE.lower() in ("1", "true", "yes", "on")

    @property
    def fixtures_dir(self) -> Path:
        return Path(self.QUILTKIT_FIXTURES)

    def validate_cli(self) -> bool:
        """Validate configuration values used by the CLI"""
        problems = []
        if self.ring not in RINGS:
            problems.append(f"QUILTKIT_RING={self.QUILTKIT_RING}")
        try:
            if self.modulus <= 0 or self.modulus % 2:
                problems.append(f"QUILTKIT_MODULUS={self.QUILTKIT_MODULUS}")
        except ValueError:
            problems.append(f"QUILTKIT_MODULUS={self.QUILTKIT_MODULUS}")
        try:
            self.seed
        except ValueError:
            problems.append(f"QUILTKIT_SEED={self.QUILTKIT_SEED}")
        if problems:
            raise ValueError(f"Invalid config: {', '.join(problems)}")
        return True


def load_env(env_path: Optional[os.PathLike | str] = None) -> None:
    """Load environment variables from .env file"""
    if env_path is None:
        env_path = Path.cwd() / ".env"
    else:
        env_path = Path(env_path)

    if env_path.exists():
        load_dotenv(env_path)

