import pytest

from quiltkit.shared.config import Config, load_env


class TestConfig:
    def test_defaults(self, monkeypatch, tmp_path):
        for key in (
            "QUILTKIT_FIXTURES",
            "QUILTKIT_MODULUS",
            "QUILTKIT_RING",
            "QUILTKIT_SEED",
            "QUILTKIT_VERBOSE",
        ):
            monkeypatch.delenv(key, raising=False)
        monkeypatch.chdir(tmp_path)
        cfg = Config()
        assert (cfg.modulus, cfg.ring, cfg.seed, cfg.verbose) == (2, "z", 0, False)
        assert cfg.fixtures_dir == tmp_path / "fixtures"
        assert cfg.validate_cli()

    def test_environment_overrides(self, monkeypatch):
        monkeypatch.setenv("QUILTKIT_MODULUS", "8")
        monkeypatch.setenv("QUILTKIT_RING", "Z2")
        monkeypatch.setenv("QUILTKIT_VERBOSE", "yes")
        cfg = Config()
        assert (cfg.modulus, cfg.ring, cfg.verbose) == (8, "z2", True)

    @pytest.mark.parametrize(
        "key, value", [("QUILTKIT_MODULUS", "5"), ("QUILTKIT_RING", "q"), ("QUILTKIT_SEED", "x")]
    )
    def test_invalid_values(self, monkeypatch, key, value):
        monkeypatch.setenv(key, value)
        with pytest.raises(ValueError, match=key):
            Config().validate_cli()

    def test_load_env_file(self, monkeypatch, tmp_path):
        # registered so the value loaded from the file is removed afterwards
        monkeypatch.setenv("QUILTKIT_SEED", "0")
        monkeypatch.delenv("QUILTKIT_SEED")
        env = tmp_path / ".env"
        env.write_text("QUILTKIT_SEED=42\n", encoding="utf-8")
        load_env(env)
        assert Config().seed == 42
