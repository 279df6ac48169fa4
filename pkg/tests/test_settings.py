import pytest

from config.settings import ConfigManager
from core.command_handler import SessionOptions


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for name in ("CA_LAW_SEED", "CA_LOG_LEVEL", "CA_NO_COLOR"):
        monkeypatch.delenv(name, raising=False)


def test_shipped_config():
    config = ConfigManager()
    assert config.law_settings.seed == 1998
    assert config.law_settings.samples == 200
    assert config.repl_settings.prompt == "ca> "
    assert config.codegen_settings.number_type == "Number"
    assert config.logging_settings.level == "WARNING"


def test_absent_file_means_defaults(tmp_path):
    config = ConfigManager(tmp_path / "nowhere.yaml")
    assert config.law_settings.tuple_limit == 4096
    assert config.codegen_settings.indent == 2


def test_partial_file(tmp_path):
    path = tmp_path / "config.yaml"
    path.write_text("laws:\n  samples: 50\ncodegen:\n  indent: 4\n", encoding="utf-8")
    config = ConfigManager(path)
    assert config.law_settings.samples == 50
    assert config.law_settings.seed == 1998
    options = SessionOptions.from_config(config)
    assert (options.samples, options.indent) == (50, 4)


@pytest.mark.parametrize("text", ["laws: [1, 2", "- just\n- a list\n", "laws: 3\n", "laws:\n  seed: soon\n"])
def test_bad_file(tmp_path, text):
    path = tmp_path / "config.yaml"
    path.write_text(text, encoding="utf-8")
    with pytest.raises(RuntimeError, match="Error loading config.yaml"):
        ConfigManager(path)


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("CA_LAW_SEED", "7")
    monkeypatch.setenv("CA_LOG_LEVEL", "debug")
    monkeypatch.setenv("CA_NO_COLOR", "1")
    config = ConfigManager()
    assert config.law_settings.seed == 7
    assert config.logging_settings.level == "DEBUG"
    assert config.repl_settings.color is False


def test_bad_seed_override(monkeypatch):
    monkeypatch.setenv("CA_LAW_SEED", "seven")
    with pytest.raises(RuntimeError):
        ConfigManager()
