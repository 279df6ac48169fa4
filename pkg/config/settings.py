"""
Configuration manager for the ca computer-algebra kernel.
Handles loading and managing all configuration settings.
"""

import logging
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Optional

import yaml
from dotenv import load_dotenv


@dataclass
class LawSettings:
    """Sampling parameters for law checking."""
    seed: int = 1998
    samples: int = 200
    tuple_limit: int = 4096
    value_range: int = 9


@dataclass
class ReplSettings:
    """Interactive session settings."""
    prompt: str = "ca> "
    continuation_prompt: str = "... "
    echo_bindings: bool = True
    color: bool = True


@dataclass
class CodegenSettings:
    """Emitted-code layout."""
    indent: int = 2
    number_type: str = "Number"


@dataclass
class LoggingSettings:
    level: str = "WARNING"
    format: str = "%(asctime)s - %(name)s - %(levelname)s - [%(filename)s:%(lineno)d] - %(message)s"
    file: Optional[str] = None
    error_file: Optional[str] = None


class ConfigManager:
    """Configuration manager class."""

    def __init__(self, config_file: Optional[Path] = None):
        """Initialize configuration manager."""
        self.logger = logging.getLogger(__name__)
        self.config_dir = Path(__file__).parent
        self.project_root = self.config_dir.parent
        self.config_file = Path(config_file) if config_file else self.config_dir / "config.yaml"

        load_dotenv()
        self._load_config()
        self._load_env_variables()

    @staticmethod
    def _section(config: Dict[str, Any], name: str) -> Dict[str, Any]:
        section = config.get(name) or {}
        if not isinstance(section, dict):
            raise ValueError(f"section '{name}' must be a mapping")
        return section

    def _load_config(self):
        """Load main configuration from YAML file; an absent file means defaults."""
        config: Dict[str, Any] = {}
        if self.config_file.exists():
            try:
                with open(self.config_file, "r", encoding="utf-8") as f:
                    config = yaml.safe_load(f) or {}
                if not isinstance(config, dict):
                    raise ValueError("top level must be a mapping")
                laws = self._section(config, "laws")
                repl = self._section(config, "repl")
                codegen = self._section(config, "codegen")
                logging_config = self._section(config, "logging")
                self.law_settings = LawSettings(
                    seed=int(laws.get("seed", 1998)),
                    samples=int(laws.get("samples", 200)),
                    tuple_limit=int(laws.get("tuple_limit", 4096)),
                    value_range=int(laws.get("value_range", 9)),
                )
                self.repl_settings = ReplSettings(
                    prompt=str(repl.get("prompt", "ca> ")),
                    continuation_prompt=str(repl.get("continuation_prompt", "... ")),
                    echo_bindings=bool(repl.get("echo_bindings", True)),
                    color=bool(repl.get("color", True)),
                )
                self.codegen_settings = CodegenSettings(
                    indent=int(codegen.get("indent", 2)),
                    number_type=str(codegen.get("number_type", "Number")),
                )
                self.logging_settings = LoggingSettings(
                    level=str(logging_config.get("level", "WARNING")).upper(),
                    format=logging_config.get("format", LoggingSettings.format),
                    file=logging_config.get("file"),
                    error_file=logging_config.get("error_file"),
                )
            except Exception as e:
                raise RuntimeError(f"Error loading config.yaml: {e}")
        else:
            self.logger.debug(f"No configuration file at {self.config_file}, using defaults")
            self.law_settings = LawSettings()
            self.repl_settings = ReplSettings()
            self.codegen_settings = CodegenSettings()
            self.logging_settings = LoggingSettings()

    def _load_env_variables(self):
        """Apply environment overrides."""
        seed = os.getenv("CA_LAW_SEED")
        if seed:
            try:
                self.law_settings.seed = int(seed)
            except ValueError:
                raise RuntimeError(f"CA_LAW_SEED must be an integer, got {seed!r}")
        level = os.getenv("CA_LOG_LEVEL")
        if level:
            self.logging_settings.level = level.upper()
        if os.getenv("CA_NO_COLOR"):
            self.repl_settings.color = False
