"""Scenario configuration files (strict JSON with unit-suffixed keys)."""

import json
import os
from typing import Any

from loguru import logger
from pydantic import ValidationError

from ..core.scenario import ScenarioConfig


class ConfigError(ValueError):
    """A configuration file could not be parsed or failed validation."""


def format_validation_error(error: ValidationError) -> str:
    """One line per failing field, e.g. `sphere.radius_m: Input should be greater than 0`."""
    lines = []
    for item in error.errors():
        location = ".".join(str(part) for part in item["loc"]) or "<root>"
        lines.append(f"{location}: {item['msg']}")
    return "; ".join(lines)


class ConfigLoader:
    """Handles loading scenario configurations from JSON files and dictionaries."""

    @staticmethod
    def load_from_dict(data: Any, source: str = "<dict>") -> ScenarioConfig:
        try:
            return ScenarioConfig.model_validate(data)
        except ValidationError as e:
            message = format_validation_error(e)
            logger.error(f"Invalid configuration in {source}: {message}")
            raise ConfigError(f"Invalid configuration in {source}: {message}") from e

    @staticmethod
    def load_from_text(text: str, source: str = "<string>") -> ScenarioConfig:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            logger.error(f"Failed to parse {source}: {e}")
            raise ConfigError(
                f"{source}: invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}"
            ) from e
        return ConfigLoader.load_from_dict(data, source)

    @classmethod
    def load_from_file(cls, file_path: str) -> ScenarioConfig:
        file_path = os.path.normpath(file_path)
        if not os.path.isfile(file_path):
            raise ConfigError(f"Configuration file not found: {file_path}")
        with open(file_path, encoding="utf-8") as f:
            text = f.read()
        config = cls.load_from_text(text, source=file_path)
        logger.debug(f"Loaded configuration {file_path} (digest {config.digest()[:12]})")
        return config


def load_config(path: str) -> ScenarioConfig:
    """Load and fully validate a scenario configuration file."""
    return ConfigLoader.load_from_file(path)


def save_config(config: ScenarioConfig, path: str) -> None:
    """Write the canonical JSON form of a configuration."""
    with open(path, "w", encoding="utf-8") as f:
        f.write(config.canonical_json())
        f.write("\n")
    logger.info(f"Wrote configuration {path}")
