"""Configuration loading utilities."""

import json
import re
from collections.abc import Callable
from pathlib import Path
from typing import Any

from loguru import logger
from pydantic import ValidationError

from svdperturb.config.schema import Config
from svdperturb.utils.helpers import ensure_dir


def get_config_path() -> Path:
    """Default configuration file path."""
    return Path.home() / ".svdperturb" / "config.json"


def load_config(config_path: Path | None = None) -> Config:
    """
    Load configuration from a camelCase JSON file, or defaults.

    Environment variables (SVDPERTURB_*) apply in both cases; values read
    from the file take precedence over them.

    Args:
        config_path: Optional path to config file. Uses default if not provided.

    Returns:
        Loaded configuration object.
    """
    path = config_path or get_config_path()

    if path.exists():
        try:
            with open(path, encoding="utf-8") as f:
                data = json.load(f)
            return Config(**convert_keys(data))
        except (json.JSONDecodeError, ValidationError, OSError, TypeError) as e:
            logger.warning(f"Failed to load config from {path}: {e}; using defaults")

    return Config()


def save_config(config: Config, config_path: Path | None = None) -> Path:
    """
    Save configuration as camelCase JSON.

    Returns:
        The path written.
    """
    path = config_path or get_config_path()
    ensure_dir(path.parent)
    data = convert_to_camel(config.model_dump())
    with open(path, "w", encoding="utf-8") as f:
        json.dump(data, f, indent=2)
    return path


def _rekey(data: Any, rename: Callable[[str], str]) -> Any:
    if isinstance(data, dict):
        return {rename(k): _rekey(v, rename) for k, v in data.items()}
    if isinstance(data, list):
        return [_rekey(item, rename) for item in data]
    return data


def convert_keys(data: Any) -> Any:
    """camelCase file keys to the snake_case field names."""
    return _rekey(data, camel_to_snake)


def convert_to_camel(data: Any) -> Any:
    return _rekey(data, snake_to_camel)


def camel_to_snake(name: str) -> str:
    return re.sub(r"(?<!^)(?=[A-Z])", "_", name).lower()


def snake_to_camel(name: str) -> str:
    head, *rest = name.split("_")
    return head + "".join(part.title() for part in rest)
