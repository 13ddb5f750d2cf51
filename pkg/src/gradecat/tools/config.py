"""
Runtime settings: defaults, then a YAML file, then environment, then CLI flags.
"""
import os
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Any, Mapping, Optional

import yaml

from ..errors import SchemaError

DEFAULT_CONFIG_FILE = "gradecat.yaml"
FORMATS = ("human", "json")


@dataclass(frozen=True)
class Settings:
    """Knobs shared by every subcommand."""
    max_enum: int = 10 ** 6
    default_format: str = "human"
    default_seed: int = 0
    workers: int = 1
    verbose: bool = False

    def with_overrides(self, **overrides: Any) -> "Settings":
        """Copy with the non-None overrides applied."""
        return _checked(replace(self, **{k: v for k, v in overrides.items() if v is not None}))


def _checked(s: Settings) -> Settings:
    if s.max_enum < 1:
        raise SchemaError("max_enum must be positive", "max_enum")
    if s.workers < 1:
        raise SchemaError("workers must be positive", "workers")
    if s.default_format not in FORMATS:
        raise SchemaError(f"format must be one of {', '.join(FORMATS)}", "default_format")
    return s


def _from_mapping(base: Settings, data: Mapping[str, Any]) -> Settings:
    known = {f.name for f in fields(Settings)}
    types = {"max_enum": int, "default_seed": int, "workers": int, "verbose": bool, "default_format": str}
    values = {}
    for key, value in data.items():
        if key not in known:
            raise SchemaError(f"unknown setting '{key}'", str(key))
        expected = types[key]
        if expected is int and (isinstance(value, bool) or not isinstance(value, int)):
            raise SchemaError("expected an integer", key)
        if not isinstance(value, expected):
            raise SchemaError(f"expected {expected.__name__}", key)
        values[key] = value
    return _checked(replace(base, **values))


def _env_int(name: str) -> Optional[int]:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return None
    try:
        return int(raw)
    except ValueError:
        raise SchemaError(f"{name}={raw!r} is not an integer", name)


def load_settings(config_path: Optional[str] = None, cwd: Optional[Path] = None) -> Settings:
    """
    Resolve settings.

    Args:
        config_path: explicit YAML file; when absent, gradecat.yaml in cwd is used if present
        cwd: directory searched for the default file (current directory by default)

    Returns:
        Settings with file and environment values applied

    Raises:
        SchemaError: on unknown keys or badly typed values
        OSError: if an explicit config file cannot be read
    """
    settings = Settings()
    path = Path(config_path) if config_path else (cwd or Path.cwd()) / DEFAULT_CONFIG_FILE
    if config_path or path.exists():
        with open(path, 'r') as f:
            try:
                data = yaml.safe_load(f) or {}
            except yaml.YAMLError as e:
                raise SchemaError(f"{path} does not parse: {e}")
        if not isinstance(data, Mapping):
            raise SchemaError(f"{path} must hold a mapping of settings")
        settings = _from_mapping(settings, data)
    return settings.with_overrides(
        max_enum=_env_int("GRADECAT_MAX_ENUM"),
        workers=_env_int("GRADECAT_WORKERS"),
    )
