"""YAML settings loader."""

import copy
import logging
from pathlib import Path
from typing import Any, Optional

import jsonschema
import yaml
from rich.console import Console

from ..models.config import RunConfiguration

LOGGER = logging.getLogger(__name__)

DEFAULTS_PATH = Path(__file__).parent.parent / "templates" / "defaults.yaml"


class SettingsError(Exception):
    """Raised when a settings document cannot be read or validated."""

    exit_code = 2


def _section(properties: dict[str, Any]) -> dict[str, Any]:
    return {"type": "object", "additionalProperties": False, "properties": properties}


class SettingsLoader:
    """Loads YAML settings and merges them over the packaged defaults."""

    SETTINGS_SCHEMA = {
        "type": "object",
        "additionalProperties": False,
        "properties": {
            "spectrum": _section(
                {
                    "tol": {"type": "number", "exclusiveMinimum": 0, "exclusiveMaximum": 1},
                    "cluster_factor": {"type": "number", "minimum": 1},
                }
            ),
            "quadrature": _section(
                {
                    "contour_nodes": {"type": "integer", "minimum": 16},
                    "grid": {"type": "integer", "minimum": 16},
                    "box": {"type": "integer", "minimum": 8},
                    "admissibility_nodes": {"type": "integer", "minimum": 4},
                }
            ),
            "physics": _section({"hbar": {"type": "number", "exclusiveMinimum": 0}}),
            "threads": {"type": "integer", "minimum": 1},
        },
    }

    def __init__(self, console: Optional[Console] = None, defaults_path: Path = DEFAULTS_PATH):
        """Initialize the settings loader."""
        self.console = console or Console(stderr=True)
        self.defaults_path = defaults_path

    def _read(self, path: Path) -> dict[str, Any]:
        if not path.exists():
            raise SettingsError(f"Settings file not found: {path}")
        try:
            with open(path, "r", encoding="utf-8") as f:
                data = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise SettingsError(f"Invalid YAML syntax in {path}: {e}")
        except OSError as e:
            raise SettingsError(f"Error reading {path}: {e}")
        return {} if data is None else data

    def validate_dict(self, data: Any) -> None:
        """
        Check a settings mapping against the schema.

        Raises:
            SettingsError: On unknown keys or out-of-range values.
        """
        try:
            jsonschema.validate(data, self.SETTINGS_SCHEMA)
        except jsonschema.ValidationError as e:
            location = ".".join(str(part) for part in e.absolute_path) or "<root>"
            raise SettingsError(f"Settings validation failed at {location}: {e.message}")

    def load_defaults(self) -> dict[str, Any]:
        data = self._read(self.defaults_path)
        self.validate_dict(data)
        return data

    def load(self, path: Optional[Path] = None) -> RunConfiguration:
        """
        Load the run configuration.

        Args:
            path: Optional user settings file merged over the defaults.

        Returns:
            The merged configuration.

        Raises:
            SettingsError: If a file is missing, malformed or invalid.
        """
        merged = self.load_defaults()
        if path is not None:
            user = self._read(path)
            self.validate_dict(user)
            merged = merge_settings(merged, user)
            LOGGER.debug("Merged settings from %s", path)
        config = RunConfiguration.from_dict(merged)
        if not config.validate():
            raise SettingsError(f"Settings are inconsistent: {config}")
        return config


def merge_settings(base: dict[str, Any], override: dict[str, Any]) -> dict[str, Any]:
    """Recursive merge; override wins on leaves."""
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = merge_settings(merged[key], value)
        else:
            merged[key] = value
    return merged
