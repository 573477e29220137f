import json
import logging
from pathlib import Path
from typing import Any, Dict, Optional, Union

from pydantic import BaseModel, ValidationError

from config.config_constants import CONFIG_PATH
from config.config_models import CodehandSettings, CorrectionConfig
from utils.errors import ConfigError

logger = logging.getLogger("UnifiedConfigManager")

PathLike = Union[str, Path]

# Bare keys in a key=value file belong to this section.
DEFAULT_KV_SECTION = "correction_config"


def deep_merge_dicts(base: Dict[str, Any], overrides: Dict[str, Any]) -> Dict[str, Any]:
    """
    Recursively merge overrides into base.
    If both base[key] and overrides[key] are dicts, merge them.
    Otherwise, overrides[key] takes precedence.
    If an override is an empty dict, skip it so that the base value is preserved.
    """
    merged = dict(base)
    for key, val in overrides.items():
        if isinstance(val, dict) and not val:
            continue
        if key in merged and isinstance(merged[key], dict) and isinstance(val, dict):
            merged[key] = deep_merge_dicts(merged[key], val)
        else:
            merged[key] = val
    return merged


def _parse_kv_value(raw: str) -> Any:
    text = raw.strip()
    lowered = text.lower()
    if lowered in ("true", "yes", "on"):
        return True
    if lowered in ("false", "no", "off"):
        return False
    if lowered in ("null", "none", ""):
        return None
    for cast in (int, float):
        try:
            return cast(text)
        except ValueError:
            pass
    return text


def parse_kv_text(text: str, source: str = "<text>") -> Dict[str, Any]:
    """
    Parses UTF-8 `key = value` lines. Keys are `section.key`, or bare keys
    which land in correction_config. '#' starts a comment line.
    """
    config: Dict[str, Any] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {stripped!r}")
        key, value = stripped.split("=", 1)
        key = key.strip()
        if not key:
            raise ConfigError(f"{source}:{lineno}: empty key")
        section, _, name = key.rpartition(".")
        config.setdefault(section or DEFAULT_KV_SECTION, {})[name] = _parse_kv_value(value)
    return config


def dump_kv_config(model: BaseModel, section: Optional[str] = None) -> str:
    """Serialises a settings model as `key = value` lines."""
    prefix = f"{section}." if section else ""
    lines = []
    for key, value in model.model_dump().items():
        if value is None:
            rendered = "null"
        elif isinstance(value, bool):
            rendered = "true" if value else "false"
        else:
            rendered = str(value)
        lines.append(f"{prefix}{key} = {rendered}")
    return "\n".join(lines) + "\n"


def load_kv_config(text: str) -> CorrectionConfig:
    """Reads a CorrectionConfig back from `key = value` text."""
    parsed = parse_kv_text(text)
    try:
        return CorrectionConfig(**parsed.get(DEFAULT_KV_SECTION, {}))
    except ValidationError as e:
        raise ConfigError(f"invalid correction config: {e}") from e


class UnifiedConfigManager:
    def __init__(self, config_path: PathLike = CONFIG_PATH):
        """
        Initialize with the path to the base JSON configuration file.
        """
        self.config_path = Path(config_path)

    def load_json_config(self, path: Optional[PathLike] = None) -> Dict[str, Any]:
        """Loads a configuration dictionary from a JSON file."""
        path = Path(path) if path else self.config_path
        try:
            with open(path, "r", encoding="utf-8") as f:
                config = json.load(f)
            logger.debug("Loaded config from %s: %s", path, config)
            return config
        except FileNotFoundError:
            if path == self.config_path:
                logger.warning("Config file not found: %s. Using built-in defaults.", path)
                return {}
            raise ConfigError(f"config file not found: {path}")
        except json.JSONDecodeError as e:
            raise ConfigError(f"error decoding JSON in {path}: {e}") from e

    def load_user_config(self, path: PathLike) -> Dict[str, Any]:
        """Loads a --config file: JSON when it parses as such, key=value otherwise."""
        path = Path(path)
        if path.suffix.lower() == ".json":
            return self.load_json_config(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as e:
            raise ConfigError(f"cannot read config file {path}: {e}") from e
        return parse_kv_text(text, source=str(path))

    def load_config(self,
                    user_config_path: Optional[PathLike] = None,
                    overrides: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
        """
        Merges, in increasing precedence: the base file, the user config file,
        and explicit overrides (CLI flags).
        """
        config = self.load_json_config()
        if user_config_path:
            config = deep_merge_dicts(config, self.load_user_config(user_config_path))
        if overrides:
            config = deep_merge_dicts(config, _drop_none(overrides))
        return config

    def load_settings(self,
                      user_config_path: Optional[PathLike] = None,
                      overrides: Optional[Dict[str, Any]] = None) -> CodehandSettings:
        return self.validate_config(self.load_config(user_config_path, overrides))

    @staticmethod
    def validate_config(config: Dict[str, Any]) -> CodehandSettings:
        try:
            return CodehandSettings(**config)
        except ValidationError as e:
            raise ConfigError(f"invalid configuration: {e}") from e


def _drop_none(overrides: Dict[str, Any]) -> Dict[str, Any]:
    """Flag values left unset (None) do not override anything."""
    cleaned: Dict[str, Any] = {}
    for key, val in overrides.items():
        if isinstance(val, dict):
            val = _drop_none(val)
            if val:
                cleaned[key] = val
        elif val is not None:
            cleaned[key] = val
    return cleaned
