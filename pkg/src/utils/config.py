"""Settings loading: YAML defaults, optional override file, environment"""

import logging
import os
from multiprocessing import cpu_count
from pathlib import Path
from typing import Any, Dict, Optional

import yaml
from dotenv import load_dotenv
from pydantic import ValidationError

from src.models.settings import Settings
from src.utils.errors import UsageError

logger = logging.getLogger(__name__)

DEFAULT_CONFIG = Path(__file__).resolve().parent.parent.parent / "config" / "defaults.yaml"

_settings: Optional[Settings] = None


def _deep_merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    merged = dict(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def _read_yaml(path: Path) -> Dict[str, Any]:
    try:
        with open(path, 'r') as f:
            data = yaml.safe_load(f) or {}
    except FileNotFoundError:
        raise UsageError(f"Config file not found: {path}")
    except yaml.YAMLError as e:
        raise UsageError(f"Config file {path} is not valid YAML: {e}")
    if not isinstance(data, dict):
        raise UsageError(f"Config file {path} must contain a mapping")
    return data


def _env_overrides() -> Dict[str, Any]:
    overrides: Dict[str, Any] = {}
    threads = os.getenv('BETAGAP_THREADS')
    if threads:
        try:
            overrides.setdefault('montecarlo', {})['threads'] = int(threads)
        except ValueError:
            raise UsageError(f"BETAGAP_THREADS must be an integer, got {threads!r}")
    cache_dir = os.getenv('BETAGAP_CACHE_DIR')
    if cache_dir:
        overrides.setdefault('cache', {})['directory'] = cache_dir
    if os.getenv('LOG_LEVEL'):
        overrides.setdefault('logging', {})['level'] = os.getenv('LOG_LEVEL')
    if os.getenv('LOG_FORMAT'):
        overrides.setdefault('logging', {})['format'] = os.getenv('LOG_FORMAT')
    return overrides


def load_settings(path: Optional[str] = None) -> Settings:
    """
    Build Settings from the bundled defaults, an optional override file and the environment.

    Args:
        path: Extra YAML file merged over the defaults. Falls back to BETAGAP_CONFIG.

    Returns:
        Validated Settings
    """
    load_dotenv()

    data = _read_yaml(DEFAULT_CONFIG) if DEFAULT_CONFIG.exists() else {}
    override_path = path or os.getenv('BETAGAP_CONFIG')
    if override_path:
        data = _deep_merge(data, _read_yaml(Path(override_path)))
        logger.debug(f"Merged config override from {override_path}")
    data = _deep_merge(data, _env_overrides())

    try:
        return Settings.model_validate(data)
    except ValidationError as e:
        raise UsageError("Invalid configuration", details={'errors': e.errors()})


def get_settings() -> Settings:
    """Get the process-wide settings, loading them on first use"""
    global _settings
    if _settings is None:
        _settings = load_settings()
    return _settings


def configure(path: Optional[str] = None) -> Settings:
    """Reload the process-wide settings, e.g. after the CLI parsed --config"""
    global _settings
    _settings = load_settings(path)
    return _settings


def reset_settings():
    """Drop cached settings (tests)"""
    global _settings
    _settings = None


def default_threads(requested: Optional[int] = None) -> int:
    """Worker count: explicit request, then config/BETAGAP_THREADS, then logical cores"""
    if requested is not None:
        return max(1, int(requested))
    configured = get_settings().montecarlo.threads
    if configured is not None:
        return configured
    return max(1, cpu_count())
