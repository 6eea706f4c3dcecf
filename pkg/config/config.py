import json
import os
from pathlib import Path
from typing import Any, Dict, Optional

from dotenv import load_dotenv

# Load .env from the project root
load_dotenv()

DEFAULT_SETTINGS_PATH = Path(__file__).with_name("default_settings.json")

# Centralized access to environment variables
QSAMPLING_WORKERS = os.getenv("QSAMPLING_WORKERS")
QSAMPLING_LOG_LEVEL = os.getenv("QSAMPLING_LOG_LEVEL", "WARNING")
QSAMPLING_SETTINGS = os.getenv("QSAMPLING_SETTINGS")


def _merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    merged = dict(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def load_settings(path: Optional[str] = None) -> Dict[str, Any]:
    """Default settings, overlaid key by key with the JSON file named by
    ``path`` or ``QSAMPLING_SETTINGS``."""
    with open(DEFAULT_SETTINGS_PATH, "r", encoding="utf-8") as f:
        settings = json.load(f)

    override_path = path or QSAMPLING_SETTINGS
    if override_path:
        with open(override_path, "r", encoding="utf-8") as f:
            settings = _merge(settings, json.load(f))
    return settings


def worker_count() -> int:
    if QSAMPLING_WORKERS:
        try:
            return max(1, int(QSAMPLING_WORKERS))
        except ValueError:
            raise ValueError(f"QSAMPLING_WORKERS must be an integer, got {QSAMPLING_WORKERS!r}")
    return os.cpu_count() or 1


SETTINGS = load_settings()
