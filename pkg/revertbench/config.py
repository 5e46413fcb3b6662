"""Configuration management for revertbench.

User settings live in ~/.revertbench.yaml (or $REVERTBENCH_CONFIG). Experiment
manifests passed with --config are separate flat YAML files whose keys mirror
the command-line flags.
"""

from __future__ import annotations

import os
import tempfile
from pathlib import Path
from typing import Any

import psutil
import yaml

CONFIG_PATH = Path(
    os.environ.get("REVERTBENCH_CONFIG", Path.home() / ".revertbench.yaml")
).expanduser()

# Keys accepted in an experiment manifest; one per command-line flag
MANIFEST_KEYS = frozenset(
    {
        "data",
        "input-kind",
        "strategy",
        "gamma",
        "epsilon",
        "window",
        "eta",
        "tco2-literal-eq10",
        "format",
        "out",
        "seed",
        "workers",
    }
)


def default_workers() -> int:
    """Physical core count, falling back to 1 when psutil can't tell."""
    return psutil.cpu_count(logical=False) or 1


def _load() -> dict:
    """Load settings from disk, filling in defaults for missing keys.

    The file is optional and never created implicitly.
    """
    config: dict = {}
    if CONFIG_PATH.exists():
        with open(CONFIG_PATH, encoding="utf-8") as f:
            config = yaml.safe_load(f) or {}
    config.setdefault("logging", {})
    config["logging"].setdefault("file", None)
    config["logging"].setdefault("console-level", "warning")
    config.setdefault("workers", None)
    config.setdefault("output", {})
    config["output"].setdefault("format", "csv")
    return config


def atomic_write(path: Path, text: str) -> None:
    """Write text via a temp file in the target directory, then rename."""
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_path = tempfile.mkstemp(dir=path.parent, suffix=path.suffix)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        os.replace(tmp_path, path)
    except Exception:
        try:
            os.unlink(tmp_path)
        except OSError:
            pass
        raise


# Load config once at import time
CONFIG = _load()


def load_manifest(path: Path) -> dict[str, Any]:
    """Read a flat key-value experiment manifest.

    Values must be scalars or lists of scalars. Unknown keys and nested
    mappings are rejected so typos don't silently fall back to defaults.
    """
    from revertbench.errors import ValidationError

    try:
        with open(path, encoding="utf-8") as f:
            data = yaml.safe_load(f) or {}
    except FileNotFoundError:
        raise ValidationError(f"config file not found: {path}") from None
    except yaml.YAMLError as e:
        raise ValidationError(f"config file {path} is not valid YAML: {e}") from None

    if not isinstance(data, dict):
        raise ValidationError(f"config file {path} must be a key-value mapping")

    manifest: dict[str, Any] = {}
    for key, value in data.items():
        key = str(key).lstrip("-").replace("_", "-")
        if key not in MANIFEST_KEYS:
            raise ValidationError(f"unknown config key '{key}' in {path}")
        if isinstance(value, dict) or (
            isinstance(value, list) and any(isinstance(v, (dict, list)) for v in value)
        ):
            raise ValidationError(f"config key '{key}' must be a scalar or flat list")
        manifest[key] = value
    return manifest
