"""Settings file handling"""
from collections import ChainMap
from pathlib import Path
from typing import TypedDict

import appdirs
import yaml

from .errors import UserErrorMessage


class Defaults(TypedDict):
    """User overridable defaults for all subcommands"""

    # Element spacing in wavelengths
    spacing: float
    # Angle grid step in degrees
    grid_step: float
    # Floor for normalized dB patterns
    floor_db: float
    # Seed for every random stream
    seed: int
    # Monte Carlo trials for perturbed patterns
    trials: int
    # Output format, None for each command's own default
    format: str | None
    # Absolute tolerance for unit-scale float comparisons
    tolerance: float


BUILTIN_DEFAULTS: Defaults = {
    "spacing": 0.5,
    "grid_step": 0.1,
    "floor_db": -60.0,
    "seed": 0,
    "trials": 200,
    "format": None,
    "tolerance": 1e-12,
}


def default_settings_path() -> Path:
    return Path(appdirs.user_config_dir("gaussbeam")) / "defaults.yml"


def load_settings(file_path: Path) -> dict:
    """Load a YAML settings file, a missing file gives an empty mapping"""
    try:
        with file_path.open(mode="rt", encoding="utf-8") as f:
            data = yaml.safe_load(f)
    except FileNotFoundError:
        return {}
    except yaml.YAMLError as e:
        raise UserErrorMessage(
            f"Failed to parse settings file {file_path} due to YAML error: {e}"
        ) from e
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise UserErrorMessage(f"Settings file {file_path} must contain a mapping")
    return data


def load_defaults(file_path: Path | None = None) -> Defaults:
    """Load defaults, merging the user's file over the built-in values"""
    if file_path is None:
        file_path = default_settings_path()
    elif not file_path.exists():
        raise UserErrorMessage(f"Settings file {file_path} not found!")
    user = load_settings(file_path)
    if unknown := set(user).difference(BUILTIN_DEFAULTS):
        raise UserErrorMessage(
            f"Unknown key(s) in settings file {file_path}: {', '.join(sorted(unknown))}"
        )
    merged = dict(ChainMap(user, BUILTIN_DEFAULTS))
    for key, builtin in BUILTIN_DEFAULTS.items():
        if builtin is None:
            expected = (str, type(None))
        elif isinstance(builtin, float):
            # ints are accepted where floats are expected
            expected = (int, float)
        else:
            expected = type(builtin)
        if not isinstance(merged[key], expected) or isinstance(merged[key], bool):
            raise UserErrorMessage(
                f"Setting {key!r} in {file_path} has wrong type {type(merged[key]).__name__}"
            )
    return merged
