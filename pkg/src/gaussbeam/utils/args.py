"""Argument parsing and related things"""
import argparse
import math
from pathlib import Path

from gaussbeam.utils import get_version
from gaussbeam.utils.errors import UsageError


def add_standard_flags(parser):
    parser.add_argument("--version", action="version", version=get_version())
    parser.add_argument(
        "--config",
        type=Path,
        default=None,
        metavar="PATH",
        help="Defaults file (default: defaults.yml in the user config directory)",
    )
    group = parser.add_argument_group(title="Output control")
    group.add_argument(
        "-d", "--debug", default=False, action="store_true", help="Show debug output"
    )
    group.add_argument(
        "-l",
        "--log-level",
        default="warning",
        action="store",
        help="Set log level",
        choices=("warning", "info", "debug"),
    )


def add_common_flags(parser, *, formats: tuple[str, ...] = ("text", "json")):
    """Flags shared by all subcommands. Defaults are None so the defaults file can fill them in."""
    parser.add_argument(
        "--spacing", type=float, default=None, metavar="WAVELENGTHS",
        help="Element spacing in wavelengths (default 0.5)",
    )
    parser.add_argument(
        "--grid-step", type=float, default=None, metavar="DEG",
        help="Angle grid step in degrees (default 0.1)",
    )
    parser.add_argument(
        "--floor-db", type=float, default=None, metavar="DB",
        help="Pattern dB floor (default -60)",
    )
    parser.add_argument("--seed", type=int, default=None, help="Random seed (default 0)")
    parser.add_argument(
        "--format", default=None, choices=formats, help="Output format"
    )
    parser.add_argument(
        "-o", "--output", type=Path, default=None, metavar="PATH",
        help="Output file (default standard output)",
    )


def require_positive(flag: str, value: float | int) -> None:
    if not math.isfinite(value) or value <= 0:
        raise UsageError(flag, f"must be positive, got {value}")


def require_finite(flag: str, value: float) -> None:
    if not math.isfinite(value):
        raise UsageError(flag, f"must be finite, got {value}")


def require_angle(flag: str, value: float) -> None:
    require_finite(flag, value)
    if abs(value) > 90:
        raise UsageError(flag, f"must lie in [-90, 90] degrees, got {value}")


def positive_int(text: str) -> int:
    """argparse type for counts >= 1"""
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {value}")
    return value
