"""Validated per-run configuration built from flags and the defaults file"""
import argparse
import dataclasses
import os
from pathlib import Path

from ..utils.args import require_angle, require_finite, require_positive
from ..utils.errors import UsageError
from ..utils.settings import Defaults

#: Output formats each subcommand can render, the first one is its fallback
FORMATS: dict[str, tuple[str, ...]] = {
    "matrix": ("text", "json"),
    "verify": ("text", "json"),
    "search": ("text", "json", "csv"),
    "pattern": ("csv", "json", "text"),
    "beamsim": ("text", "json"),
    "bench": ("text", "json"),
}

# Subcommand specific flags: attribute name -> flag spelling
_OPTIONS: dict[str, dict[str, str]] = {
    "matrix": {"which": "--which", "n": "--n"},
    "verify": {"frames": "--frames"},
    "search": {"top_k": "--top-k"},
    "pattern": {
        "transform": "--transform",
        "frequency_ghz": "--frequency-ghz",
        "design_frequency_ghz": "--design-frequency-ghz",
        "ensemble": "--ensemble",
        "beam": "--beam",
        "perturb_gain": "--perturb-gain",
        "perturb_phase_deg": "--perturb-phase-deg",
        "trials": "--trials",
    },
    "beamsim": {
        "angle": "--angle",
        "amplitude": "--amplitude",
        "phase_deg": "--phase-deg",
        "transform": "--transform",
    },
    "bench": {"frames": "--frames", "mode": "--mode", "lanes": "--lanes"},
}


def _require_writable(output: Path) -> None:
    directory = output.parent
    if output.is_dir():
        raise UsageError("--output", f"{output} is a directory")
    if not directory.is_dir():
        raise UsageError("--output", f"directory {directory} does not exist")
    if not os.access(directory, os.W_OK) or (output.exists() and not os.access(output, os.W_OK)):
        raise UsageError("--output", f"cannot write to {output}")


@dataclasses.dataclass(frozen=True)
class RunConfig:
    command: str
    spacing: float
    grid_step: float
    floor_db: float
    seed: int
    format: str
    output: Path | None
    tolerance: float
    options: dict = dataclasses.field(default_factory=dict)

    def parameters(self) -> dict:
        """Echo of the effective parameters, for result documents"""
        return {
            "spacing": self.spacing,
            "grid_step": self.grid_step,
            "floor_db": self.floor_db,
            "seed": self.seed,
            "format": self.format,
            **self.options,
        }

    @classmethod
    def from_args(cls, args: argparse.Namespace, defaults: Defaults) -> "RunConfig":
        def pick(name: str):
            value = getattr(args, name, None)
            return defaults[name] if value is None else value

        fmt = pick("format")
        if fmt not in FORMATS[args.command]:
            if args.format is not None:
                raise UsageError("--format", f"{args.command} cannot render {fmt}")
            fmt = FORMATS[args.command][0]
        options = {name: getattr(args, name) for name in _OPTIONS[args.command]}
        if args.command == "pattern" and options["trials"] is None:
            options["trials"] = defaults["trials"]
        config = cls(
            command=args.command,
            spacing=float(pick("spacing")),
            grid_step=float(pick("grid_step")),
            floor_db=float(pick("floor_db")),
            seed=int(pick("seed")),
            format=fmt,
            output=args.output,
            tolerance=float(defaults["tolerance"]),
            options=options,
        )
        config.validate()
        return config

    def validate(self) -> None:
        require_positive("--spacing", self.spacing)
        require_positive("--grid-step", self.grid_step)
        if self.grid_step > 90:
            raise UsageError("--grid-step", f"must be at most 90 degrees, got {self.grid_step}")
        require_finite("--floor-db", self.floor_db)
        if self.floor_db >= 0:
            raise UsageError("--floor-db", f"must be negative, got {self.floor_db}")
        if self.seed < 0:
            raise UsageError("--seed", f"must be non-negative, got {self.seed}")
        require_positive("tolerance (defaults file)", self.tolerance)
        if self.output is not None:
            _require_writable(self.output)
        flags = _OPTIONS[self.command]
        o = self.options
        if self.command == "pattern":
            for name in ("frequency_ghz", "design_frequency_ghz"):
                if o[name] is not None:
                    require_positive(flags[name], o[name])
            for name in ("perturb_gain", "perturb_phase_deg"):
                require_finite(flags[name], o[name])
                if o[name] < 0:
                    raise UsageError(flags[name], f"must be non-negative, got {o[name]}")
            if o["trials"] < 1:
                raise UsageError("--trials", f"must be at least 1, got {o['trials']}")
        elif self.command == "beamsim":
            require_angle("--angle", o["angle"])
            require_positive("--amplitude", o["amplitude"])
            require_finite("--phase-deg", o["phase_deg"])
        elif self.command == "matrix" and o["n"] is not None and o["which"] != "exact":
            raise UsageError("--n", "only applies to --which exact")

    def is_ensemble(self) -> bool:
        return bool(self.options.get("ensemble"))
