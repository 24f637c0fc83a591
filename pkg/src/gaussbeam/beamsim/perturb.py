"""Monte Carlo weight perturbations

A generic gain/phase error model standing in for implementation effects such
as mirror mismatch and frequency roll-off; it carries no circuit physics.
"""
import dataclasses
import logging
import math

import numpy as np

from ..utils.errors import InvalidParameterError
from .geometry import ArrayGeometry, steering_vectors
from .pattern import (
    DEFAULT_FLOOR_DB,
    DEFAULT_GRID_STEP_DEG,
    BeamPattern,
    angle_grid,
    beam_peak_direction,
    beam_pattern,
    normalized_db,
)

_LOGGER = logging.getLogger(name=__name__)


@dataclasses.dataclass(frozen=True)
class PerturbationModel:
    """Each weight is multiplied by (1 + eps_g) exp(j eps_p) with normal eps_g, eps_p"""

    gain_sigma: float = 0.0
    phase_sigma_deg: float = 0.0
    trials: int = 200
    seed: int = 0

    def __post_init__(self):
        if not (self.gain_sigma >= 0 and self.phase_sigma_deg >= 0):
            raise InvalidParameterError("Perturbation sigmas must be non-negative")
        if self.trials < 1:
            raise InvalidParameterError(f"Need at least one trial, got {self.trials}")

    def trial_generators(self) -> list[np.random.Generator]:
        """Independent per-trial streams, so results do not depend on evaluation order"""
        children = np.random.SeedSequence(self.seed).spawn(self.trials)
        return [np.random.default_rng(child) for child in children]


@dataclasses.dataclass(frozen=True, eq=False)
class EnsembleStats:
    angles_deg: np.ndarray
    mean_db: np.ndarray
    p05_db: np.ndarray
    p95_db: np.ndarray
    # Peak direction of every trial, in trial order
    peak_directions: np.ndarray
    reference_peak: float

    @property
    def peak_shift_p95(self) -> float:
        return float(np.percentile(np.abs(self.peak_directions - self.reference_peak), 95))


def perturbed_weights(weights: np.ndarray, model: PerturbationModel) -> np.ndarray:
    """One perturbed weight vector per trial, shape (trials, n)"""
    n = weights.shape[0]
    rows = []
    for rng in model.trial_generators():
        gain = rng.normal(0.0, model.gain_sigma, n)
        phase = rng.normal(0.0, math.radians(model.phase_sigma_deg), n)
        rows.append(weights * (1.0 + gain) * np.exp(1j * phase))
    return np.array(rows)


def perturbed_patterns(
    weights,
    geometry: ArrayGeometry,
    model: PerturbationModel,
    grid_step_deg: float = DEFAULT_GRID_STEP_DEG,
    *,
    floor_db: float = DEFAULT_FLOOR_DB,
) -> EnsembleStats:
    """Per-angle mean and 5th/95th percentile of the normalized dB pattern over all trials"""
    weights = np.asarray(weights, dtype=np.complex128)
    reference = beam_pattern(weights, geometry, grid_step_deg, floor_db=floor_db)
    angles = angle_grid(grid_step_deg)
    trial_weights = perturbed_weights(weights, model)
    magnitude = np.abs(trial_weights @ steering_vectors(geometry, angles))
    db = normalized_db(magnitude, floor_db)
    _LOGGER.debug("Ran %d perturbation trials on %d angles", model.trials, angles.shape[0])
    peaks = np.array(
        [
            beam_peak_direction(
                BeamPattern(
                    beam_index=reference.beam_index,
                    angles_deg=angles,
                    magnitude=magnitude[t],
                    magnitude_db=db[t],
                    floor_db=floor_db,
                )
            )
            for t in range(model.trials)
        ]
    )
    return EnsembleStats(
        angles_deg=angles,
        mean_db=np.mean(db, axis=0),
        p05_db=np.percentile(db, 5, axis=0),
        p95_db=np.percentile(db, 95, axis=0),
        peak_directions=peaks,
        reference_peak=beam_peak_direction(reference),
    )
