"""Plane-wave stimulus through the array and the transform"""
import dataclasses
import math

import numpy as np

from ..transforms.apply import apply_direct, apply_fast
from ..transforms.approx import ApproxTransform
from ..transforms.exact import ExactDft
from ..transforms.factorization import Factorization, build_factorization
from ..utils.errors import DimensionError
from .geometry import ArrayGeometry, PlaneWave, steering_vector


@dataclasses.dataclass(frozen=True, eq=False)
class PlaneWaveResponse:
    outputs: np.ndarray

    @property
    def magnitudes(self) -> np.ndarray:
        return np.abs(self.outputs)

    @property
    def winner(self) -> int:
        return int(np.argmax(self.magnitudes))


def element_signals(geometry: ArrayGeometry, wave: PlaneWave) -> np.ndarray:
    """amplitude * exp(j phase) * a(theta)"""
    return wave.amplitude * np.exp(1j * math.radians(wave.phase_deg)) * steering_vector(
        geometry, wave.angle_deg
    )


def simulate_plane_wave(
    transform: ApproxTransform | ExactDft,
    geometry: ArrayGeometry,
    wave: PlaneWave,
    factorization: Factorization | None = None,
) -> PlaneWaveResponse:
    """Beam outputs for one plane wave; the approximate transform runs through the fast algorithm"""
    if transform.size != geometry.n_elements:
        raise DimensionError(
            f"Transform size {transform.size} does not match {geometry.n_elements} elements"
        )
    signals = element_signals(geometry, wave)
    if isinstance(transform, ApproxTransform):
        outputs = apply_fast(factorization or build_factorization(), signals)
    else:
        outputs = apply_direct(transform, signals)
    return PlaneWaveResponse(outputs=np.asarray(outputs, dtype=np.complex128))
