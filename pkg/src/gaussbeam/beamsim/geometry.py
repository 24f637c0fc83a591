"""Uniform linear array geometry, steering vectors and ideal beam directions"""
import dataclasses
import math

import numpy as np

from ..utils.errors import InvalidParameterError


@dataclasses.dataclass(frozen=True)
class ArrayGeometry:
    """N isotropic elements on a line, spacing given in wavelengths (dx / lambda)"""

    n_elements: int = 8
    spacing_wavelengths: float = 0.5

    def __post_init__(self):
        if self.n_elements < 2:
            raise InvalidParameterError(f"Array needs at least 2 elements, got {self.n_elements}")
        if not (math.isfinite(self.spacing_wavelengths) and self.spacing_wavelengths > 0):
            raise InvalidParameterError(
                f"Element spacing must be positive, got {self.spacing_wavelengths}"
            )

    @classmethod
    def from_frequency(
        cls, n_elements: int, frequency_hz: float, design_frequency_hz: float
    ) -> "ArrayGeometry":
        """Spacing fixed at half a wavelength of the design frequency"""
        if frequency_hz <= 0 or design_frequency_hz <= 0:
            raise InvalidParameterError("Frequencies must be positive")
        return cls(n_elements, 0.5 * frequency_hz / design_frequency_hz)


@dataclasses.dataclass(frozen=True)
class PlaneWave:
    """Far-field plane wave arriving from angle_deg (from broadside)"""

    angle_deg: float
    amplitude: float = 1.0
    phase_deg: float = 0.0

    def __post_init__(self):
        if not abs(self.angle_deg) <= 90:
            raise InvalidParameterError(f"Arrival angle must lie in [-90, 90], got {self.angle_deg}")


def steering_vectors(geometry: ArrayGeometry, angles_deg: np.ndarray) -> np.ndarray:
    """exp(j 2 pi s n sin(theta)), shape (n_elements, len(angles))"""
    sines = np.sin(np.radians(np.asarray(angles_deg, dtype=float)))
    n = np.arange(geometry.n_elements)[:, np.newaxis]
    return np.exp(1j * 2 * np.pi * geometry.spacing_wavelengths * n * sines[np.newaxis, :])


def steering_vector(geometry: ArrayGeometry, angle_deg: float) -> np.ndarray:
    if not abs(angle_deg) <= 90:
        raise InvalidParameterError(f"Angle must lie in [-90, 90], got {angle_deg}")
    return steering_vectors(geometry, np.array([angle_deg]))[:, 0]


def centered_index(beam_index: int, n: int) -> int:
    """Beam index 0..N-1 to the centered range: 0, 1, ..., N/2, -(N/2 - 1), ..., -1"""
    return beam_index if beam_index <= n // 2 else beam_index - n


def theoretical_directions(geometry: ArrayGeometry) -> list[float | None]:
    """asin(k / (N s)) per beam, None for beams outside the visible region"""
    n = geometry.n_elements
    directions: list[float | None] = []
    for beam in range(n):
        sine = centered_index(beam, n) / (n * geometry.spacing_wavelengths)
        if abs(sine) > 1:
            directions.append(None)
        else:
            directions.append(math.degrees(math.asin(sine)))
    return directions


def nearest_beam(geometry: ArrayGeometry, angle_deg: float) -> int:
    """Beam whose phase gradient is circularly closest to that of a wave from angle_deg"""
    n = geometry.n_elements
    gradient = geometry.spacing_wavelengths * math.sin(math.radians(angle_deg)) * n
    distances = [abs((gradient - k + n / 2) % n - n / 2) for k in range(n)]
    return min(range(n), key=lambda k: (distances[k], k))


def angle_conventions(angle_deg: float) -> dict[str, float]:
    """The same direction measured from broadside and from the array axis"""
    return {"from_broadside": angle_deg, "from_axis": 90.0 - angle_deg}
