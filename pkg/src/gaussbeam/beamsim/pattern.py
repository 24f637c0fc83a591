"""Far-field beam patterns of transform rows and their peak directions"""
import dataclasses
import logging
import math
from collections.abc import Iterator

import numpy as np

from ..transforms.approx import ApproxTransform
from ..transforms.exact import ExactDft
from ..utils.errors import DegenerateInputError, DimensionError, InvalidParameterError
from .geometry import ArrayGeometry, steering_vectors

_LOGGER = logging.getLogger(name=__name__)

DEFAULT_GRID_STEP_DEG = 0.1
DEFAULT_FLOOR_DB = -60.0

# Relative tolerance under which two samples count as the same maximum
_TIE_RTOL = 1e-12


@dataclasses.dataclass(frozen=True, eq=False)
class BeamPattern:
    """Magnitude of one beam sampled over [-90, 90] degrees from broadside"""

    beam_index: int
    angles_deg: np.ndarray
    magnitude: np.ndarray
    magnitude_db: np.ndarray
    floor_db: float

    def samples(self) -> Iterator[tuple[float, float, float]]:
        for angle, mag, mag_db in zip(self.angles_deg, self.magnitude, self.magnitude_db):
            yield float(angle), float(mag), float(mag_db)

    @property
    def peak_magnitude(self) -> float:
        return float(np.max(self.magnitude))


def angle_grid(step_deg: float) -> np.ndarray:
    """Strictly increasing angles from -90 to +90, both ends included"""
    if not (math.isfinite(step_deg) and step_deg > 0):
        raise InvalidParameterError(f"Grid step must be positive, got {step_deg}")
    intervals = 180.0 / step_deg
    if abs(intervals - round(intervals)) < 1e-9:
        return np.linspace(-90.0, 90.0, int(round(intervals)) + 1)
    grid = -90.0 + step_deg * np.arange(math.floor(intervals) + 1)
    return np.append(grid, 90.0)


def normalized_db(magnitude: np.ndarray, floor_db: float) -> np.ndarray:
    """20 log10(m / max m), clamped at floor_db"""
    peak = np.max(magnitude, axis=-1, keepdims=True)
    with np.errstate(divide="ignore"):
        db = 20.0 * np.log10(magnitude / peak)
    return np.maximum(db, floor_db)


def beam_pattern(
    weights,
    geometry: ArrayGeometry,
    grid_step_deg: float = DEFAULT_GRID_STEP_DEG,
    *,
    floor_db: float = DEFAULT_FLOOR_DB,
    beam_index: int = 0,
) -> BeamPattern:
    """Pattern of one beam.

    ``weights`` are the coefficients applied to the element signals, i.e. a transform
    row. In beamformer notation the weight vector is their conjugate w, and the
    sampled magnitude is |w^H a(theta)| = |sum_n weights_n a_n(theta)|.
    """
    weights = np.asarray(weights, dtype=np.complex128)
    if weights.shape != (geometry.n_elements,):
        raise DimensionError(
            f"Expected {geometry.n_elements} weights, got shape {weights.shape}"
        )
    if not np.any(weights):
        raise DegenerateInputError("Beam pattern of all-zero weights is undefined")
    angles = angle_grid(grid_step_deg)
    magnitude = np.abs(weights @ steering_vectors(geometry, angles))
    return BeamPattern(
        beam_index=beam_index,
        angles_deg=angles,
        magnitude=magnitude,
        magnitude_db=normalized_db(magnitude, floor_db),
        floor_db=floor_db,
    )


def all_patterns(
    transform: ApproxTransform | ExactDft,
    geometry: ArrayGeometry,
    grid_step_deg: float = DEFAULT_GRID_STEP_DEG,
    *,
    floor_db: float = DEFAULT_FLOOR_DB,
) -> list[BeamPattern]:
    """One pattern per transform row, beam_index = row index - 1"""
    if transform.size != geometry.n_elements:
        raise DimensionError(
            f"Transform size {transform.size} does not match {geometry.n_elements} elements"
        )
    matrix = transform.matrix.to_numpy()
    _LOGGER.debug("Evaluating %d beams on a %g degree grid", matrix.shape[0], grid_step_deg)
    return [
        beam_pattern(row, geometry, grid_step_deg, floor_db=floor_db, beam_index=index)
        for index, row in enumerate(matrix)
    ]


def _parabola_vertex(x: np.ndarray, y: np.ndarray) -> float:
    """Vertex of the parabola through three points, or the middle point if it is not a maximum"""
    x0, x1, x2 = (x - x[1]).tolist()
    y0, y1, y2 = y.tolist()
    denominator = (x0 - x1) * (x0 - x2) * (x1 - x2)
    a = (x2 * (y1 - y0) + x1 * (y0 - y2) + x0 * (y2 - y1)) / denominator
    b = (x2 * x2 * (y0 - y1) + x1 * x1 * (y2 - y0) + x0 * x0 * (y1 - y2)) / denominator
    if a >= 0:
        return float(x[1])
    offset = min(max(-b / (2 * a), x0), x2)
    return float(x[1] + offset)


def beam_peak_direction(pattern: BeamPattern) -> float:
    """Grid argmax refined by a 3-point parabola on the dB values

    Tied maxima resolve to the smallest angle, except that a beam peaking only at
    the two endfire directions reports +90 degrees.
    """
    magnitude = pattern.magnitude
    if magnitude.shape[0] < 3:
        raise DimensionError("Peak search needs at least 3 samples")
    peak = float(np.max(magnitude))
    tied = np.flatnonzero(magnitude >= peak * (1 - _TIE_RTOL))
    last = magnitude.shape[0] - 1
    if tied.shape[0] > 1:
        if tied.shape[0] == 2 and tied[0] == 0 and tied[-1] == last:
            return float(pattern.angles_deg[last])
        return float(pattern.angles_deg[tied[0]])
    index = int(tied[0])
    if index in (0, last):
        return float(pattern.angles_deg[index])
    window = slice(index - 1, index + 2)
    return _parabola_vertex(pattern.angles_deg[window], pattern.magnitude_db[window])


@dataclasses.dataclass(frozen=True)
class PatternDeviation:
    max_db: float
    mean_db: float
    # Samples above the floor in both patterns
    samples: int


def pattern_deviation(a: BeamPattern, b: BeamPattern, floor_db: float) -> PatternDeviation:
    """|a_db - b_db| statistics over the angles where both patterns exceed floor_db"""
    if a.angles_deg.shape != b.angles_deg.shape or not np.array_equal(a.angles_deg, b.angles_deg):
        raise DimensionError("Patterns are sampled on different grids")
    mask = (a.magnitude_db > floor_db) & (b.magnitude_db > floor_db)
    if not np.any(mask):
        return PatternDeviation(max_db=0.0, mean_db=0.0, samples=0)
    difference = np.abs(a.magnitude_db[mask] - b.magnitude_db[mask])
    return PatternDeviation(
        max_db=float(np.max(difference)),
        mean_db=float(np.mean(difference)),
        samples=int(np.count_nonzero(mask)),
    )
