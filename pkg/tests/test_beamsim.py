import math

import numpy as np
import pytest

from gaussbeam.beamsim.geometry import (
    ArrayGeometry,
    PlaneWave,
    angle_conventions,
    centered_index,
    nearest_beam,
    steering_vector,
    theoretical_directions,
)
from gaussbeam.beamsim.pattern import (
    all_patterns,
    angle_grid,
    beam_pattern,
    beam_peak_direction,
    pattern_deviation,
)
from gaussbeam.beamsim.perturb import PerturbationModel, perturbed_patterns
from gaussbeam.beamsim.simulate import simulate_plane_wave
from gaussbeam.transforms.approx import build_approx_matrix
from gaussbeam.transforms.exact import build_exact_dft
from gaussbeam.utils.errors import DegenerateInputError, DimensionError, InvalidParameterError

GEOMETRY = ArrayGeometry()
APPROX = build_approx_matrix()
EXACT = build_exact_dft(8)
DIRECTIONS = [math.degrees(math.asin(k / 4)) for k in (0, 1, 2, 3, 4, -3, -2, -1)]


@pytest.fixture(scope="module")
def approx_patterns():
    return all_patterns(APPROX, GEOMETRY)


def test_theoretical_directions():
    assert theoretical_directions(GEOMETRY) == pytest.approx(DIRECTIONS)
    assert [centered_index(b, 8) for b in range(8)] == [0, 1, 2, 3, 4, -3, -2, -1]


def test_invisible_beams_have_no_direction():
    directions = theoretical_directions(ArrayGeometry(8, 0.25))
    assert directions[0] == 0.0
    assert directions[2] == pytest.approx(90.0)
    assert directions[3] is None
    assert directions[4] is None


def test_geometry_validation():
    with pytest.raises(InvalidParameterError):
        ArrayGeometry(8, 0.0)
    with pytest.raises(InvalidParameterError):
        PlaneWave(angle_deg=91.0)
    with pytest.raises(InvalidParameterError):
        steering_vector(GEOMETRY, -95.0)


def test_steering_vector_examples():
    n = np.arange(8)
    np.testing.assert_allclose(steering_vector(GEOMETRY, 0.0), np.ones(8), atol=1e-12)
    np.testing.assert_allclose(steering_vector(GEOMETRY, 30.0), np.exp(1j * np.pi * n / 2), atol=1e-12)
    np.testing.assert_allclose(steering_vector(GEOMETRY, 90.0), (-1.0) ** n, atol=1e-12)


def test_from_frequency():
    assert ArrayGeometry.from_frequency(8, 4e9, 4e9).spacing_wavelengths == pytest.approx(0.5)
    assert ArrayGeometry.from_frequency(8, 2e9, 4e9).spacing_wavelengths == pytest.approx(0.25)


def test_angle_conventions():
    assert angle_conventions(30.0) == {"from_broadside": 30.0, "from_axis": 60.0}


def test_angle_grid():
    grid = angle_grid(1.0)
    assert grid.shape == (181,)
    assert grid[0] == -90.0 and grid[-1] == 90.0
    uneven = angle_grid(0.7)
    assert uneven[-1] == 90.0
    assert np.all(np.diff(uneven) > 0)
    with pytest.raises(InvalidParameterError):
        angle_grid(0.0)


@pytest.mark.parametrize("beam", range(8))
def test_approx_peaks(approx_patterns, beam):
    assert beam_peak_direction(approx_patterns[beam]) == pytest.approx(DIRECTIONS[beam], abs=0.05)


def test_exact_peaks_match_approx(approx_patterns):
    for exact, approx in zip(all_patterns(EXACT, GEOMETRY), approx_patterns):
        assert beam_peak_direction(exact) == pytest.approx(beam_peak_direction(approx), abs=0.5)


def test_row_three_steers_to_thirty_degrees():
    pattern = beam_pattern(APPROX.matrix.to_numpy()[2], GEOMETRY, 0.1, beam_index=2)
    assert beam_peak_direction(pattern) == pytest.approx(30.0, abs=0.05)


def test_mirror_symmetry(approx_patterns):
    for a, b in ((1, 7), (3, 5), (2, 6)):
        np.testing.assert_allclose(
            approx_patterns[a].magnitude, approx_patterns[b].magnitude[::-1], atol=1e-9
        )


def test_endfire_tie_resolves_to_plus_ninety(approx_patterns):
    assert beam_peak_direction(approx_patterns[4]) == 90.0


def test_three_way_tie_resolves_to_smallest_angle():
    # At one-wavelength spacing the broadside beam repeats at both endfire directions
    pattern = beam_pattern(np.ones(8), ArrayGeometry(8, 1.0))
    assert beam_peak_direction(pattern) == -90.0


def test_normalized_db(approx_patterns):
    for pattern in approx_patterns:
        assert np.max(pattern.magnitude_db) == pytest.approx(0.0)
        assert np.min(pattern.magnitude_db) >= -60.0


def test_zero_weights_are_rejected():
    with pytest.raises(DegenerateInputError):
        beam_pattern(np.zeros(8), GEOMETRY)
    with pytest.raises(DimensionError):
        beam_pattern(np.ones(4), GEOMETRY)


def test_pattern_deviation(approx_patterns):
    exact = all_patterns(EXACT, GEOMETRY)
    assert pattern_deviation(exact[0], approx_patterns[0], -60.0).max_db == pytest.approx(0.0, abs=1e-9)
    deviation = pattern_deviation(approx_patterns[1], exact[1], -30.0)
    assert deviation.max_db == pytest.approx(14.673522485136251, rel=1e-6)
    assert deviation.mean_db == pytest.approx(1.1267249447246002, rel=1e-6)
    assert deviation.samples == 1457
    coarse = all_patterns(EXACT, GEOMETRY, 1.0)
    with pytest.raises(DimensionError):
        pattern_deviation(coarse[0], exact[0], -60.0)


def test_uniform_and_alternating_patterns_differ():
    uniform = beam_pattern(np.ones(8), GEOMETRY)
    alternating = beam_pattern((-1.0) ** np.arange(8), GEOMETRY)
    assert pattern_deviation(uniform, alternating, -60.0).max_db > 10.0


@pytest.mark.parametrize("beam", range(8))
def test_plane_wave_selects_its_beam(beam):
    wave = PlaneWave(angle_deg=DIRECTIONS[beam])
    assert simulate_plane_wave(APPROX, GEOMETRY, wave).winner == beam
    assert simulate_plane_wave(EXACT, GEOMETRY, wave).winner == beam


def test_plane_wave_response_scales_with_amplitude():
    weak = simulate_plane_wave(APPROX, GEOMETRY, PlaneWave(30.0, amplitude=1.0))
    strong = simulate_plane_wave(APPROX, GEOMETRY, PlaneWave(30.0, amplitude=2.0, phase_deg=45.0))
    np.testing.assert_allclose(strong.magnitudes, 2 * weak.magnitudes, atol=1e-12)
    assert weak.magnitudes[2] == pytest.approx(8.0)


def test_nearest_beam():
    assert nearest_beam(GEOMETRY, 0.0) == 0
    assert nearest_beam(GEOMETRY, 29.0) == 2
    assert nearest_beam(GEOMETRY, -90.0) == 4
    assert nearest_beam(GEOMETRY, -14.0) == 7


def test_unperturbed_ensemble_matches_reference():
    weights = APPROX.matrix.to_numpy()[1]
    stats = perturbed_patterns(weights, GEOMETRY, PerturbationModel(trials=5), 1.0)
    reference = beam_pattern(weights, GEOMETRY, 1.0)
    np.testing.assert_allclose(stats.mean_db, reference.magnitude_db)
    assert stats.peak_shift_p95 == pytest.approx(0.0, abs=1e-9)


def test_perturbed_ensemble_is_reproducible():
    weights = APPROX.matrix.to_numpy()[2]
    model = PerturbationModel(gain_sigma=0.05, phase_sigma_deg=5.0, trials=50, seed=3)
    first = perturbed_patterns(weights, GEOMETRY, model, 0.5)
    second = perturbed_patterns(weights, GEOMETRY, model, 0.5)
    np.testing.assert_array_equal(first.mean_db, second.mean_db)
    assert np.all(first.p05_db <= first.p95_db)
    assert first.peak_shift_p95 > 0.0
    assert first.reference_peak == pytest.approx(30.0, abs=0.05)


def test_perturbation_model_validation():
    with pytest.raises(InvalidParameterError):
        PerturbationModel(gain_sigma=-0.1)
    with pytest.raises(InvalidParameterError):
        PerturbationModel(trials=0)


def test_peak_magnitude_matches_direct_sum(approx_patterns):
    for beam, pattern in enumerate(approx_patterns):
        index = int(np.argmax(pattern.magnitude))
        a = steering_vector(GEOMETRY, float(pattern.angles_deg[index]))
        direct = abs(np.sum(APPROX.matrix.to_numpy()[beam] * a))
        assert pattern.magnitude[index] == pytest.approx(direct)


def test_gain_perturbation_keeps_broadside_beam_in_place():
    weights = APPROX.matrix.to_numpy()[0]
    model = PerturbationModel(gain_sigma=0.05, trials=500, seed=0)
    stats = perturbed_patterns(weights, GEOMETRY, model)
    assert stats.peak_shift_p95 <= 2.0
