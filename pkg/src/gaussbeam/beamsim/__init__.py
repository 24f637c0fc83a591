"""Uniform linear array beam simulation"""
from .geometry import (
    ArrayGeometry,
    PlaneWave,
    angle_conventions,
    nearest_beam,
    steering_vector,
    theoretical_directions,
)
from .pattern import (
    BeamPattern,
    PatternDeviation,
    all_patterns,
    beam_pattern,
    beam_peak_direction,
    pattern_deviation,
)
from .perturb import EnsembleStats, PerturbationModel, perturbed_patterns
from .simulate import PlaneWaveResponse, simulate_plane_wave

__all__ = [
    "ArrayGeometry",
    "BeamPattern",
    "EnsembleStats",
    "PatternDeviation",
    "PerturbationModel",
    "PlaneWave",
    "PlaneWaveResponse",
    "all_patterns",
    "angle_conventions",
    "beam_pattern",
    "beam_peak_direction",
    "nearest_beam",
    "pattern_deviation",
    "perturbed_patterns",
    "simulate_plane_wave",
    "steering_vector",
    "theoretical_directions",
]
