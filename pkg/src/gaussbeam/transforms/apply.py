"""Direct (matrix-vector) and fast (stage by stage) application of the transforms"""
import functools
from collections.abc import Sequence

import numpy as np
from more_itertools import one

from ..numerics.dyadic import DyadicGaussian
from ..numerics.gaussian import GaussianInt
from ..numerics.matrix import matvec
from ..utils.errors import DimensionError
from .approx import ApproxTransform
from .exact import ExactDft
from .factorization import Coefficient, Factorization, Terms

Vector = Sequence[DyadicGaussian] | Sequence[complex] | np.ndarray


def _check_length(values, expected: int) -> None:
    length = values.shape[0] if isinstance(values, np.ndarray) else len(values)
    if length != expected:
        raise DimensionError(f"Expected a vector of length {expected}, got {length}")


def apply_direct(transform: ApproxTransform | ExactDft, values: Vector):
    """V = F . v; exact when the transform and the input are exact

    A 2-D numpy array is treated as a batch of frames, one frame per column.
    """
    _check_length(values, transform.size)
    if isinstance(values, np.ndarray):
        return transform.matrix.to_numpy() @ values.astype(np.complex128, copy=False)
    return matvec(transform.matrix, _normalize(values))


def _normalize(values: Sequence) -> list:
    """Exact inputs stay exact, anything else becomes a Python complex"""
    if all(isinstance(v, (DyadicGaussian, GaussianInt)) for v in values):
        return [v if isinstance(v, DyadicGaussian) else DyadicGaussian.from_gaussian(v) for v in values]
    return [complex(v) for v in values]


@functools.singledispatch
def _rotate_j(value):
    raise TypeError(f"Unsupported lane type {type(value).__name__}")


@_rotate_j.register
def _(value: DyadicGaussian):
    return value.mul_j()


@_rotate_j.register
def _(value: complex):
    # Swap and negate, no multiplication
    return complex(-value.imag, value.real)


@_rotate_j.register
def _(value: np.ndarray):
    result = np.empty_like(value)
    result.real = -value.imag
    result.imag = value.real
    return result


@functools.singledispatch
def _halve(value):
    raise TypeError(f"Unsupported lane type {type(value).__name__}")


@_halve.register
def _(value: DyadicGaussian):
    return value.halve()


@_halve.register
def _(value: complex):
    return complex(np.ldexp(value.real, -1), np.ldexp(value.imag, -1))


@_halve.register
def _(value: np.ndarray):
    result = np.empty_like(value)
    result.real = np.ldexp(value.real, -1)
    result.imag = np.ldexp(value.imag, -1)
    return result


def _term(value, coefficient: Coefficient):
    """Coefficient applied without its sign"""
    if coefficient.rotates:
        return _rotate_j(value)
    if coefficient is Coefficient.HALF:
        return _halve(value)
    return value


def _combine(lanes: list, terms: Terms):
    if len(terms) == 1:
        index, coefficient = one(terms)
        value = _term(lanes[index], coefficient)
        return -value if coefficient.negative else value
    (i0, c0), (i1, c1) = terms
    a = _term(lanes[i0], c0)
    b = _term(lanes[i1], c1)
    if not c0.negative and not c1.negative:
        return a + b
    if not c0.negative:
        return a - b
    if not c1.negative:
        return b - a
    return -(a + b)


def apply_fast(factorization: Factorization, values: Vector):
    """Evaluate the factorization stage by stage with additions, j-rotations, halvings and a permutation only

    Exact inputs give exact outputs. A 2-D numpy array is a batch with one frame per column.
    """
    _check_length(values, len(factorization.stages[0].terms))
    if isinstance(values, np.ndarray):
        array = values.astype(np.complex128, copy=False)
        lanes = [array[i] for i in range(array.shape[0])]
        for stage in factorization.stages:
            lanes = [_combine(lanes, terms) for terms in stage.terms]
        return np.stack([np.asarray(lane, dtype=np.complex128) for lane in lanes])
    lanes = _normalize(values)
    for stage in factorization.stages:
        lanes = [_combine(lanes, terms) for terms in stage.terms]
    return lanes
