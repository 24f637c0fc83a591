"""Exact (floating point) DFT used as oracle for the approximation"""
import cmath
import dataclasses
import math
from collections.abc import Sequence

import numpy as np

from ..numerics.matrix import MatrixC
from ..utils.errors import DimensionError


@dataclasses.dataclass(frozen=True)
class ExactDft:
    """F_N with entries omega_N**((i-1)(k-1)), omega_N = exp(-2*pi*j/N)"""

    n: int
    matrix: MatrixC

    @property
    def size(self) -> int:
        return self.n


def build_exact_dft(n: int) -> ExactDft:
    if n < 1:
        raise DimensionError(f"DFT size must be at least 1, got {n}")
    # Reduce the exponent first so every entry is one of n correctly rounded roots
    roots = [cmath.exp(-2j * math.pi * m / n) for m in range(n)]
    for m, root in enumerate(roots):
        # Snap the quarter turns to exact values
        if (4 * m) % n == 0:
            roots[m] = (1, -1j, -1, 1j)[(4 * m) // n]
    return ExactDft(
        n=n,
        matrix=MatrixC.from_rows(
            (complex(roots[(i * k) % n]) for k in range(n)) for i in range(n)
        ),
    )


def apply_inverse_exact(values: Sequence[complex] | np.ndarray, dft: ExactDft | None = None):
    """v = (1/N) * F_N^* . V"""
    if dft is None:
        dft = build_exact_dft(8)
    array = np.asarray(values, dtype=np.complex128)
    if array.shape[0] != dft.n:
        raise DimensionError(f"Expected {dft.n} coefficients, got {array.shape[0]}")
    result = dft.matrix.to_numpy().conj().T @ array / dft.n
    if isinstance(values, np.ndarray):
        return result
    return list(result.tolist())
