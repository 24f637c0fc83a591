"""The 8-point Gaussian-integer approximate DFT"""
import dataclasses
import functools

import regex

from ..numerics import dyadic
from ..numerics.dyadic import DyadicGaussian
from ..numerics.gaussian import GaussianInt
from ..numerics.matrix import MatrixC
from ..utils.errors import InternalError

N_POINTS = 8

# Integer matrix before the global 1/2 scale, one row per line
_INTEGER_ROWS = """
    2    2     2    2     2    2     2    2
    2    1-j  -2j  -1-j  -2   -1+j   2j   1+j
    2   -2j   -2    2j    2   -2j   -2    2j
    2   -1-j   2j   1-j  -2    1+j  -2j  -1+j
    2   -2     2   -2     2   -2     2   -2
    2   -1+j  -2j   1+j  -2    1-j   2j  -1-j
    2    2j   -2   -2j    2    2j   -2   -2j
    2    1+j   2j  -1+j  -2   -1-j  -2j   1-j
"""


def _parse_rows(text: str) -> tuple[tuple[GaussianInt, ...], ...]:
    return tuple(
        tuple(GaussianInt.parse(cell) for cell in regex.split(r"\s+", line.strip()))
        for line in text.strip().splitlines()
    )


@dataclasses.dataclass(frozen=True)
class ApproxTransform:
    """scale * integer_matrix with integer entries drawn from Q"""

    scale: DyadicGaussian
    integer_matrix: tuple[tuple[GaussianInt, ...], ...]

    def __post_init__(self):
        if len(self.integer_matrix) != N_POINTS or any(
            len(row) != N_POINTS for row in self.integer_matrix
        ):
            raise InternalError("Approximate transform must be 8x8")
        for i, row in enumerate(self.integer_matrix):
            for k, e in enumerate(row):
                if not e.in_q():
                    raise InternalError(f"Entry ({i + 1},{k + 1}) = {e} is outside Q")
        h = symmetry_map(self.integer_matrix)
        for i, row in enumerate(self.integer_matrix):
            for k, e in enumerate(row):
                if e != h[(i * k) % N_POINTS]:
                    raise InternalError(
                        f"Entry ({i + 1},{k + 1}) = {e} breaks the DFT index symmetry"
                    )

    @property
    def size(self) -> int:
        return N_POINTS

    def entry(self, i: int, k: int) -> DyadicGaussian:
        """Scaled entry, 0-based indices"""
        return self.scale * self.integer_matrix[i][k]

    @functools.cached_property
    def matrix(self) -> MatrixC:
        return MatrixC.from_rows(
            (self.scale * e for e in row) for row in self.integer_matrix
        )


def symmetry_map(integer_matrix) -> tuple[GaussianInt, ...]:
    """h(m) for m = 0..7, read off the matrix and checked against h(m+4) = -h(m), h(8-m) = conj(h(m))

    entry(i, k) == h((i-1)(k-1) mod 8); row 2 holds h(0..7) in order.
    """
    h = tuple(integer_matrix[1][m] for m in range(N_POINTS))
    for m in range(N_POINTS):
        if h[(m + 4) % N_POINTS] != -h[m]:
            raise InternalError(f"h({(m + 4) % N_POINTS}) != -h({m})")
        if h[(N_POINTS - m) % N_POINTS] != h[m].conjugate():
            raise InternalError(f"h({(N_POINTS - m) % N_POINTS}) != conj(h({m}))")
    return h


@functools.cache
def build_approx_matrix() -> ApproxTransform:
    return ApproxTransform(scale=dyadic.HALF, integer_matrix=_parse_rows(_INTEGER_ROWS))
