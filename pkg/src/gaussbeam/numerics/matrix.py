"""Dense complex matrices holding either exact (DyadicGaussian) or float (complex) entries"""
from __future__ import annotations

import dataclasses
import math
from collections.abc import Callable, Iterable, Sequence
from typing import Union

import numpy as np

from ..utils.errors import DimensionError, InternalError
from . import dyadic
from .dyadic import DyadicGaussian
from .gaussian import GaussianInt

#: Floating point mirror of the exact types
ComplexF = complex

Entry = Union[DyadicGaussian, ComplexF]


def _as_entry(value) -> Entry:
    if isinstance(value, DyadicGaussian):
        return value
    if isinstance(value, GaussianInt):
        return DyadicGaussian.from_gaussian(value)
    if isinstance(value, (int, np.integer)):
        return DyadicGaussian.from_int(int(value))
    value = complex(value)
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise InternalError(f"Non-finite matrix entry {value!r}")
    return value


@dataclasses.dataclass(frozen=True)
class MatrixC:
    """Row-major rectangular matrix, immutable after construction"""

    rows: int
    cols: int
    entries: tuple[tuple[Entry, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise DimensionError(f"Entries do not form a {self.rows}x{self.cols} matrix")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable]) -> MatrixC:
        entries = tuple(tuple(_as_entry(e) for e in row) for row in rows)
        if not entries:
            raise DimensionError("Matrix needs at least one row")
        return cls(len(entries), len(entries[0]), entries)

    @classmethod
    def from_numpy(cls, array: np.ndarray) -> MatrixC:
        if array.ndim != 2:
            raise DimensionError(f"Expected a 2-D array, got shape {array.shape}")
        return cls.from_rows((complex(e) for e in row) for row in array)

    @classmethod
    def identity(cls, n: int) -> MatrixC:
        return cls.from_rows(
            (dyadic.ONE if i == k else dyadic.ZERO for k in range(n)) for i in range(n)
        )

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_exact(self) -> bool:
        return all(isinstance(e, DyadicGaussian) for row in self.entries for e in row)

    def __getitem__(self, index: tuple[int, int]) -> Entry:
        i, k = index
        return self.entries[i][k]

    def row(self, i: int) -> tuple[Entry, ...]:
        return self.entries[i]

    def column(self, k: int) -> tuple[Entry, ...]:
        return tuple(row[k] for row in self.entries)

    def map(self, fn: Callable[[Entry], Entry]) -> MatrixC:
        return MatrixC.from_rows((fn(e) for e in row) for row in self.entries)

    def transpose(self) -> MatrixC:
        return MatrixC.from_rows(self.column(k) for k in range(self.cols))

    def conj_transpose(self) -> MatrixC:
        return self.transpose().map(lambda e: e.conjugate())

    def to_numpy(self) -> np.ndarray:
        return np.array(
            [[complex(e) for e in row] for row in self.entries], dtype=np.complex128
        )

    def to_float(self) -> MatrixC:
        return self.map(complex)

    def __sub__(self, other: MatrixC) -> MatrixC:
        if self.shape != other.shape:
            raise DimensionError(f"Cannot subtract {other.shape} from {self.shape}")
        if self.is_exact and other.is_exact:
            return MatrixC.from_rows(
                (a - b for a, b in zip(ra, rb)) for ra, rb in zip(self.entries, other.entries)
            )
        return MatrixC.from_numpy(self.to_numpy() - other.to_numpy())

    def nonzero_pattern(self) -> tuple[tuple[int, ...], ...]:
        """Column indices of the nonzero entries, per row"""
        return tuple(
            tuple(k for k, e in enumerate(row) if not _is_zero(e)) for row in self.entries
        )


def _is_zero(e: Entry) -> bool:
    if isinstance(e, DyadicGaussian):
        return e.is_zero()
    return e == 0


def matmul(a: MatrixC, b: MatrixC) -> MatrixC:
    """Standard product, exact when both operands are exact"""
    if a.cols != b.rows:
        raise DimensionError(f"Inner dimensions differ: {a.shape} x {b.shape}")
    if a.is_exact and b.is_exact:
        b_cols = [b.column(k) for k in range(b.cols)]
        return MatrixC.from_rows(
            (_exact_dot(row, col) for col in b_cols) for row in a.entries
        )
    return MatrixC.from_numpy(a.to_numpy() @ b.to_numpy())


def _exact_dot(row: Sequence[DyadicGaussian], col: Sequence[DyadicGaussian]) -> DyadicGaussian:
    total = dyadic.ZERO
    for x, y in zip(row, col):
        if not x.is_zero() and not y.is_zero():
            total = total + x * y
    return total


def matvec(m: MatrixC, v: Sequence) -> list:
    """m @ v for exact, complex or mixed vectors; exact iff both are exact"""
    if len(v) != m.cols:
        raise DimensionError(f"Vector of length {len(v)} does not match {m.cols} columns")
    if m.is_exact and all(isinstance(x, DyadicGaussian) for x in v):
        return [_exact_dot(row, v) for row in m.entries]
    return list((m.to_numpy() @ np.asarray([complex(x) for x in v])).tolist())


def frobenius_norm(m: MatrixC) -> float:
    """sqrt(sum |m_ik|**2), the sum is accumulated exactly for exact matrices"""
    if m.is_exact:
        total = dyadic.ZERO
        for row in m.entries:
            for e in row:
                total = total + e.abs_squared()
        return math.sqrt(float(total))
    return float(np.linalg.norm(m.to_numpy()))
