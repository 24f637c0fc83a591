"""Seven-stage sparse factorization of the approximate transform

F8_hat = P . diag(I2, A1, A3) . D2 . diag(B2, I2, A4) . D1 . diag(B4, A2) . B8

Stages are stored in application order: B8 is applied to the input first, P last.
"""
import dataclasses
import enum
import functools
import logging
from collections.abc import Iterable, Sequence

import numpy as np

from ..numerics import dyadic
from ..numerics.dyadic import DyadicGaussian
from ..numerics.matrix import MatrixC, matmul
from ..utils.errors import InternalError
from .approx import ApproxTransform, build_approx_matrix

_LOGGER = logging.getLogger(name=__name__)


class Coefficient(enum.Enum):
    """Entries allowed in a stage matrix, besides zero"""

    ONE = "1"
    MINUS_ONE = "-1"
    J = "j"
    MINUS_J = "-j"
    HALF = "1/2"

    @property
    def negative(self) -> bool:
        return self in (Coefficient.MINUS_ONE, Coefficient.MINUS_J)

    @property
    def rotates(self) -> bool:
        return self in (Coefficient.J, Coefficient.MINUS_J)

    @property
    def exact(self) -> DyadicGaussian:
        return _COEFFICIENT_VALUES[self]


_COEFFICIENT_VALUES = {
    Coefficient.ONE: dyadic.ONE,
    Coefficient.MINUS_ONE: -dyadic.ONE,
    Coefficient.J: dyadic.J,
    Coefficient.MINUS_J: -dyadic.J,
    Coefficient.HALF: dyadic.HALF,
}
_COEFFICIENT_BY_VALUE = {v: k for k, v in _COEFFICIENT_VALUES.items()}


class StageKind(enum.Enum):
    BLOCK = "block"
    DIAGONAL = "diagonal"
    PERMUTATION = "permutation"


#: One output row of a stage: (input index, coefficient) pairs
Terms = tuple[tuple[int, Coefficient], ...]


@dataclasses.dataclass(frozen=True)
class FactorStage:
    """A sparse 8x8 stage, validated on construction"""

    name: str
    kind: StageKind
    matrix: MatrixC

    def __post_init__(self):
        # Compile eagerly so a bad stage can never be constructed
        object.__setattr__(self, "terms", _compile(self.name, self.kind, self.matrix))

    terms: tuple[Terms, ...] = dataclasses.field(init=False, repr=False, compare=False)


def _compile(name: str, kind: StageKind, matrix: MatrixC) -> tuple[Terms, ...]:
    if not matrix.is_exact:
        raise InternalError(f"Stage {name} must hold exact entries")
    rows: list[Terms] = []
    for i, row in enumerate(matrix.entries):
        terms = []
        for k, e in enumerate(row):
            if e.is_zero():
                continue
            if e not in _COEFFICIENT_BY_VALUE:
                raise InternalError(f"Stage {name}: entry ({i + 1},{k + 1}) = {e} not in {{0, +-1, +-j, 1/2}}")
            terms.append((k, _COEFFICIENT_BY_VALUE[e]))
        if len(terms) > 2:
            raise InternalError(f"Stage {name}: row {i + 1} has {len(terms)} nonzero entries")
        if not terms:
            raise InternalError(f"Stage {name}: row {i + 1} is zero")
        rows.append(tuple(terms))
    if kind is StageKind.DIAGONAL and any(t != ((i, t[0][1]),) for i, t in enumerate(rows)):
        raise InternalError(f"Stage {name} is not diagonal")
    if kind is StageKind.PERMUTATION:
        columns = sorted(t[0][0] for t in rows if len(t) == 1)
        if columns != list(range(matrix.cols)) or any(
            t[0][1] is not Coefficient.ONE for t in rows
        ):
            raise InternalError(f"Stage {name} is not a permutation")
    return tuple(rows)


@dataclasses.dataclass(frozen=True)
class Factorization:
    """Stages in application order (B8 first, P last)"""

    stages: tuple[FactorStage, ...]

    def product_order(self) -> tuple[FactorStage, ...]:
        """Left-to-right order of the written product"""
        return tuple(reversed(self.stages))

    def product(self) -> MatrixC:
        """Exact product of all stage matrices"""
        result = self.stages[0].matrix
        for stage in self.stages[1:]:
            result = matmul(stage.matrix, result)
        return result

    def float_product(self) -> np.ndarray:
        result = self.stages[0].matrix.to_numpy()
        for stage in self.stages[1:]:
            result = stage.matrix.to_numpy() @ result
        return result


def _exact(rows: Iterable[Iterable[int | DyadicGaussian]]) -> MatrixC:
    return MatrixC.from_rows(rows)


def identity(n: int) -> MatrixC:
    return MatrixC.identity(n)


def kron(a: MatrixC, b: MatrixC) -> MatrixC:
    return MatrixC.from_rows(
        (a[i, k] * b[p, q] for k in range(a.cols) for q in range(b.cols))
        for i in range(a.rows)
        for p in range(b.rows)
    )


def butterfly(n: int) -> MatrixC:
    """B_n = [[1, 1], [1, -1]] (x) I_{n/2}"""
    return kron(_exact([[1, 1], [1, -1]]), identity(n // 2))


def block_diag(*blocks: MatrixC) -> MatrixC:
    size = sum(b.rows for b in blocks)
    rows = []
    offset = 0
    for block in blocks:
        for i in range(block.rows):
            row = [dyadic.ZERO] * size
            row[offset : offset + block.cols] = block.row(i)
            rows.append(row)
        offset += block.cols
    return MatrixC.from_rows(rows)


def diagonal(values: Sequence[DyadicGaussian]) -> MatrixC:
    return MatrixC.from_rows(
        (values[i] if i == k else dyadic.ZERO for k in range(len(values)))
        for i in range(len(values))
    )


def permutation(order: Sequence[int]) -> MatrixC:
    """[e_order[0] | e_order[1] | ...]^T with 1-based unit vector indices"""
    n = len(order)
    return MatrixC.from_rows((int(k + 1 == order[i]) for k in range(n)) for i in range(n))


A1 = _exact([[1, -1], [1, 1]])
A2 = _exact([[1, 0, 0, 0], [0, 1, 0, 1], [0, 0, 1, 0], [0, 1, 0, -1]])
A3 = _exact([[1, -1, 0, 0], [0, 0, -1, 1], [1, 1, 0, 0], [0, 0, 1, 1]])
A4 = _exact([[1, 0, 0, 1], [0, 1, 1, 0], [0, 1, -1, 0], [1, 0, 0, -1]])

_ONE, _HALF, _J = dyadic.ONE, dyadic.HALF, dyadic.J
D1 = (_ONE, _ONE, _ONE, _ONE, _ONE, _HALF, _ONE, _HALF)
D2 = (_ONE, _ONE, _ONE, _J, _ONE, _J, _J, _ONE)
P_ORDER = (1, 5, 3, 6, 2, 8, 4, 7)


@functools.cache
def build_factorization() -> Factorization:
    stages = (
        FactorStage("B8", StageKind.BLOCK, butterfly(8)),
        FactorStage("diag(B4,A2)", StageKind.BLOCK, block_diag(butterfly(4), A2)),
        FactorStage("D1", StageKind.DIAGONAL, diagonal(D1)),
        FactorStage("diag(B2,I2,A4)", StageKind.BLOCK, block_diag(butterfly(2), identity(2), A4)),
        FactorStage("D2", StageKind.DIAGONAL, diagonal(D2)),
        FactorStage("diag(I2,A1,A3)", StageKind.BLOCK, block_diag(identity(2), A1, A3)),
        FactorStage("P", StageKind.PERMUTATION, permutation(P_ORDER)),
    )
    return Factorization(stages=stages)


@dataclasses.dataclass(frozen=True)
class FactorizationReport:
    exact_equal: bool
    max_abs_deviation: float


def verify_factorization(
    factorization: Factorization | None = None, approx: ApproxTransform | None = None
) -> FactorizationReport:
    """Compare the stage product with the approximate matrix, exactly and in float"""
    if factorization is None:
        factorization = build_factorization()
    if approx is None:
        approx = build_approx_matrix()
    exact_equal = factorization.product() == approx.matrix
    deviation = float(
        np.max(np.abs(factorization.float_product() - approx.matrix.to_numpy()))
    )
    _LOGGER.debug(
        "Verified %d stages: exact_equal=%s, deviation=%g",
        len(factorization.stages),
        exact_equal,
        deviation,
    )
    return FactorizationReport(exact_equal=exact_equal, max_abs_deviation=deviation)


@dataclasses.dataclass(frozen=True)
class OpCount:
    """Data independent operation count of the fast algorithm

    There is deliberately no multiplication field: the stages admit none.
    """

    complex_additions: int = 0
    halvings: int = 0
    j_rotations: int = 0
    negations: int = 0

    @property
    def real_additions(self) -> int:
        return 2 * self.complex_additions

    def __add__(self, other: "OpCount") -> "OpCount":
        return OpCount(
            complex_additions=self.complex_additions + other.complex_additions,
            halvings=self.halvings + other.halvings,
            j_rotations=self.j_rotations + other.j_rotations,
            negations=self.negations + other.negations,
        )


def stage_complexity(stage: FactorStage) -> OpCount:
    additions = halvings = rotations = negations = 0
    for terms in stage.terms:
        coefficients = [c for _, c in terms]
        halvings += sum(c is Coefficient.HALF for c in coefficients)
        rotations += sum(c.rotates for c in coefficients)
        if len(terms) == 2:
            additions += 1
        # A single negative term folds into a subtraction; otherwise a negation remains
        if all(c.negative for c in coefficients):
            negations += 1
    return OpCount(additions, halvings, rotations, negations)


def complexity_report(factorization: Factorization | None = None) -> OpCount:
    if factorization is None:
        factorization = build_factorization()
    return sum((stage_complexity(s) for s in factorization.stages), OpCount())


@dataclasses.dataclass(frozen=True)
class DirectOpCount:
    """Cost of evaluating the matrix-vector product entry by entry"""

    complex_additions: int
    nontrivial_multiplications: int

    @property
    def real_additions(self) -> int:
        return 2 * self.complex_additions


def direct_complexity(approx: ApproxTransform | None = None) -> DirectOpCount:
    """Every row with r nonzeros costs r - 1 additions; entries other than +-1, +-j cost a multiplication"""
    if approx is None:
        approx = build_approx_matrix()
    trivial = {dyadic.ONE, -dyadic.ONE, dyadic.J, -dyadic.J}
    pattern = approx.matrix.nonzero_pattern()
    additions = sum(max(len(cols) - 1, 0) for cols in pattern)
    multiplications = sum(
        approx.matrix[i, k] not in trivial for i, cols in enumerate(pattern) for k in cols
    )
    return DirectOpCount(additions, multiplications)
