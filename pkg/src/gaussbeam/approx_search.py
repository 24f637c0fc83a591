"""Exhaustive parametric search for Gaussian-integer approximations of the 8-point DFT

Candidates are parameterized by the three free twiddle classes h0 (real), h1 and
h2 (imaginary); the remaining classes follow from the DFT index symmetries
h(m + 4) = -h(m) and h(8 - m) = conj(h(m)).
"""
import dataclasses
import itertools
import logging
import math

import numpy as np
from more_itertools import unique_everseen

from .numerics.dyadic import DyadicGaussian
from .numerics.gaussian import P_SET, GaussianInt
from .numerics.matrix import MatrixC, matmul
from .transforms.approx import N_POINTS, ApproxTransform, build_approx_matrix
from .transforms.exact import build_exact_dft
from .utils.errors import DegenerateInputError, DimensionError, InternalError

_LOGGER = logging.getLogger(name=__name__)

# (i * k) mod 8 for 0-based row and column indices
_INDEX = np.outer(np.arange(N_POINTS), np.arange(N_POINTS)) % N_POINTS

#: Ranking error values are compared at this many decimals so mathematically equal errors tie
_ERROR_DECIMALS = 12


@dataclasses.dataclass(frozen=True)
class CandidateParams:
    """Free twiddle classes of a symmetric candidate"""

    h0: int
    h1: GaussianInt
    h2: GaussianInt

    def __post_init__(self):
        if self.h0 not in P_SET:
            raise InternalError(f"h0 = {self.h0} is outside P")
        if not self.h1.in_q():
            raise InternalError(f"h1 = {self.h1} is outside Q")
        if self.h2.re != 0 or self.h2.im not in P_SET:
            raise InternalError(f"h2 = {self.h2} is not in jP")

    def twiddles(self) -> tuple[GaussianInt, ...]:
        """h(0), ..., h(7)"""
        h0 = GaussianInt(self.h0)
        h3 = -self.h1.conjugate()
        return (h0, self.h1, self.h2, h3, -h0, -self.h1, -self.h2, -h3)

    def sort_key(self) -> tuple[int, int, int, int]:
        return self.h0, self.h1.re, self.h1.im, self.h2.im

    def doubled(self) -> "CandidateParams | None":
        """2 * candidate, or None when the doubled entries leave Q"""
        try:
            return CandidateParams(2 * self.h0, self.h1 * 2, self.h2 * 2)
        except InternalError:
            return None

    def __str__(self) -> str:
        return f"({self.h0}, {self.h1}, {self.h2})"


# Generates the integer matrix of build_approx_matrix()
F8_HAT_PARAMS = CandidateParams(2, GaussianInt(1, -1), GaussianInt(0, -2))


def enumerate_candidates() -> list[CandidateParams]:
    """All 5 * 25 * 5 symmetric candidates, degenerate ones included"""
    candidates = [
        CandidateParams(h0, GaussianInt(re, im), GaussianInt(0, t))
        for h0, re, im, t in itertools.product(P_SET, P_SET, P_SET, P_SET)
    ]
    unique = list(unique_everseen(candidates))
    if len(unique) != len(candidates):
        raise InternalError("Duplicate candidates enumerated")
    return unique


def candidate_integer_matrix(params: CandidateParams) -> tuple[tuple[GaussianInt, ...], ...]:
    h = params.twiddles()
    return tuple(tuple(h[(i * k) % N_POINTS] for k in range(N_POINTS)) for i in range(N_POINTS))


def candidate_to_matrix(params: CandidateParams) -> MatrixC:
    """entry(i, k) = h((i-1)(k-1) mod 8), exact"""
    return MatrixC.from_rows(candidate_integer_matrix(params))


def _candidate_array(params: CandidateParams) -> np.ndarray:
    h = np.array([complex(z) for z in params.twiddles()], dtype=np.complex128)
    return h[_INDEX]


def _as_array(m: MatrixC | np.ndarray) -> np.ndarray:
    return m if isinstance(m, np.ndarray) else m.to_numpy()


def optimal_scale(g: MatrixC | np.ndarray, f: MatrixC | np.ndarray) -> float:
    """Real alpha minimizing ||f - alpha * g||_F, i.e. Re<f, g> / ||g||_F**2; 0 for a zero candidate"""
    g_arr = _as_array(g)
    f_arr = _as_array(f)
    if g_arr.shape != f_arr.shape:
        raise DimensionError(f"Shapes differ: {g_arr.shape} vs {f_arr.shape}")
    energy = float(np.vdot(g_arr, g_arr).real)
    if energy == 0.0:
        return 0.0
    return float(np.vdot(g_arr, f_arr).real) / energy


def scaled_error(g: MatrixC | np.ndarray, f: MatrixC | np.ndarray, scale: float) -> float:
    return float(np.linalg.norm(_as_array(f) - scale * _as_array(g)))


def orthogonality_deviation(m: MatrixC | np.ndarray) -> float:
    """||M M* - diag(M M*)||_F / ||diag(M M*)||_F; exact Gram matrix for exact input"""
    if isinstance(m, MatrixC) and m.is_exact:
        if m.rows != m.cols:
            raise DimensionError(f"Orthogonality deviation needs a square matrix, got {m.shape}")
        gram = matmul(m, m.conj_transpose())
        off = diag = DyadicGaussian.from_int(0)
        for i in range(gram.rows):
            for k in range(gram.cols):
                if i == k:
                    diag = diag + gram[i, k].abs_squared()
                else:
                    off = off + gram[i, k].abs_squared()
        if diag.is_zero():
            raise DegenerateInputError("Orthogonality deviation of a zero matrix is undefined")
        return math.sqrt(float(off) / float(diag))
    arr = _as_array(m)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionError(f"Orthogonality deviation needs a square matrix, got {arr.shape}")
    gram = arr @ arr.conj().T
    diag_part = np.diag(np.diag(gram))
    diag_norm = float(np.linalg.norm(diag_part))
    if diag_norm == 0.0:
        raise DegenerateInputError("Orthogonality deviation of a zero matrix is undefined")
    return float(np.linalg.norm(gram - diag_part)) / diag_norm


def condition_number(m: MatrixC | np.ndarray) -> float:
    """sigma_max / sigma_min from a dense SVD; infinite for singular input"""
    arr = _as_array(m)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionError(f"Condition number needs a square matrix, got {arr.shape}")
    singular_values = np.linalg.svd(arr, compute_uv=False)
    largest = float(singular_values[0])
    smallest = float(singular_values[-1])
    if largest == 0.0 or smallest <= largest * arr.shape[0] * np.finfo(float).eps:
        return math.inf
    return largest / smallest


def mirror_count(params: CandidateParams) -> int:
    """Unit current mirrors needed: sum of |re| + |im| over the matrix"""
    return sum(abs(z.re) + abs(z.im) for row in candidate_integer_matrix(params) for z in row)


def adder_cost(params: CandidateParams) -> int:
    return mirror_count(params) - N_POINTS


@dataclasses.dataclass(frozen=True)
class SearchResult:
    params: CandidateParams
    scale: float
    frobenius_error: float
    # None for the zero candidate, where the ratio is undefined
    orthogonality_deviation: float | None
    adder_cost: int
    condition_number: float
    rank: int = 0

    def ranking_key(self):
        return (
            round(self.frobenius_error, _ERROR_DECIMALS),
            self.adder_cost,
            self.scale < 0,
            self.params.sort_key(),
        )


def score_candidate(params: CandidateParams, target: np.ndarray | None = None) -> SearchResult:
    if target is None:
        target = build_exact_dft(N_POINTS).matrix.to_numpy()
    g = _candidate_array(params)
    scale = optimal_scale(g, target)
    try:
        deviation = orthogonality_deviation(g)
    except DegenerateInputError:
        deviation = None
    return SearchResult(
        params=params,
        scale=scale,
        frobenius_error=scaled_error(g, target, scale),
        orthogonality_deviation=deviation,
        adder_cost=adder_cost(params),
        condition_number=condition_number(g),
    )


def run_search() -> list[SearchResult]:
    """Score every candidate and rank by error, adder cost, sign of scale, then parameters"""
    target = build_exact_dft(N_POINTS).matrix.to_numpy()
    candidates = enumerate_candidates()
    _LOGGER.info("Scoring %d candidates", len(candidates))
    scored = sorted(
        (score_candidate(p, target) for p in candidates), key=SearchResult.ranking_key
    )
    results = [dataclasses.replace(r, rank=rank) for rank, r in enumerate(scored, start=1)]
    _LOGGER.debug("Best candidate %s with error %g", results[0].params, results[0].frobenius_error)
    return results


def nearest_dyadic_scale(alpha: float) -> DyadicGaussian:
    """Power of two nearest to alpha on a log scale"""
    if not alpha > 0:
        raise DegenerateInputError(f"Scale {alpha} has no dyadic approximation")
    return DyadicGaussian.make(1, 0, round(-math.log2(alpha)))


def scaled_transform(result: SearchResult) -> ApproxTransform:
    """The candidate with its optimal scale rounded to a power of two"""
    return ApproxTransform(
        scale=nearest_dyadic_scale(result.scale),
        integer_matrix=candidate_integer_matrix(result.params),
    )


def fixed_scale_error(approx: ApproxTransform | None = None) -> float:
    """||F_8 - F8_hat||_F at the transform's own scale"""
    if approx is None:
        approx = build_approx_matrix()
    target = build_exact_dft(N_POINTS).matrix.to_numpy()
    return float(np.linalg.norm(target - approx.matrix.to_numpy()))
