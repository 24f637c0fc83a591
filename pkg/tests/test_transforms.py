import cmath
import math

import networkx as nx
import numpy as np
import pytest

from gaussbeam.numerics import dyadic
from gaussbeam.numerics.dyadic import DyadicGaussian
from gaussbeam.numerics.gaussian import GaussianInt
from gaussbeam.numerics.matrix import MatrixC, frobenius_norm
from gaussbeam.transforms.apply import apply_direct, apply_fast
from gaussbeam.transforms.approx import ApproxTransform, build_approx_matrix, symmetry_map
from gaussbeam.transforms.exact import apply_inverse_exact, build_exact_dft
from gaussbeam.transforms.factorization import (
    FactorStage,
    Factorization,
    StageKind,
    build_factorization,
    complexity_report,
    direct_complexity,
    stage_complexity,
    verify_factorization,
)
from gaussbeam.transforms.flowgraph import adder_depth, adder_nodes, signal_flow_graph
from gaussbeam.utils.errors import DimensionError, InternalError

APPROX = build_approx_matrix()
FACTORIZATION = build_factorization()


def test_exact_dft_entries():
    dft = build_exact_dft(8)
    for i in range(8):
        for k in range(8):
            assert dft.matrix[i, k] == pytest.approx(cmath.exp(-2j * math.pi * ((i * k) % 8) / 8), abs=1e-15)
    # Quarter turns are exact
    assert dft.matrix[1, 2] == -1j
    assert dft.matrix[2, 2] == -1


def test_exact_dft_small_and_invalid():
    assert build_exact_dft(2).matrix.to_numpy().tolist() == [[1, 1], [1, -1]]
    with pytest.raises(DimensionError):
        build_exact_dft(0)


def test_inverse_round_trip():
    rng = np.random.default_rng(3)
    v = rng.standard_normal(8) + 1j * rng.standard_normal(8)
    spectrum = apply_direct(build_exact_dft(8), v)
    np.testing.assert_allclose(apply_inverse_exact(spectrum), v, atol=1e-12)


def test_approx_first_rows():
    assert all(APPROX.entry(0, k) == dyadic.ONE for k in range(8))
    row = [str(e) for e in APPROX.matrix.row(1)]
    assert row == ["1", "(1-1j)/2", "-1j", "(-1-1j)/2", "-1", "(-1+1j)/2", "1j", "(1+1j)/2"]


def test_approx_symmetry_map():
    h = symmetry_map(APPROX.integer_matrix)
    assert h[:4] == (GaussianInt(2), GaussianInt(1, -1), GaussianInt(0, -2), GaussianInt(-1, -1))
    for m in range(8):
        assert h[(m + 4) % 8] == -h[m]
        assert h[(8 - m) % 8] == h[m].conjugate()


def test_approx_rejects_broken_symmetry():
    rows = [list(row) for row in APPROX.integer_matrix]
    rows[3][3] = GaussianInt(2)
    with pytest.raises(InternalError):
        ApproxTransform(scale=dyadic.HALF, integer_matrix=tuple(tuple(r) for r in rows))


def test_approx_rejects_entries_outside_q():
    rows = [list(row) for row in APPROX.integer_matrix]
    rows[0][0] = GaussianInt(3)
    with pytest.raises(InternalError):
        ApproxTransform(scale=dyadic.HALF, integer_matrix=tuple(tuple(r) for r in rows))


def test_approx_frobenius_norm():
    assert frobenius_norm(APPROX.matrix) == pytest.approx(math.sqrt(56))


def test_factorization_is_exact():
    report = verify_factorization()
    assert report.exact_equal
    assert report.max_abs_deviation <= 1e-14
    assert FACTORIZATION.product() == APPROX.matrix


def test_sign_flip_breaks_factorization():
    rows = [list(row) for row in FACTORIZATION.stages[0].matrix.entries]
    rows[0][4] = -rows[0][4]
    flipped = FactorStage("B8", StageKind.BLOCK, MatrixC.from_rows(rows))
    report = verify_factorization(Factorization(stages=(flipped, *FACTORIZATION.stages[1:])))
    assert not report.exact_equal
    assert report.max_abs_deviation > 0.1


def test_permutation_and_rotation_stages():
    shuffled = FACTORIZATION.stages[-1].matrix.to_numpy() @ np.arange(1, 9)
    assert shuffled.real.tolist() == [1, 5, 3, 6, 2, 8, 4, 7]
    rotations = np.diag(FACTORIZATION.stages[4].matrix.to_numpy())
    assert rotations.tolist() == [1, 1, 1, 1j, 1, 1j, 1j, 1]


def test_stage_order():
    names = [s.name for s in FACTORIZATION.stages]
    assert names == ["B8", "diag(B4,A2)", "D1", "diag(B2,I2,A4)", "D2", "diag(I2,A1,A3)", "P"]
    assert FACTORIZATION.product_order()[0].name == "P"


def test_stage_rows_have_at_most_two_terms():
    for stage in FACTORIZATION.stages:
        assert all(1 <= len(terms) <= 2 for terms in stage.terms)


def test_bad_stage_is_rejected():
    dense = MatrixC.from_rows([[1] * 8 for _ in range(8)])
    with pytest.raises(InternalError):
        FactorStage("dense", StageKind.BLOCK, dense)
    scaled = MatrixC.from_rows([[2 if i == k else 0 for k in range(8)] for i in range(8)])
    with pytest.raises(InternalError):
        FactorStage("scaled", StageKind.DIAGONAL, scaled)


def test_operation_counts():
    counts = complexity_report()
    assert counts.complex_additions == 26
    assert counts.real_additions == 52
    assert counts.halvings == 2
    assert counts.j_rotations == 3
    assert counts.negations == 0
    assert [stage_complexity(s).complex_additions for s in FACTORIZATION.stages] == [
        8, 6, 0, 6, 0, 6, 0,
    ]


def test_direct_counts():
    direct = direct_complexity()
    assert direct.complex_additions == 56
    assert direct.real_additions == 112
    assert direct.nontrivial_multiplications == 16


def test_flow_graph():
    graph = signal_flow_graph()
    assert nx.is_directed_acyclic_graph(graph)
    assert len(adder_nodes(graph)) == complexity_report().complex_additions
    assert adder_depth() == 4


def test_fast_matches_direct_exactly():
    rng = np.random.default_rng(7)
    for _ in range(1000):
        parts = rng.integers(-1000, 1001, size=(8, 2))
        frame = [DyadicGaussian.make(int(re), int(im)) for re, im in parts]
        fast = apply_fast(FACTORIZATION, frame)
        assert all(isinstance(x, DyadicGaussian) for x in fast)
        assert fast == apply_direct(APPROX, frame)


def test_fast_matches_direct_in_float_batches():
    rng = np.random.default_rng(11)
    batch = rng.standard_normal((8, 1000)) + 1j * rng.standard_normal((8, 1000))
    fast = apply_fast(FACTORIZATION, batch)
    assert fast.shape == (8, 1000)
    np.testing.assert_allclose(fast, apply_direct(APPROX, batch), rtol=0, atol=1e-12)


def test_fast_single_complex_frame():
    frame = [complex(n, -n) for n in range(8)]
    np.testing.assert_allclose(
        np.asarray(apply_fast(FACTORIZATION, frame)),
        np.asarray(apply_direct(APPROX, frame)),
        atol=1e-12,
    )


def test_dc_input_lands_in_bin_zero():
    out = apply_fast(FACTORIZATION, [GaussianInt(1)] * 8)
    assert out[0] == DyadicGaussian.make(8)
    assert all(x.is_zero() for x in out[1:])


def test_wrong_length_is_rejected():
    with pytest.raises(DimensionError):
        apply_fast(FACTORIZATION, [1, 2, 3])
    with pytest.raises(DimensionError):
        apply_direct(APPROX, np.zeros(7))


def test_inverse_examples():
    np.testing.assert_allclose(apply_inverse_exact([8] + [0] * 7), np.ones(8), atol=1e-12)
    column = build_exact_dft(8).matrix.column(0)
    np.testing.assert_allclose(apply_inverse_exact(list(column)), np.eye(8)[0], atol=1e-12)
    with pytest.raises(DimensionError):
        apply_inverse_exact([1, 2, 3])


def test_fast_is_linear():
    rng = np.random.default_rng(13)
    u, v = rng.standard_normal((2, 8)) + 1j * rng.standard_normal((2, 8))
    alpha, beta = 0.3 - 1.2j, -2.0 + 0.5j
    combined = apply_fast(FACTORIZATION, alpha * u + beta * v)
    separate = alpha * apply_fast(FACTORIZATION, u) + beta * apply_fast(FACTORIZATION, v)
    np.testing.assert_allclose(combined, separate, atol=1e-12)


def test_rows_sum_to_zero_except_dc():
    sums = APPROX.matrix.to_numpy().sum(axis=1)
    assert sums[0] == 8
    np.testing.assert_array_equal(sums[1:], np.zeros(7))
