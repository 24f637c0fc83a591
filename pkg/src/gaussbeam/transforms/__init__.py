"""Exact DFT, the 8-point approximation and its fast factorization"""
from .apply import apply_direct, apply_fast
from .approx import ApproxTransform, build_approx_matrix
from .exact import ExactDft, apply_inverse_exact, build_exact_dft
from .factorization import (
    DirectOpCount,
    FactorStage,
    Factorization,
    FactorizationReport,
    OpCount,
    build_factorization,
    complexity_report,
    direct_complexity,
    verify_factorization,
)
from .flowgraph import adder_depth, signal_flow_graph

__all__ = [
    "ApproxTransform",
    "DirectOpCount",
    "ExactDft",
    "FactorStage",
    "Factorization",
    "FactorizationReport",
    "OpCount",
    "adder_depth",
    "apply_direct",
    "apply_fast",
    "apply_inverse_exact",
    "build_approx_matrix",
    "build_exact_dft",
    "build_factorization",
    "complexity_report",
    "direct_complexity",
    "signal_flow_graph",
    "verify_factorization",
]
