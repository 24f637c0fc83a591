"""Exact and floating point complex arithmetic shared by the rest of the package"""
from .dyadic import DyadicGaussian, dyadic_add, parse_dyadic
from .gaussian import GaussianInt, gauss_mul_j
from .matrix import ComplexF, MatrixC, frobenius_norm, matmul, matvec

__all__ = [
    "ComplexF",
    "DyadicGaussian",
    "GaussianInt",
    "MatrixC",
    "dyadic_add",
    "frobenius_norm",
    "gauss_mul_j",
    "matmul",
    "matvec",
    "parse_dyadic",
]
