"""Exact representation-theoretic tools for border rank lower bounds.

Kronecker coefficients, stabiliser invariant dimensions for unit and
matrix-multiplication tensors, highest-weight-vector evaluation, and
small moment-polytope checks.
"""

from .kronecker import WeightTriple, kronecker
from .partitions import Partition, parse_partition
from .tensors import RankOneDecomposition, matmul_tensor, strassen_decomposition, unit_tensor

__all__ = [
    "Partition",
    "RankOneDecomposition",
    "WeightTriple",
    "kronecker",
    "matmul_tensor",
    "parse_partition",
    "strassen_decomposition",
    "unit_tensor",
]
__version__ = "0.1.0"
