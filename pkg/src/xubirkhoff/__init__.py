"""Constructive Birkhoff-style decompositions of unit-line-sum unitaries.

XU(n) is the group of n x n unitary matrices whose 2n line sums (row and
column sums) all equal 1. This package decomposes XU matrices into
weighted sums of permutation matrices with weight sum 1, including the
constructions whose squared weight moduli also sum to 1 (n prime, and the
explicit table for n = 4), factors arbitrary unitaries through XU by
diagonal phase scaling, and extends the decomposition to any unitary via
complex permutation matrices. Everything is verified numerically by
reconstruction.
"""

from .birkhoff import (
    PRUNE_EPS,
    VerificationReport,
    decompose_prime,
    decompose_prime_parts,
    decompose_recursive,
    decompose_unitary,
    decompose_xu,
    decompose_xu2,
    decompose_xu3,
    decompose_xu4,
    product,
    verify,
)
from .errors import (
    ConvergenceError,
    DimensionError,
    MembershipError,
    NotAPermutationError,
    StructureError,
    UnsupportedDimensionError,
    XUBirkhoffError,
)
from .numerics import (
    DEFAULT_TOL,
    MatrixClass,
    classify,
    dft_matrix,
    line_sums,
    matrix_from_json,
    matrix_to_json,
    root_of_unity,
)
from .permsum import (
    ComplexPermSum,
    ComplexPermTerm,
    WeightedPermSum,
    perm_sum_from_json,
    perm_sum_to_json,
)
from .permutations import (
    Permutation,
    SupercirculantLabel,
    compose,
    d_family,
    detect_supercirculant,
    lexicographic_index,
    lexicographic_permutations,
    perm_from_json,
    perm_to_json,
    perm_to_matrix,
    shift_matrix,
    supercirculant_perm,
    van_der_waerden,
)
from .sampling import (
    SampleSpec,
    haar_unitary,
    random_circulant_xu,
    random_xu,
    random_zu,
    sample,
)
from .scaling import ScalingOptions, ZXZFactorization, zxz_scale
from .xu_group import (
    TransferMatrix,
    circulant_xu_decompose,
    constant_line_sum_check,
    embed_core,
    extract_core,
    is_prime,
    pitch,
    transfer_block_dims,
    transfer_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "PRUNE_EPS",
    "DEFAULT_TOL",
    "XUBirkhoffError",
    "DimensionError",
    "UnsupportedDimensionError",
    "NotAPermutationError",
    "MembershipError",
    "StructureError",
    "ConvergenceError",
    "MatrixClass",
    "classify",
    "dft_matrix",
    "line_sums",
    "root_of_unity",
    "matrix_to_json",
    "matrix_from_json",
    "Permutation",
    "SupercirculantLabel",
    "compose",
    "d_family",
    "detect_supercirculant",
    "lexicographic_index",
    "lexicographic_permutations",
    "perm_to_matrix",
    "perm_to_json",
    "perm_from_json",
    "shift_matrix",
    "supercirculant_perm",
    "van_der_waerden",
    "WeightedPermSum",
    "ComplexPermTerm",
    "ComplexPermSum",
    "perm_sum_to_json",
    "perm_sum_from_json",
    "TransferMatrix",
    "circulant_xu_decompose",
    "constant_line_sum_check",
    "embed_core",
    "extract_core",
    "is_prime",
    "pitch",
    "transfer_block_dims",
    "transfer_matrix",
    "ScalingOptions",
    "ZXZFactorization",
    "zxz_scale",
    "VerificationReport",
    "decompose_xu",
    "decompose_xu2",
    "decompose_xu3",
    "decompose_xu4",
    "decompose_prime",
    "decompose_prime_parts",
    "decompose_recursive",
    "decompose_unitary",
    "product",
    "verify",
    "SampleSpec",
    "haar_unitary",
    "random_xu",
    "random_circulant_xu",
    "random_zu",
    "sample",
]
