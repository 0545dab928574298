"""Exact arithmetic substrate: rationals, Laurent polynomials, cyclotomic
fields and exact matrix rank / kernel / Smith normal form."""

from fractions import Fraction as Rational

from .linalg import (RankAccumulator, SparseMatrix, TrackedEchelon, cyc_rank, evaluate_matrix,
                     generic_rank, kernel_basis, matmul_laurent, rat_kernel, rat_rank,
                     vectors_rank)
from .modular import modp_rank, modp_rank_sparse, prime_for_conductor, sparse_triples
from .poly import (T, CyclotomicNumber, LaurentPoly, cyclotomic_polynomial, divisors,
                   euler_phi)
from .snf import int_det, int_matmul, smith_normal_form

__all__ = [
    "Rational", "LaurentPoly", "CyclotomicNumber", "T", "SparseMatrix", "RankAccumulator", "TrackedEchelon",
    "cyclotomic_polynomial", "euler_phi", "divisors", "rat_rank", "rat_kernel",
    "kernel_basis", "vectors_rank", "cyc_rank", "generic_rank", "evaluate_matrix",
    "matmul_laurent", "smith_normal_form", "int_det", "int_matmul", "modp_rank",
    "modp_rank_sparse", "sparse_triples", "prime_for_conductor",
]
