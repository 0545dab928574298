"""Exact GLMY path homology of finite digraphs over Q.

``pathcomplex`` is the brute-force reference for arbitrary digraphs;
``circulant_fourier`` computes circulant digraphs mode by mode;
``constructions`` holds explicit chains and the retraction certificates.
"""

from .circulant_fourier import (betti_via_fourier, cyclotomic_support, mode_homology,
                                omega_word_basis, stability_scan, symbol_matrix)
from .digraph import ConnectionSet, Digraph, circulant, circulant_digraph, parse_circ
from .pathcomplex import BettiTable, Chain, betti, boundary, omega_basis

__version__ = "0.1.0"

__all__ = [
    "Digraph", "ConnectionSet", "circulant", "circulant_digraph", "parse_circ",
    "Chain", "boundary", "omega_basis", "betti", "BettiTable",
    "omega_word_basis", "symbol_matrix", "mode_homology", "betti_via_fourier",
    "cyclotomic_support", "stability_scan",
]
