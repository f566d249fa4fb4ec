"""Exact multisimplicial chain calculus: differentials, EZ/AW maps, cup products,
surjection and Barratt-Eccles complexes, cohomology rings."""
from .exactlin import GF, QQ, ZZ, NotAField, Ring, RingMismatch, SparseMatrix, parse_ring, smith_normal_form
from .msets import (Diagonal, ExternalProduct, IndexOutOfRange, MSet, StandardMultisimplex, StandardSimplex,
                    diagonal, product_set)
from .complexes import CapTooLow, Cochain, ComplexView, boundary, chain_map_h, homotopy_T
from .ezaw import (Shuffle, aw_multisimplicial, aw_simplicial, check_identities, cup, enumerate_shuffles,
                   ez_multisimplicial, verify_square)
from .surjection import (BarrattEccles, Surjection, TC, complexity, counting_polynomial_be,
                         counting_polynomial_sur, tc)
from .cohomtools import NotExact, cohomology_ring, massey_triple, verify_ez_ring_iso

__all__ = [
    "GF", "QQ", "ZZ", "NotAField", "Ring", "RingMismatch", "SparseMatrix", "parse_ring", "smith_normal_form",
    "Diagonal", "ExternalProduct", "IndexOutOfRange", "MSet", "StandardMultisimplex", "StandardSimplex",
    "diagonal", "product_set", "CapTooLow", "Cochain", "ComplexView", "boundary", "chain_map_h",
    "homotopy_T", "Shuffle", "aw_multisimplicial", "aw_simplicial", "check_identities", "cup",
    "enumerate_shuffles", "ez_multisimplicial", "verify_square", "BarrattEccles", "Surjection", "TC",
    "complexity", "counting_polynomial_be", "counting_polynomial_sur", "tc", "NotExact",
    "cohomology_ring", "massey_triple", "verify_ez_ring_iso",
]
