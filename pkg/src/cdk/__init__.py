"""Exact arithmetic for the Cayley-Dickson algebras A_n = Q^(2^n)."""

from .cdcore import (
    AlgebraError,
    Element,
    LevelError,
    associator,
    basis_product,
    cd_mul,
    commutator,
    conjugate,
    e_tilde,
    inner,
    norm2,
    purity,
    structure_table,
    tilde,
    trace,
)

__all__ = [
    "AlgebraError", "Element", "LevelError", "associator", "basis_product", "cd_mul",
    "commutator", "conjugate", "e_tilde", "inner", "norm2", "purity", "structure_table",
    "tilde", "trace",
]
