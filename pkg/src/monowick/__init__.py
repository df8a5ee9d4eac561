"""Exact normal ordering for the monotone *-algebra, with a Fock-space oracle."""

from .algebra import (
    IDENTITY,
    BasisIndex,
    Element,
    Letter,
    a,
    basis_adjoint,
    c,
    make_basis_index,
    projection,
    word_length,
)
from .fock import FockVector, apply_element, apply_word, matrix_element
from .wick import adjoint, multiply, normalize_word, product_closed_form

__version__ = "0.1.0"

__all__ = [
    "IDENTITY",
    "BasisIndex",
    "Element",
    "FockVector",
    "Letter",
    "a",
    "adjoint",
    "apply_element",
    "apply_word",
    "basis_adjoint",
    "c",
    "make_basis_index",
    "matrix_element",
    "multiply",
    "normalize_word",
    "product_closed_form",
    "projection",
    "word_length",
]
