"""Finitely presented group toolkit: one import surface for the word,
presentation, abelianization, and Alexander-polynomial layers."""

from .fox import fox_alexander
from .intlinalg import IntegerMatrix, smith_normal_form
from .laurent import LaurentPolynomial
from .presentations import (
    AbelianGroupStructure,
    Presentation,
    PresentationError,
    ShadowFamily,
    ShadowNotCommutator,
    abelianize,
    amalgamate,
    infinite_cyclic_map,
    tietze_simplify,
)
from .words import Word, commutator, free_reduce

__all__ = [
    "AbelianGroupStructure",
    "IntegerMatrix",
    "LaurentPolynomial",
    "Presentation",
    "PresentationError",
    "ShadowFamily",
    "ShadowNotCommutator",
    "Word",
    "abelianize",
    "amalgamate",
    "commutator",
    "fox_alexander",
    "free_reduce",
    "infinite_cyclic_map",
    "smith_normal_form",
    "tietze_simplify",
]
