"""Free differential calculus, specialized along an abelianization map.

The derivative of a word is taken with coefficients already pushed into
Z[t^-1, t]: each generator g is weighted t^phi(g) for a supplied integer
grading phi.  That is all the Alexander polynomial needs, and it keeps
every intermediate object a one-variable Laurent polynomial.
"""

from __future__ import annotations

from typing import Dict, List, Mapping, Sequence

from .laurent import LaurentPolynomial, gcd_many, laurent_det
from .presentations import Presentation, PresentationError, abelianize
from .words import Word


class BadDeficiency(PresentationError):
    """The presentation does not have exactly one fewer relator than
    generators, so the one-column-deleted minor recipe does not apply."""


def fox_derivative(w: Word, gen: int, phi: Sequence[int]) -> LaurentPolynomial:
    """d(w)/d(x_gen) evaluated along t^phi.

    Satisfies the product rule d(uv) = d(u) + t^phi(u) d(v), with
    d(x) = 1 and d(x^-1) = -t^-phi(x) for a single generator x.
    """
    out: Dict[int, int] = {}
    pre = 0  # phi of the prefix consumed so far
    for g, e in w.letters():
        if e == 1:
            if g == gen:
                out[pre] = out.get(pre, 0) + 1
            pre += phi[g]
        else:
            pre -= phi[g]
            if g == gen:
                out[pre] = out.get(pre, 0) - 1
    return LaurentPolynomial.from_dict(out)


def alexander_matrix(
    pres: Presentation, phi: Sequence[int]
) -> List[List[LaurentPolynomial]]:
    """Relators-by-generators matrix of specialized free derivatives."""
    if len(phi) != pres.ngens:
        raise PresentationError("grading length does not match generator count")
    return [
        [fox_derivative(r, j, phi) for j in range(pres.ngens)] for r in pres.relators
    ]


def _derive_grading(pres: Presentation) -> List[int]:
    ab = abelianize(pres)
    if not ab.is_infinite_cyclic():
        raise PresentationError(
            f"need H_1 = Z to grade generators, got {ab.describe()}"
        )
    return [img[0] for img in ab.free_images]


def fox_alexander(
    pres: Presentation, phi: Mapping[str, int] | Sequence[int] | None = None
) -> LaurentPolynomial:
    """Alexander polynomial of a deficiency-one presentation.

    ``phi`` grades each generator by its image in H_1 = Z; when omitted it
    is computed from the abelianization (which must be infinite cyclic).
    The result is the gcd of all maximal minors obtained by deleting one
    column of the free-derivative matrix, returned in canonical form
    (degree starting at 0, positive leading coefficient).  Shadow relator
    families are rejected: an unknown relator could change the answer.
    """
    if pres.shadows:
        raise PresentationError("Alexander polynomial undefined with shadow relators")
    if len(pres.relators) != pres.ngens - 1:
        raise BadDeficiency(
            f"{len(pres.relators)} relators on {pres.ngens} generators"
        )
    if phi is None:
        grading: List[int] = _derive_grading(pres)
    elif isinstance(phi, Mapping):
        grading = [phi[name] for name in pres.generators]
    else:
        grading = list(phi)
    mat = alexander_matrix(pres, grading)
    n = pres.ngens
    minors = []
    for skip in range(n):
        rows = [[row[j] for j in range(n) if j != skip] for row in mat]
        minors.append(laurent_det(rows))
    return gcd_many(minors).normalized()
