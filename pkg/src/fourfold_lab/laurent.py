"""Integer Laurent polynomials in one variable.

Coefficient arithmetic is exact (Python ints).  Equality is on-the-nose;
quantities defined only up to a unit (+-t^k) go through ``normalized`` or
``is_associate``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple


class LaurentPolynomial:
    """sum(coeffs[i] * t^(low+i)); trimmed so coeffs[0] and coeffs[-1] are
    nonzero, with the zero polynomial stored as (low=0, coeffs=())."""

    __slots__ = ("low", "coeffs")

    def __init__(self, low: int = 0, coeffs: Sequence[int] = ()):
        cs = [int(c) for c in coeffs]
        lead = 0
        while cs and cs[-1] == 0:
            cs.pop()
        while cs and cs[0] == 0:
            cs.pop(0)
            lead += 1
        if not cs:
            low = 0
        object.__setattr__(self, "low", low + lead if cs else 0)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPolynomial is immutable")

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPolynomial":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPolynomial":
        return cls(0, (1,))

    @classmethod
    def t(cls, exp: int = 1) -> "LaurentPolynomial":
        return cls(exp, (1,))

    @classmethod
    def monomial(cls, coeff: int, exp: int = 0) -> "LaurentPolynomial":
        return cls(exp, (coeff,))

    @classmethod
    def from_dict(cls, d: Dict[int, int]) -> "LaurentPolynomial":
        if not d:
            return cls()
        lo = min(d)
        hi = max(d)
        return cls(lo, [d.get(e, 0) for e in range(lo, hi + 1)])

    def as_dict(self) -> Dict[int, int]:
        return {self.low + i: c for i, c in enumerate(self.coeffs) if c != 0}

    # -- ring structure -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LaurentPolynomial)
            and self.low == other.low
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.low, self.coeffs))

    def __add__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        if not self.coeffs:
            return other
        if not other.coeffs:
            return self
        lo = min(self.low, other.low)
        hi = max(self.low + len(self.coeffs), other.low + len(other.coeffs))
        out = [0] * (hi - lo)
        for i, c in enumerate(self.coeffs):
            out[self.low - lo + i] += c
        for i, c in enumerate(other.coeffs):
            out[other.low - lo + i] += c
        return LaurentPolynomial(lo, out)

    def __neg__(self) -> "LaurentPolynomial":
        return LaurentPolynomial(self.low, [-c for c in self.coeffs])

    def __sub__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        return self + (-other)

    def __mul__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        if not self.coeffs or not other.coeffs:
            return LaurentPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return LaurentPolynomial(self.low + other.low, out)

    def __pow__(self, n: int) -> "LaurentPolynomial":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = LaurentPolynomial.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, k: int) -> "LaurentPolynomial":
        return LaurentPolynomial(self.low, [k * c for c in self.coeffs])

    def shift(self, e: int) -> "LaurentPolynomial":
        """Multiply by t^e."""
        return LaurentPolynomial(self.low + e, self.coeffs)

    # -- queries ------------------------------------------------------------

    @property
    def min_degree(self) -> int:
        if not self.coeffs:
            raise ValueError("degree of the zero polynomial")
        return self.low

    @property
    def max_degree(self) -> int:
        if not self.coeffs:
            raise ValueError("degree of the zero polynomial")
        return self.low + len(self.coeffs) - 1

    def span(self) -> int:
        """max_degree - min_degree; 0 for monomials and for zero."""
        return len(self.coeffs) - 1 if self.coeffs else 0

    def evaluate(self, x):
        """Exact evaluation; x may be int or Fraction (nonzero if low < 0)."""
        if not self.coeffs:
            return 0
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        if self.low:
            if x == 0:
                raise ZeroDivisionError("negative powers at x = 0")
            acc = acc * Fraction(x) ** self.low if self.low < 0 else acc * x**self.low
        return acc

    def content(self) -> int:
        return math.gcd(*self.coeffs) if self.coeffs else 0

    def reciprocal(self) -> "LaurentPolynomial":
        """The image under t -> t^-1."""
        return LaurentPolynomial(-(self.low + len(self.coeffs) - 1), self.coeffs[::-1])

    def is_palindromic(self) -> bool:
        """Symmetric under t -> t^-1, up to a unit."""
        return self.is_associate(self.reciprocal())

    # -- associates -----------------------------------------------------------

    def normalized(self) -> "LaurentPolynomial":
        """Canonical associate: lowest degree 0, positive leading coefficient."""
        if not self.coeffs:
            return LaurentPolynomial()
        cs = self.coeffs if self.coeffs[-1] > 0 else tuple(-c for c in self.coeffs)
        return LaurentPolynomial(0, cs)

    def is_associate(self, other: "LaurentPolynomial") -> bool:
        return self.normalized() == other.normalized()

    def is_monic_symmetric(self) -> bool:
        """Leading and trailing coefficients both units."""
        return bool(self.coeffs) and abs(self.coeffs[0]) == 1 and abs(self.coeffs[-1]) == 1

    # -- display ----------------------------------------------------------------

    def __repr__(self) -> str:
        return f"LaurentPolynomial({self.low}, {self.coeffs})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            e = self.low + i
            if e == 0:
                term = str(abs(c))
            else:
                tp = "t" if e == 1 else f"t^{e}"
                term = tp if abs(c) == 1 else f"{abs(c)}*{tp}"
            if not parts:
                parts.append(term if c > 0 else f"-{term}")
            else:
                parts.append(f"+ {term}" if c > 0 else f"- {term}")
        return " ".join(parts)


# -- division and gcd ----------------------------------------------------------


def divexact(num: LaurentPolynomial, den: LaurentPolynomial) -> LaurentPolynomial:
    """Exact quotient num / den; raises ValueError if den does not divide."""
    if den.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if num.is_zero():
        return LaurentPolynomial()
    rem = list(num.coeffs)
    d = list(den.coeffs)
    qlen = len(rem) - len(d) + 1
    if qlen <= 0:
        raise ValueError("does not divide: degree too small")
    q = [0] * qlen
    for k in range(qlen - 1, -1, -1):
        head = rem[k + len(d) - 1]
        if head % d[-1] != 0:
            raise ValueError("does not divide: non-integral step")
        q[k] = head // d[-1]
        if q[k]:
            for j, dc in enumerate(d):
                rem[k + j] -= q[k] * dc
    if any(rem):
        raise ValueError("does not divide: nonzero remainder")
    return LaurentPolynomial(num.low - den.low, q)


def _prim(p: LaurentPolynomial) -> LaurentPolynomial:
    c = p.content()
    return LaurentPolynomial(0, [x // c for x in p.coeffs]) if c else LaurentPolynomial()


def gcd(a: LaurentPolynomial, b: LaurentPolynomial) -> LaurentPolynomial:
    """gcd up to units, returned in canonical normalized form.

    Primitive pseudo-remainder sequence; contents are combined with an
    integer gcd, as in the classical Gauss-lemma factorization.
    """
    if a.is_zero():
        return b.normalized()
    if b.is_zero():
        return a.normalized()
    content = math.gcd(a.content(), b.content())
    p, q = _prim(a), _prim(b)
    while not q.is_zero():
        # pseudo-remainder: scale p so every division step stays integral
        shift = p.span() - q.span()
        if shift < 0:
            p, q = q, p
            continue
        lead_q = q.coeffs[-1]
        r = p.scale(lead_q ** (shift + 1))
        qq: List[int] = []
        rem = list(r.coeffs)
        for k in range(shift, -1, -1):
            coef = rem[k + q.span()] // lead_q
            for j, qc in enumerate(q.coeffs):
                rem[k + j] -= coef * qc
        p, q = q, _prim(LaurentPolynomial(0, rem))
    return _prim(p).scale(content).normalized()


def gcd_many(polys: Iterable[LaurentPolynomial]) -> LaurentPolynomial:
    acc = LaurentPolynomial.zero()
    for p in polys:
        acc = gcd(acc, p)
        if acc == LaurentPolynomial.one():
            break
    return acc


def laurent_det(rows: Sequence[Sequence[LaurentPolynomial]]) -> LaurentPolynomial:
    """Determinant of a small square matrix of Laurent polynomials, by
    cofactor expansion along the first column."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return LaurentPolynomial.one()
    if n == 1:
        return rows[0][0]
    total = LaurentPolynomial.zero()
    for i in range(n):
        lead = rows[i][0]
        if lead.is_zero():
            continue
        minor = [r[1:] for k, r in enumerate(rows) if k != i]
        term = lead * laurent_det(minor)
        total = total + (term if i % 2 == 0 else -term)
    return total


def cyclotomic_like(n: int) -> LaurentPolynomial:
    """t^n - 1."""
    if n < 1:
        raise ValueError("need n >= 1")
    return LaurentPolynomial.t(n) - LaurentPolynomial.one()
