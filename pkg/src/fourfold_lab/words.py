"""Freely reduced words over an indexed generator alphabet.

A word is stored run-length encoded as a tuple of (generator index, exponent)
pairs with nonzero exponents and distinct adjacent generators.  Construction
always free-reduces, so every Word in the system is reduced by invariant.
"""

from __future__ import annotations

from typing import Callable, Iterable, Iterator, Tuple

Run = Tuple[int, int]


def _reduce_runs(runs: Iterable[Run]) -> Tuple[Run, ...]:
    stack: list[list[int]] = []
    for gen, exp in runs:
        if exp == 0:
            continue
        if gen < 0:
            raise ValueError(f"negative generator index {gen}")
        if stack and stack[-1][0] == gen:
            stack[-1][1] += exp
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([gen, exp])
    return tuple((g, e) for g, e in stack)


class Word:
    """An element of a free group on indexed generators."""

    __slots__ = ("runs",)

    def __init__(self, runs: Iterable[Run] = ()):
        object.__setattr__(self, "runs", _reduce_runs(runs))

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def from_letters(cls, letters: Iterable[Run]) -> "Word":
        """Build from (generator, +-1) letters; any exponents are accepted."""
        return cls(letters)

    @classmethod
    def gen(cls, g: int, exp: int = 1) -> "Word":
        return cls(((g, exp),))

    @classmethod
    def identity(cls) -> "Word":
        return cls()

    # -- structure ----------------------------------------------------

    def letters(self) -> Iterator[Run]:
        """Yield (generator, sign) letters, one per unit exponent."""
        for g, e in self.runs:
            s = 1 if e > 0 else -1
            for _ in range(abs(e)):
                yield (g, s)

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.runs)

    def __bool__(self) -> bool:
        return bool(self.runs)

    def __eq__(self, other) -> bool:
        return isinstance(other, Word) and self.runs == other.runs

    def __hash__(self) -> int:
        return hash(self.runs)

    def __repr__(self) -> str:
        if not self.runs:
            return "Word()"
        body = " ".join(f"g{g}^{e}" if e != 1 else f"g{g}" for g, e in self.runs)
        return f"Word[{body}]"

    def max_generator(self) -> int:
        """Largest generator index used, or -1 for the identity."""
        return max((g for g, _ in self.runs), default=-1)

    # -- group operations ----------------------------------------------

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.runs + other.runs)

    def inverse(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.runs)))

    def __pow__(self, n: int) -> "Word":
        if n == 0:
            return Word()
        base = self if n > 0 else self.inverse()
        return Word(base.runs * abs(n))

    def conjugate(self, by: "Word") -> "Word":
        """by * self * by^-1."""
        return by * self * by.inverse()

    def exponent_sum(self, gen: int) -> int:
        return sum(e for g, e in self.runs if g == gen)

    def exponent_vector(self, ngens: int) -> Tuple[int, ...]:
        out = [0] * ngens
        for g, e in self.runs:
            if g >= ngens:
                raise ValueError(f"generator index {g} out of range {ngens}")
            out[g] += e
        return tuple(out)

    def substitute(self, image: Callable[[int], "Word"]) -> "Word":
        """Apply the homomorphism sending generator g to image(g)."""
        parts: list[Run] = []
        for g, e in self.runs:
            w = image(g) ** e
            parts.extend(w.runs)
        return Word(parts)

    def remap(self, table: dict[int, int]) -> "Word":
        """Rename generator indices through a total mapping."""
        return Word(tuple((table[g], e) for g, e in self.runs))

    # -- cyclic structure ----------------------------------------------

    def cyclic_reduce(self) -> "Word":
        """Shortest conjugate: strip matching inverse letters off the ends."""
        letters = list(self.letters())
        while len(letters) >= 2 and letters[0][0] == letters[-1][0] and letters[0][1] == -letters[-1][1]:
            letters = letters[1:-1]
        return Word(letters)

    def cyclic_key(self) -> Tuple[Run, ...]:
        """Canonical key shared by all rotations of this word and its inverse.

        Used to compare relators up to the moves that do not change a normal
        closure: conjugation and inversion.
        """
        core = self.cyclic_reduce()
        letters = tuple(core.letters())
        inv = tuple(core.inverse().letters())
        n = len(letters)
        if n == 0:
            return ()
        candidates = [letters[i:] + letters[:i] for i in range(n)]
        candidates += [inv[i:] + inv[:i] for i in range(n)]
        return min(candidates)


def free_reduce(letters: Iterable[Run]) -> Word:
    """Freely reduce a raw letter sequence into a Word."""
    return Word(letters)


def commutator(a: Word, b: Word) -> Word:
    """a b a^-1 b^-1."""
    return a * b * a.inverse() * b.inverse()
