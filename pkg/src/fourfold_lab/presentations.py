"""Finite presentations with partially-known relator sets.

A ``Presentation`` is the usual generators-and-relators data, plus an
optional list of ``ShadowFamily`` records.  A shadow family stands for
relators (or extra generators) that are known to exist but are not known
as explicit words; all that is recorded is a normal-closure basis that
contains every member.  Homology routines consume that bound when it is
strong enough to pin the answer down, and raise loudly when it is not.

Words are stored as index-based ``Word`` objects; the generator names
live only on the presentation, which also owns the text grammar:
space-separated tokens, uppercase meaning inverse, with an optional
``^exp`` suffix (``a B a^-2`` is a * b^-1 * a^-2).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from .intlinalg import IntegerMatrix, smith_normal_form
from .words import Word


class PresentationError(ValueError):
    pass


class ShadowNotCommutator(PresentationError):
    """Raised when a shadow family obstructs an exact homology answer.

    Abelianization can tolerate unknown relators only when every word in
    the family's normal-closure basis has zero exponent sum in every
    generator: then every unknown member abelianizes to zero and the
    answer is exact.  Any other basis leaves the homology undetermined.
    """


_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class ShadowFamily:
    """A family of unstated relators or generators.

    ``basis`` is a set of explicit words whose normal closure contains
    every member of the family.  For ``kind == "relators"``, members with
    a known coset representative modulo that normal closure are listed in
    ``known_parts``: each such member equals ``part * n`` for some unknown
    ``n`` in the closure.  ``count_known=False`` records that even the
    number of members is unknown.
    """

    name: str
    kind: str  # "relators" or "generators"
    basis: Tuple[Word, ...] = ()
    known_parts: Tuple[Word, ...] = ()
    count_known: bool = False

    def __post_init__(self):
        if self.kind not in ("relators", "generators"):
            raise PresentationError(f"unknown shadow kind {self.kind!r}")
        if self.kind == "generators" and self.known_parts:
            raise PresentationError("generator families cannot carry known parts")
        object.__setattr__(self, "basis", tuple(self.basis))
        object.__setattr__(self, "known_parts", tuple(self.known_parts))

    def map_words(self, fn) -> "ShadowFamily":
        return ShadowFamily(
            self.name,
            self.kind,
            tuple(fn(w) for w in self.basis),
            tuple(fn(w) for w in self.known_parts),
            self.count_known,
        )


class Presentation:
    """An immutable finite presentation, possibly with shadow families."""

    __slots__ = ("generators", "relators", "shadows", "_index")

    def __init__(
        self,
        generators: Sequence[str],
        relators: Iterable[Word] = (),
        shadows: Iterable[ShadowFamily] = (),
    ):
        gens = tuple(generators)
        seen: Dict[str, None] = {}
        for g in gens:
            if not _NAME_RE.match(g):
                raise PresentationError(f"bad generator name {g!r}")
            if g in seen or g.swapcase() in seen:
                raise PresentationError(f"ambiguous generator name {g!r}")
            seen[g] = None
            seen[g.swapcase()] = None
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "_index", {g: i for i, g in enumerate(gens)})
        rels = tuple(relators)
        shs = tuple(shadows)
        n = len(gens)
        for w in rels:
            if w.max_generator() >= n:
                raise PresentationError("relator uses an undeclared generator")
        for fam in shs:
            for w in fam.basis + fam.known_parts:
                if w.max_generator() >= n:
                    raise PresentationError(
                        f"shadow family {fam.name!r} uses an undeclared generator"
                    )
        object.__setattr__(self, "relators", rels)
        object.__setattr__(self, "shadows", shs)

    def __setattr__(self, name, value):
        raise AttributeError("Presentation is immutable")

    # -- basic queries -------------------------------------------------

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def gen_index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise PresentationError(f"no generator named {name!r}") from None

    def gen(self, name: str, exp: int = 1) -> Word:
        return Word.gen(self.gen_index(name), exp)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Presentation)
            and self.generators == other.generators
            and self.relators == other.relators
            and self.shadows == other.shadows
        )

    def __hash__(self) -> int:
        return hash((self.generators, self.relators, self.shadows))

    def __repr__(self) -> str:
        rels = ", ".join(self.format_word(r) for r in self.relators)
        extra = f" +{len(self.shadows)} shadow" if self.shadows else ""
        return f"<Presentation <{', '.join(self.generators)} | {rels}>{extra}>"

    def relator_keys(self) -> Tuple[tuple, ...]:
        """Sorted conjugacy-and-inversion invariants of the relators.

        Two presentations on the same generators whose relator sets agree
        up to cyclic rotation and inversion compare equal under this key.
        """
        return tuple(sorted(r.cyclic_key() for r in self.relators))

    # -- word grammar ---------------------------------------------------

    def parse_word(self, text: str) -> Word:
        letters: List[Tuple[int, int]] = []
        for token in text.split():
            if token == "1":  # the identity, as format_word writes it
                continue
            atom, _, exp_s = token.partition("^")
            exp = 1
            if exp_s:
                try:
                    exp = int(exp_s)
                except ValueError:
                    raise PresentationError(f"bad exponent in token {token!r}") from None
            if atom in self._index:
                letters.append((self._index[atom], exp))
            elif atom.swapcase() in self._index:
                letters.append((self._index[atom.swapcase()], -exp))
            else:
                raise PresentationError(f"unknown generator token {atom!r}")
        return Word(letters)

    def format_word(self, w: Word) -> str:
        parts = []
        for g, e in w.runs:
            name = self.generators[g]
            if e == 1:
                parts.append(name)
            elif e == -1:
                parts.append(name.swapcase())
            else:
                parts.append(f"{name}^{e}")
        return " ".join(parts) if parts else "1"

    # -- structural rewrites ---------------------------------------------

    def with_relators(self, relators: Iterable[Word]) -> "Presentation":
        return Presentation(self.generators, relators, self.shadows)

    def with_shadows(self, shadows: Iterable[ShadowFamily]) -> "Presentation":
        return Presentation(self.generators, self.relators, shadows)

    def renamed(self, mapping: Mapping[str, str]) -> "Presentation":
        """Rename generators; indices (hence all words) are unchanged."""
        new = tuple(mapping.get(g, g) for g in self.generators)
        return Presentation(new, self.relators, self.shadows)

    # -- serialization ----------------------------------------------------

    SCHEMA = "fourfold-lab/presentation/1"

    def to_json(self) -> dict:
        return {
            "schema": self.SCHEMA,
            "generators": list(self.generators),
            "relators": [self.format_word(r) for r in self.relators],
            "shadows": [
                {
                    "name": f.name,
                    "kind": f.kind,
                    "basis": [self.format_word(w) for w in f.basis],
                    "known_parts": [self.format_word(w) for w in f.known_parts],
                    "count_known": f.count_known,
                }
                for f in self.shadows
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Presentation":
        if data.get("schema") != cls.SCHEMA:
            raise PresentationError(f"unsupported schema {data.get('schema')!r}")
        pres = cls(data["generators"])
        rels = [pres.parse_word(s) for s in data["relators"]]
        shadows = [
            ShadowFamily(
                f["name"],
                f["kind"],
                tuple(pres.parse_word(s) for s in f["basis"]),
                tuple(pres.parse_word(s) for s in f.get("known_parts", [])),
                f.get("count_known", False),
            )
            for f in data.get("shadows", [])
        ]
        return cls(data["generators"], rels, shadows)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    @classmethod
    def loads(cls, text: str) -> "Presentation":
        return cls.from_json(json.loads(text))


# -- abelianization ---------------------------------------------------------


@dataclass(frozen=True)
class AbelianGroupStructure:
    """H_1 data: ``Z^free_rank  x  Z/t_1 x ... x Z/t_k`` with coordinates.

    ``free_images[j]`` / ``torsion_images[j]`` are the coordinates of the
    j-th generator's homology class; torsion coordinates are reduced
    modulo the matching ``torsion`` entry.  The torsion chain satisfies
    t_i | t_{i+1}.
    """

    free_rank: int
    torsion: Tuple[int, ...]
    generators: Tuple[str, ...] = ()
    free_images: Tuple[Tuple[int, ...], ...] = ()
    torsion_images: Tuple[Tuple[int, ...], ...] = ()

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def is_infinite_cyclic(self) -> bool:
        return self.free_rank == 1 and not self.torsion

    def order(self) -> int | None:
        """Group order, or None when infinite."""
        if self.free_rank:
            return None
        n = 1
        for t in self.torsion:
            n *= t
        return n

    def image_of_vector(self, exp: Sequence[int]) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        """Homology class of an element with the given exponent vector,
        as (free coordinates, torsion coordinates)."""
        free = tuple(
            sum(e * img[i] for e, img in zip(exp, self.free_images))
            for i in range(self.free_rank)
        )
        tors = tuple(
            sum(e * img[i] for e, img in zip(exp, self.torsion_images)) % self.torsion[i]
            for i in range(len(self.torsion))
        )
        return free, tors

    def image_of(self, w: Word) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        return self.image_of_vector(w.exponent_vector(len(self.generators)))

    def describe(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " x ".join(parts) if parts else "0"


def _shadow_rows(pres: Presentation) -> List[Tuple[int, ...]]:
    """Exponent-vector rows contributed by shadow families, or raise."""
    n = pres.ngens
    rows: List[Tuple[int, ...]] = []
    for fam in pres.shadows:
        for w in fam.basis:
            if any(w.exponent_vector(n)):
                raise ShadowNotCommutator(
                    f"shadow family {fam.name!r} has a non-commutator basis word; "
                    "homology is undetermined"
                )
        # every unknown member now abelianizes to its known part (or to 0)
        rows.extend(w.exponent_vector(n) for w in fam.known_parts)
    return rows


def abelianize(pres: Presentation) -> AbelianGroupStructure:
    """Compute H_1 of the presented group, with generator images.

    Works by Smith normal form on the relator exponent matrix.  Shadow
    relator families participate through their known parts; families whose
    basis words are not all commutators raise ShadowNotCommutator, since
    then the unknown members could change the answer.
    """
    n = pres.ngens
    rows = [r.exponent_vector(n) for r in pres.relators]
    rows.extend(_shadow_rows(pres))
    rel = IntegerMatrix(rows, cols=n)
    a = rel.transpose()  # columns span the relation lattice inside Z^n
    d, u, _v = smith_normal_form(a)
    diag = d.diagonal()
    k = sum(1 for x in diag if x != 0)
    torsion_idx = [i for i in range(k) if diag[i] > 1]
    torsion = tuple(diag[i] for i in torsion_idx)
    free_images = tuple(
        tuple(u[i, j] for i in range(k, n)) for j in range(n)
    )
    torsion_images = tuple(
        tuple(u[i, j] % diag[i] for i in torsion_idx) for j in range(n)
    )
    return AbelianGroupStructure(
        free_rank=n - k,
        torsion=torsion,
        generators=pres.generators,
        free_images=free_images,
        torsion_images=torsion_images,
    )


def infinite_cyclic_map(pres: Presentation, one: Word) -> Dict[str, int]:
    """The H_1 = Z coordinate map, scaled so ``one`` maps to +1.

    Raises unless H_1 is infinite cyclic and ``one`` generates it.
    """
    ab = abelianize(pres)
    if not ab.is_infinite_cyclic():
        raise PresentationError(f"H_1 is {ab.describe()}, not Z")
    vals = [img[0] for img in ab.free_images]
    s = sum(e * vals[g] for g, e in one.runs)
    if s not in (1, -1):
        raise PresentationError("normalizing word does not generate H_1")
    return {name: s * v for name, v in zip(pres.generators, vals)}


# -- free products with identifications --------------------------------------


def amalgamate(
    p1: Presentation,
    p2: Presentation,
    identifications: Sequence[Tuple[Word, Word]] = (),
    extra_relators: Sequence[Tuple[Word, Word]] = (),
) -> Presentation:
    """Free product of two presentations plus identification relators.

    Each pair (w1, w2) in ``identifications`` (w1 over p1's generators, w2
    over p2's) yields the relator w1 * w2^-1.  ``extra_relators`` adds
    relators of the same mixed shape without the inverse, i.e. w1 * w2.
    Generator names must be disjoint; rename a side first if they are not.
    """
    overlap = set(p1.generators) & set(p2.generators)
    if overlap:
        raise PresentationError(f"generator names collide: {sorted(overlap)}")
    offset = p1.ngens
    shift = {i: i + offset for i in range(p2.ngens)}

    def lift2(w: Word) -> Word:
        return w.remap(shift)

    gens = p1.generators + p2.generators
    relators = list(p1.relators)
    relators.extend(lift2(r) for r in p2.relators)
    for w1, w2 in identifications:
        relators.append(w1 * lift2(w2).inverse())
    for w1, w2 in extra_relators:
        relators.append(w1 * lift2(w2))

    shadows = list(p1.shadows)
    names = {f.name for f in shadows}
    for fam in p2.shadows:
        fam2 = fam.map_words(lift2)
        if fam2.name in names:
            fam2 = ShadowFamily(
                fam2.name + "'", fam2.kind, fam2.basis, fam2.known_parts, fam2.count_known
            )
        names.add(fam2.name)
        shadows.append(fam2)
    return Presentation(gens, relators, shadows)


# -- Tietze simplification ----------------------------------------------------


def _occurrences(w: Word) -> Dict[int, int]:
    occ: Dict[int, int] = {}
    for g, e in w.runs:
        occ[g] = occ.get(g, 0) + abs(e)
    return occ


def _clean(relators: List[Word]) -> List[Word]:
    out: List[Word] = []
    seen = set()
    for r in relators:
        r = r.cyclic_reduce()
        if not r:
            continue
        key = r.cyclic_key()
        if key in seen:
            continue
        seen.add(key)
        out.append(r)
    return out


def tietze_simplify(pres: Presentation, keep: Iterable[str] = ()) -> Presentation:
    """Shrink a presentation by eliminating generators, safely.

    Only two kinds of moves are used: replacing a relator by its cyclic
    reduction (a conjugate), and eliminating a generator that occurs
    exactly once in some relator by substituting the solved word
    everywhere, shadow families included.  Generators named in ``keep``
    are never eliminated.  Deterministic: candidate relators are scanned
    shortest-first, and the lowest-index eligible generator wins.
    """
    keep_set = set(keep)
    for name in keep_set:
        pres.gen_index(name)  # validate early
    names = list(pres.generators)
    relators = _clean(list(pres.relators))
    shadows = list(pres.shadows)

    while True:
        pick = None
        order = sorted(range(len(relators)), key=lambda i: (len(relators[i]), i))
        for i in order:
            occ = _occurrences(relators[i])
            cands = [g for g, c in occ.items() if c == 1 and names[g] not in keep_set]
            if cands:
                pick = (i, min(cands))
                break
        if pick is None:
            break
        ri, g = pick
        rel = relators.pop(ri)
        letters = list(rel.letters())
        pos = next(idx for idx, (gg, _) in enumerate(letters) if gg == g)
        eps = letters[pos][1]
        tail = Word.from_letters(letters[pos + 1 :] + letters[:pos])
        solved = tail if eps == -1 else tail.inverse()

        def image(idx: int, g=g, solved=solved) -> Word:
            return solved if idx == g else Word.gen(idx)

        def rewrite(w: Word) -> Word:
            return w.substitute(image)

        relators = [rewrite(r) for r in relators]
        shadows = [f.map_words(rewrite) for f in shadows]

        # drop the generator and compact indices
        table = {}
        for idx in range(len(names)):
            if idx < g:
                table[idx] = idx
            elif idx > g:
                table[idx] = idx - 1
        names.pop(g)
        relators = [r.remap(table) for r in relators]
        shadows = [f.map_words(lambda w: w.remap(table)) for f in shadows]
        relators = _clean(relators)

    return Presentation(names, relators, shadows)
