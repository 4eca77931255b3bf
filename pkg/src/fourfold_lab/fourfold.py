"""Algebraic models of closed oriented 4-manifolds.

A model carries the numerical invariants (Euler characteristic,
signature, first Betti number), a symmetric intersection form with
labeled basis, a fundamental-group presentation, and a list of marked
surfaces.  The two constructions are the product of a fibered
3-manifold with a circle and the generalized fiber sum along
square-zero surfaces of equal genus.  Characteristic numbers are kept
exact: chi_h is a Fraction, never a float.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .intlinalg import (
    IntegerMatrix,
    block_diag,
    hyperbolic_form,
    is_even_form,
    rank as integer_rank,
    signature_symmetric,
)
from .knotforge import FiberSystem, ThreeManifoldModel
from .presentations import (
    AbelianGroupStructure,
    Presentation,
    PresentationError,
    ShadowFamily,
    ShadowNotCommutator,
    abelianize,
    amalgamate,
    tietze_simplify,
)
from .words import Word, commutator


class ModelError(ValueError):
    pass


class MissingBundleData(ModelError):
    pass


class GenusMismatch(ModelError):
    pass


class NonzeroSquare(ModelError):
    pass


class MissingImages(ModelError):
    pass


class AbelianizationBlocked(ModelError):
    pass


# -- marked surfaces ----------------------------------------------------------


@dataclass(frozen=True)
class MarkedSurface:
    """An embedded surface tracked by label.

    ``homology_vector`` is its class in the model's form basis, or None
    when the class is not tracked there (external).  ``pi1_images`` are
    the images of the 2*genus standard surface generators, or None when
    unknown (homology-only classes such as rim tori).
    """

    label: str
    genus: int
    self_intersection: int
    homology_vector: Optional[Tuple[int, ...]] = None
    pi1_images: Optional[Tuple[Word, ...]] = None

    def __post_init__(self):
        if self.genus < 0:
            raise ModelError("genus must be non-negative")
        if self.pi1_images is not None and len(self.pi1_images) != 2 * self.genus:
            raise ModelError(f"surface {self.label!r} needs 2*genus pi1 images")


# -- the model ----------------------------------------------------------------


@dataclass(frozen=True)
class FourManifoldModel:
    name: str
    euler: int
    signature: int
    b1: int
    form: IntegerMatrix
    basis: Tuple[str, ...]
    pi1: Presentation
    surfaces: Tuple[MarkedSurface, ...] = ()
    symplectic: bool = False
    canonical_class: Optional[Tuple[int, ...]] = None
    # False when the tracked form is a sublattice of H_2, not all of it
    form_complete: bool = True
    pi1_unsimplified: Optional[Presentation] = None
    assumptions: Tuple[str, ...] = ()

    def __post_init__(self):
        if self.form.rows != self.form.cols or not self.form.is_symmetric():
            raise ModelError("intersection form must be square and symmetric")
        if len(self.basis) != self.form.rows:
            raise ModelError("basis labels must match the form's rank")
        if len(set(self.basis)) != len(self.basis):
            raise ModelError("basis labels must be distinct")
        if self.canonical_class is not None and len(self.canonical_class) != len(self.basis):
            raise ModelError("canonical class must live in the form basis")
        for s in self.surfaces:
            if s.homology_vector is not None and len(s.homology_vector) != len(self.basis):
                raise ModelError(f"surface {s.label!r} vector has wrong dimension")

    @property
    def b2(self) -> int:
        # closed oriented connected: b0 = b4 = 1, b3 = b1
        return self.euler - 2 + 2 * self.b1

    @property
    def b2_plus(self) -> int:
        return (self.b2 + self.signature) // 2

    @property
    def b2_minus(self) -> int:
        return (self.b2 - self.signature) // 2

    def surface(self, label: str) -> MarkedSurface:
        for s in self.surfaces:
            if s.label == label:
                return s
        raise ModelError(f"no surface labeled {label!r} in {self.name}")

    def basis_index(self, label: str) -> int:
        try:
            return self.basis.index(label)
        except ValueError:
            raise ModelError(f"no basis class labeled {label!r} in {self.name}") from None

    def unit_vector(self, label: str) -> Tuple[int, ...]:
        i = self.basis_index(label)
        return tuple(1 if j == i else 0 for j in range(len(self.basis)))

    def pairing(self, v: Sequence[int], w: Sequence[int]) -> int:
        return sum(vi * wij for vi, wij in zip(v, self.form.mat_vec(w)))

    # -- serialization ----------------------------------------------------

    SCHEMA = "fourfold-lab/model/1"

    def to_json(self) -> dict:
        def word(w: Word) -> str:
            return self.pi1.format_word(w)

        return {
            "schema": self.SCHEMA,
            "name": self.name,
            "euler": self.euler,
            "signature": self.signature,
            "b1": self.b1,
            "form": [list(row) for row in self.form.entries],
            "basis": list(self.basis),
            "pi1": self.pi1.to_json(),
            "surfaces": [
                {
                    "label": s.label,
                    "genus": s.genus,
                    "self_intersection": s.self_intersection,
                    "homology_vector": list(s.homology_vector)
                    if s.homology_vector is not None
                    else None,
                    "pi1_images": [word(w) for w in s.pi1_images]
                    if s.pi1_images is not None
                    else None,
                }
                for s in self.surfaces
            ],
            "symplectic": self.symplectic,
            "canonical_class": list(self.canonical_class)
            if self.canonical_class is not None
            else None,
            "form_complete": self.form_complete,
            "assumptions": list(self.assumptions),
        }

    @classmethod
    def from_json(cls, data: dict) -> "FourManifoldModel":
        if data.get("schema") != cls.SCHEMA:
            raise ModelError(f"unsupported schema {data.get('schema')!r}")
        pi1 = Presentation.from_json(data["pi1"])
        surfaces = tuple(
            MarkedSurface(
                label=s["label"],
                genus=s["genus"],
                self_intersection=s["self_intersection"],
                homology_vector=tuple(s["homology_vector"])
                if s.get("homology_vector") is not None
                else None,
                pi1_images=tuple(pi1.parse_word(t) for t in s["pi1_images"])
                if s.get("pi1_images") is not None
                else None,
            )
            for s in data.get("surfaces", [])
        )
        return cls(
            name=data["name"],
            euler=data["euler"],
            signature=data["signature"],
            b1=data["b1"],
            form=IntegerMatrix(data["form"]),
            basis=tuple(data["basis"]),
            pi1=pi1,
            surfaces=surfaces,
            symplectic=data.get("symplectic", False),
            canonical_class=tuple(data["canonical_class"])
            if data.get("canonical_class") is not None
            else None,
            form_complete=data.get("form_complete", True),
            assumptions=tuple(data.get("assumptions", ())),
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    @classmethod
    def loads(cls, text: str) -> "FourManifoldModel":
        return cls.from_json(json.loads(text))


def char_numbers(x: FourManifoldModel) -> Tuple[int, Fraction]:
    """(c1^2, chi_h) = (2e + 3*sigma, (e + sigma)/4), chi_h exact."""
    c1sq = 2 * x.euler + 3 * x.signature
    chi_h = Fraction(x.euler + x.signature, 4)
    return c1sq, chi_h


# -- product with a circle ----------------------------------------------------


def _fresh_name(base: str, taken: Sequence[str]) -> str:
    if base not in taken:
        return base
    i = 1
    while f"{base}{i}" in taken:
        i += 1
    return f"{base}{i}"


def product_with_circle(
    m: ThreeManifoldModel,
    circle_name: str = "x",
    fiber_label: str = "F",
    section_label: str = "T_m",
) -> FourManifoldModel:
    """Model of (fibered 3-manifold) x S^1.

    The new circle generator commutes with everything.  Tracked
    surfaces: the fiber (square 0) and the section torus meridian x
    circle (square 0); they pair to 1, giving a hyperbolic block when
    the fiber has genus >= 1.
    """
    if m.fiber is None:
        raise MissingBundleData(f"{m.name} carries no fiber bundle data")
    g = m.fiber.genus

    base = m.presentation
    xname = _fresh_name(circle_name, base.generators)
    gens = list(base.generators) + [xname]
    lifted = Presentation(gens)
    x = lifted.gen(xname)
    relators = list(base.relators)
    for i in range(base.ngens):
        relators.append(commutator(x, Word.gen(i)))
    pi1 = Presentation(gens, relators, base.shadows)

    b1 = m.h1_free_rank + 1
    fiber_images = tuple(m.fiber.embedding)
    section_images = (m.meridian, x)

    if g >= 1:
        form = hyperbolic_form(1)
        basis = (fiber_label, section_label)
        fiber_vec: Optional[Tuple[int, ...]] = (1, 0)
        section_vec: Optional[Tuple[int, ...]] = (0, 1)
        form_complete = True
    else:
        # sphere fiber: the tracked lattice is left empty
        form = IntegerMatrix.zero(0, 0)
        basis = ()
        fiber_vec = None
        section_vec = None
        form_complete = False

    surfaces = (
        MarkedSurface(fiber_label, g, 0, fiber_vec, fiber_images),
        MarkedSurface(section_label, 1, 0, section_vec, section_images),
    )
    return FourManifoldModel(
        name=f"{m.name} x S1",
        euler=0,
        signature=0,
        b1=b1,
        form=form,
        basis=basis,
        pi1=pi1,
        surfaces=surfaces,
        symplectic=g >= 1,
        form_complete=form_complete,
    )


def fiber_complement_presentation(
    fs: FiberSystem,
    surface_names: Sequence[str],
    monodromy_name: str = "d",
    circle_name: str = "y",
) -> Tuple[Presentation, Word]:
    """Group of (mapping torus x S^1) minus a fiber neighborhood.

    Generators: the 2g closed-fiber generators, the bundle direction d,
    and the circle factor y.  All mapping-torus relators are kept except
    [d, y], which is exactly the meridian of the removed fiber; it is
    returned alongside the presentation.
    """
    if fs.monodromy is None:
        raise MissingBundleData("fiber complement needs monodromy words")
    n = 2 * fs.genus
    if len(surface_names) != n:
        raise ModelError("need one name per fiber generator")
    gens = list(surface_names) + [monodromy_name, circle_name]
    pres = Presentation(gens)
    d = pres.gen(monodromy_name)
    y = pres.gen(circle_name)

    relators: List[Word] = []
    surface_rel = Word()
    for i in range(fs.genus):
        surface_rel = surface_rel * commutator(Word.gen(2 * i), Word.gen(2 * i + 1))
    relators.append(surface_rel)
    for i in range(n):
        relators.append(commutator(y, Word.gen(i)))
    for i in range(n):
        # d x_i d^-1 = phi(x_i), phi written in the fiber letters
        relators.append(Word.gen(i).conjugate(d) * fs.monodromy[i].inverse())
    return pres.with_relators(relators), commutator(d, y)


# -- generalized fiber sum ----------------------------------------------------


@dataclass(frozen=True)
class ComplementSpec:
    """How one side's group changes when the surface neighborhood is removed.

    ``kill`` lists relator indices that do not survive in the complement.
    With ``exact`` they are simply dropped (e.g. the surgery relator of a
    section torus); otherwise each becomes the known part of an unknown
    relator in the normal closure of ``meridian``, recorded as a shadow
    family.  ``replacement`` swaps in a fully known complement
    presentation instead (e.g. a fiber complement); then ``kill`` is
    ignored.  ``consumed`` names the form-basis classes destroyed by the
    sum (the surface and its dual partner).
    """

    meridian: Word
    kill: Tuple[int, ...] = ()
    consumed: Tuple[str, ...] = ()
    exact: bool = False
    replacement: Optional[Presentation] = None
    shadow_name: str = "surface-complement"


@dataclass(frozen=True)
class GluingSpec:
    identifications: Tuple[Tuple[Word, Word], ...]
    boundary_relation: Tuple[Word, Word]
    # (label_of_summed_class_or_rim, dual_label, genus, dual_genus);
    # genus None = unknown, class tracked in homology only
    new_pairs: Tuple[Tuple[str, str, Optional[int], Optional[int]], ...]
    side_x: ComplementSpec
    side_y: ComplementSpec
    rename_y: Mapping[str, str] = field(default_factory=dict)
    surfaces: Tuple[MarkedSurface, ...] = ()
    carry_surfaces: Tuple[Tuple[str, str], ...] = ()  # ("x"|"y", label)
    simplify_keep: Optional[Tuple[str, ...]] = None
    symplectic: bool = True
    canonical_class: Optional[Tuple[int, ...]] = None
    name: str = ""


def complement_presentation(pi1: Presentation, spec: ComplementSpec) -> Presentation:
    """Group of the model minus the glued surface's neighborhood,
    following the spec's kill/shadow/replacement rules."""
    if spec.replacement is not None:
        return spec.replacement
    for i in spec.kill:
        if not 0 <= i < len(pi1.relators):
            raise ModelError(f"kill index {i} out of range")
    kept = [r for i, r in enumerate(pi1.relators) if i not in set(spec.kill)]
    killed = tuple(pi1.relators[i] for i in spec.kill)
    shadows = list(pi1.shadows)
    if not spec.exact and killed:
        name = _fresh_name(spec.shadow_name, [f.name for f in shadows])
        shadows.append(
            ShadowFamily(
                name,
                "relators",
                basis=(spec.meridian,),
                known_parts=killed,
                count_known=True,
            )
        )
    return Presentation(pi1.generators, kept, shadows)


def _survivor_block(x: FourManifoldModel, consumed: Sequence[str]) -> Tuple[IntegerMatrix, Tuple[str, ...]]:
    for label in consumed:
        x.basis_index(label)  # raises if unknown
    keep = [i for i, lbl in enumerate(x.basis) if lbl not in set(consumed)]
    entries = [[x.form.entries[i][j] for j in keep] for i in keep]
    labels = tuple(x.basis[i] for i in keep)
    return IntegerMatrix(entries) if keep else IntegerMatrix.zero(0, 0), labels


def fiber_sum(
    x: FourManifoldModel,
    sx_label: str,
    y: FourManifoldModel,
    sy_label: str,
    glue: GluingSpec,
) -> FourManifoldModel:
    """Glue two models along square-zero surfaces of the same genus.

    Characteristic numbers follow the double-route bookkeeping: e and
    sigma are computed directly, then c1^2 and chi_h are re-derived from
    per-side characteristic numbers and checked against them.
    """
    sx = x.surface(sx_label)
    sy = y.surface(sy_label)
    if sx.genus != sy.genus:
        raise GenusMismatch(f"{sx_label} has genus {sx.genus}, {sy_label} has {sy.genus}")
    g = sx.genus
    if g < 1:
        raise GenusMismatch("fiber sum needs genus >= 1")
    if sx.self_intersection != 0 or sy.self_intersection != 0:
        raise NonzeroSquare("both surfaces must have self-intersection zero")
    if sx.pi1_images is None or sy.pi1_images is None:
        raise MissingImages("both surfaces need pi1 images")
    if len(glue.identifications) != 2 * g:
        raise ModelError("need exactly 2*genus identification pairs")

    euler = x.euler + y.euler - 2 * (2 - 2 * g)
    signature = x.signature + y.signature

    # cross-check the two characteristic-number routes
    c1x, chix = char_numbers(x)
    c1y, chiy = char_numbers(y)
    c1_direct = 2 * euler + 3 * signature
    chi_direct = Fraction(euler + signature, 4)
    if c1_direct != c1x + c1y + 8 * (g - 1):
        raise ModelError("c1^2 routes disagree")
    if chi_direct != chix + chiy + (g - 1):
        raise ModelError("chi_h routes disagree")

    # fundamental group: adjusted complements, identified surface
    # generators, and the meridian-matching boundary relation
    px = complement_presentation(x.pi1, glue.side_x)
    py = complement_presentation(y.pi1, glue.side_y)
    taken = set(px.generators)
    rename: Dict[str, str] = {}
    for gname in py.generators:
        target = glue.rename_y.get(gname, gname)
        target = _fresh_name(target, sorted(taken))
        rename[gname] = target
        taken.add(target)
    py = py.renamed(rename)

    pairs = list(glue.identifications) + [glue.boundary_relation]
    glued = amalgamate(px, py, identifications=pairs)
    raw = glued
    if glue.simplify_keep is not None:
        glued = tietze_simplify(glued, keep=glue.simplify_keep)

    try:
        ab = abelianize(glued)
    except ShadowNotCommutator as err:
        raise AbelianizationBlocked(str(err)) from err
    b1 = ab.free_rank

    # intersection form: surviving blocks plus one hyperbolic block per
    # declared new pair
    bx, labels_x = _survivor_block(x, glue.side_x.consumed)
    by, labels_y = _survivor_block(y, glue.side_y.consumed)
    blocks = [bx, by] + [hyperbolic_form(1) for _ in glue.new_pairs]
    form = block_diag(*blocks)
    basis = list(labels_x) + list(labels_y)
    for l1, l2, _, _ in glue.new_pairs:
        basis.extend((l1, l2))
    if len(set(basis)) != len(basis):
        raise ModelError("basis labels collide; relabel new pairs or survivors")

    surfaces = list(glue.surfaces)
    for side, label in glue.carry_surfaces:
        src = x if side == "x" else y
        s = src.surface(label)
        vec: Optional[Tuple[int, ...]] = None
        if s.homology_vector is not None:
            support = [src.basis[i] for i, c in enumerate(s.homology_vector) if c]
            if all(lbl in basis for lbl in support):
                vec = tuple(
                    s.homology_vector[src.basis.index(lbl)] if lbl in src.basis else 0
                    for lbl in basis
                )
        surfaces.append(replace(s, homology_vector=vec, pi1_images=None))

    name = glue.name or f"{x.name} #_{sx_label}={sy_label} {y.name}"
    assumptions = tuple(dict.fromkeys(x.assumptions + y.assumptions))
    if glue.side_x.replacement is None and not glue.side_x.exact and glue.side_x.kill:
        assumptions += ("complement-presentation-x",)
    if glue.side_y.replacement is None and not glue.side_y.exact and glue.side_y.kill:
        assumptions += ("complement-presentation-y",)

    return FourManifoldModel(
        name=name,
        euler=euler,
        signature=signature,
        b1=b1,
        form=form,
        basis=tuple(basis),
        pi1=glued,
        surfaces=tuple(surfaces),
        symplectic=x.symplectic and y.symplectic and glue.symplectic,
        canonical_class=glue.canonical_class,
        pi1_unsimplified=raw if glue.simplify_keep is not None else None,
        assumptions=assumptions,
    )


# -- Mayer-Vietoris utility ---------------------------------------------------


def mv_inclusion_matrix(
    px: Presentation,
    py: Presentation,
    pairs: Sequence[Tuple[Word, Word]],
) -> IntegerMatrix:
    """H_1 inclusion data for a gluing along identified curves.

    One column per identified pair: the first word's class in H_1 of
    ``px`` stacked over minus the second word's class in H_1 of ``py``.
    The cokernel is the glued space's H_1, giving a route to b_1 that is
    independent of abelianizing the amalgamated presentation.  Both
    complements must have torsion-free H_1 (true for the constructions
    here, where each complement fibers over a circle).
    """
    ab_a = abelianize(px)
    ab_b = abelianize(py)
    if ab_a.torsion or ab_b.torsion:
        raise ModelError("inclusion matrix needs torsion-free complement H_1")
    rows = ab_a.free_rank + ab_b.free_rank
    cols: List[List[int]] = []
    for wa, wb in pairs:
        fa, _ = ab_a.image_of(wa)
        fb, _ = ab_b.image_of(wb)
        cols.append(list(fa) + [-c for c in fb])
    return IntegerMatrix([[col[i] for col in cols] for i in range(rows)], cols=len(cols))


def mv_h1_cokernel(m: IntegerMatrix) -> AbelianGroupStructure:
    """Cokernel of an integer matrix (columns = images of the glued
    piece's H_1 generators), as an abelian group structure."""
    from .intlinalg import smith_normal_form

    d, u, _ = smith_normal_form(m)
    n = m.rows
    pivots = min(n, m.cols)
    free_idx, tor_idx, torsion = [], [], []
    for i in range(n):
        di = d.entries[i][i] if i < pivots else 0
        if di == 0:
            free_idx.append(i)
        elif di > 1:
            tor_idx.append(i)
            torsion.append(di)
    gens = tuple(f"h{i}" for i in range(n))
    free_images = tuple(tuple(u.entries[i][j] for i in free_idx) for j in range(n))
    torsion_images = tuple(
        tuple(u.entries[i][j] % t for i, t in zip(tor_idx, torsion)) for j in range(n)
    )
    return AbelianGroupStructure(
        free_rank=len(free_idx),
        torsion=tuple(torsion),
        generators=gens,
        free_images=free_images,
        torsion_images=torsion_images,
    )


# -- consistency checks -------------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: Optional[bool]  # None = skipped
    detail: str = ""


@dataclass(frozen=True)
class ConsistencyReport:
    model: str
    checks: Tuple[CheckResult, ...]
    spin: Optional[bool]
    assumptions: Tuple[str, ...]

    @property
    def all_pass(self) -> bool:
        return all(c.ok is not False for c in self.checks)

    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if c.ok is False]

    def describe(self) -> str:
        lines = [f"model {self.model}:"]
        for c in self.checks:
            status = "skip" if c.ok is None else ("ok" if c.ok else "FAIL")
            lines.append(f"  [{status:4}] {c.name}" + (f": {c.detail}" if c.detail else ""))
        if self.assumptions:
            lines.append("  assumptions: " + ", ".join(self.assumptions))
        return "\n".join(lines)


def verify_model(x: FourManifoldModel) -> ConsistencyReport:
    """Check every model invariant; returns a report, never raises."""
    checks: List[CheckResult] = []

    def add(name: str, ok: Optional[bool], detail: str = "") -> None:
        checks.append(CheckResult(name, ok, detail))

    add("form-symmetric", x.form.is_symmetric())

    if x.form_complete:
        r = integer_rank(x.form)
        add(
            "b2-rank",
            r == x.b2 and x.form.rows == x.b2,
            f"rank {r} vs b2 {x.b2}",
        )
        sig = signature_symmetric(x.form)
        add("signature", sig == x.signature, f"form signature {sig} vs declared {x.signature}")
    else:
        add("b2-rank", None, "form tracks a sublattice only")
        add("signature", None, "form tracks a sublattice only")

    for s in x.surfaces:
        if s.homology_vector is None:
            add(f"square[{s.label}]", None, "class not tracked in the form basis")
        else:
            sq = x.pairing(s.homology_vector, s.homology_vector)
            add(f"square[{s.label}]", sq == s.self_intersection, f"v.v = {sq}")
        if s.pi1_images is not None:
            add(f"images[{s.label}]", len(s.pi1_images) == 2 * s.genus)

    unknown_count = any(not f.count_known for f in x.pi1.shadows)
    if unknown_count:
        add("b1-abelianization", None, "shadow family with unknown count")
    else:
        try:
            ab = abelianize(x.pi1)
            add(
                "b1-abelianization",
                ab.free_rank == x.b1,
                f"free rank {ab.free_rank} vs declared b1 {x.b1}",
            )
        except PresentationError as err:
            add("b1-abelianization", False, str(err))

    spin: Optional[bool] = is_even_form(x.form) if x.form_complete else None
    if x.canonical_class is not None:
        ksq = x.pairing(x.canonical_class, x.canonical_class)
        c1sq, _ = char_numbers(x)
        add("canonical-square", ksq == c1sq, f"K.K = {ksq} vs c1^2 = {c1sq}")
        kv = x.form.mat_vec(x.canonical_class)
        characteristic = all(
            (kv[i] - x.form.entries[i][i]) % 2 == 0 for i in range(len(x.basis))
        )
        add("canonical-characteristic", characteristic)

    assumptions = tuple(dict.fromkeys(x.assumptions + ("no-h2-torsion",)))
    return ConsistencyReport(
        model=x.name, checks=tuple(checks), spin=spin, assumptions=assumptions
    )
