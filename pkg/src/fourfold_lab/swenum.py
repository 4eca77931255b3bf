"""Exact enumeration of basic-class candidates for a model's intersection form.

A candidate is an integer class that is characteristic, has square equal to
the simple-type value 2e + 3*sigma, pairs to zero with every class the
construction forces it to, and satisfies the adjunction bound against every
tracked surface of genus >= 1.  Enumeration is exact: zero-pairing
constraints are eliminated through an integer kernel, the adjunction bounds
are turned into a finite coordinate box through a rational dual basis, and
the surviving points are filtered with integer arithmetic.  A brute-force
box scan (:func:`box_scan`) serves as an independent oracle.
"""

import itertools
import json
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from . import _scan
from .fourfold import FourManifoldModel, MarkedSurface
from .intlinalg import (
    IntegerMatrix,
    rational_rank,
    right_kernel_basis,
)


class EnumerationError(ValueError):
    pass


class DimensionMismatch(EnumerationError):
    pass


class UnboundedRegion(EnumerationError):
    """The adjunction and zero-pairing data do not span the lattice."""


class OddOrNegativeDimension(EnumerationError):
    pass


class NoCharacteristicVector(EnumerationError):
    """The parity system has no solution on the restricted lattice."""


# -- basic notions --------------------------------------------------------------


@dataclass(frozen=True, order=True)
class CharacteristicClass:
    vector: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "vector", tuple(int(c) for c in self.vector))

    def __neg__(self) -> "CharacteristicClass":
        return CharacteristicClass(tuple(-c for c in self.vector))

    def format(self, basis: Sequence[str]) -> str:
        return format_class(self.vector, basis)


def format_class(vector: Sequence[int], basis: Sequence[str]) -> str:
    parts = []
    for c, label in zip(vector, basis):
        if c == 0:
            continue
        if c == 1:
            parts.append(label)
        elif c == -1:
            parts.append(f"-{label}")
        else:
            parts.append(f"{c}{label}")
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += p if p.startswith("-") else "+" + p
    return out


def format_class_set(classes: Sequence[CharacteristicClass], basis: Sequence[str]) -> str:
    """Render a negation-closed candidate set, pairing each class with its
    negative: {(2,2), (-2,-2)} over (S, T) prints as "±(2S+2T)"."""
    seen = set()
    parts = []
    for c in sorted(classes, reverse=True):
        if c.vector in seen:
            continue
        if all(x == 0 for x in c.vector):
            parts.append("0")
            seen.add(c.vector)
            continue
        seen.add(c.vector)
        seen.add((-c).vector)
        parts.append(f"±({format_class(c.vector, basis)})")
    return ", ".join(parts) if parts else "(none)"


def is_characteristic(v: Sequence[int], q: IntegerMatrix) -> bool:
    """True iff v pairs with every basis vector to the vector's own square,
    mod 2: (Q v)_i == Q_ii (mod 2) for all i."""
    vec = tuple(v.vector) if isinstance(v, CharacteristicClass) else tuple(v)
    if len(vec) != q.rows:
        raise DimensionMismatch(f"vector has length {len(vec)}, form rank {q.rows}")
    qv = q.mat_vec(vec)
    return all((qv[i] - q.entries[i][i]) % 2 == 0 for i in range(q.rows))


def sw_dimension(
    beta: Union[CharacteristicClass, Sequence[int]],
    e: int,
    sigma: int,
    q: IntegerMatrix,
) -> Union[int, Fraction]:
    """Expected moduli dimension (beta^2 - 2e - 3*sigma)/4, exact.

    Returns an int when integral and a Fraction otherwise, so callers can
    detect the non-integral (inconsistent) case without losing the value.
    """
    vec = tuple(beta.vector) if isinstance(beta, CharacteristicClass) else tuple(beta)
    if len(vec) != q.rows:
        raise DimensionMismatch(f"vector has length {len(vec)}, form rank {q.rows}")
    qv = q.mat_vec(vec)
    square = sum(a * b for a, b in zip(vec, qv))
    num = square - 2 * e - 3 * sigma
    return num // 4 if num % 4 == 0 else Fraction(num, 4)


def wall_crossing_delta(dimension: int) -> int:
    """Jump of the invariant across the wall, -(-1)^m for dimension 2m."""
    if dimension < 0 or dimension % 2 != 0:
        raise OddOrNegativeDimension(f"dimension must be even and >= 0, got {dimension}")
    m = dimension // 2
    return -((-1) ** m)


# -- constraint data -------------------------------------------------------------


@dataclass(frozen=True)
class ConstraintSet:
    """Everything the enumerator is allowed to use.

    ``zero_pairing_groups`` optionally names consecutive runs of
    ``zero_pairing_classes`` as (name, count); the elimination trace then
    reports which coordinates each named group pinned to zero.  With
    ``simple_type`` set, genus >= 1 surfaces of any square contribute an
    adjunction bound; otherwise only surfaces of square >= 0 do.
    """

    adjunction_surfaces: Tuple[MarkedSurface, ...] = ()
    zero_pairing_classes: Tuple[Tuple[int, ...], ...] = ()
    simple_type_square: int = 0
    simple_type: bool = False
    zero_pairing_groups: Tuple[Tuple[str, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "adjunction_surfaces", tuple(self.adjunction_surfaces))
        object.__setattr__(
            self,
            "zero_pairing_classes",
            tuple(tuple(int(x) for x in z) for z in self.zero_pairing_classes),
        )
        object.__setattr__(self, "zero_pairing_groups", tuple(self.zero_pairing_groups))
        for s in self.adjunction_surfaces:
            if s.genus < 1:
                raise EnumerationError(f"adjunction surface {s.label!r} needs genus >= 1")
            if s.homology_vector is None:
                raise EnumerationError(
                    f"adjunction surface {s.label!r} needs a homology vector"
                )
        if self.zero_pairing_groups:
            total = sum(n for _, n in self.zero_pairing_groups)
            if total != len(self.zero_pairing_classes):
                raise EnumerationError("group sizes must cover the zero-pairing classes")
            if any(n < 1 for _, n in self.zero_pairing_groups):
                raise EnumerationError("empty zero-pairing group")

    def iter_groups(self):
        if not self.zero_pairing_classes:
            return
        if not self.zero_pairing_groups:
            yield "zero-pairing", self.zero_pairing_classes
            return
        pos = 0
        for name, count in self.zero_pairing_groups:
            yield name, self.zero_pairing_classes[pos : pos + count]
            pos += count


@dataclass(frozen=True)
class EliminationStep:
    group: str
    forced_zero: Tuple[int, ...]  # basis coordinates newly pinned to 0
    remaining_rank: int


@dataclass(frozen=True)
class EnumerationTrace:
    steps: Tuple[EliminationStep, ...]
    kernel_rank: int
    kernel_basis: Tuple[Tuple[int, ...], ...]  # rows; columns are parameters
    box: Tuple[int, ...]  # per-parameter symmetric caps
    scanned: int
    accepted: int
    inactive_surfaces: Tuple[str, ...]

    def to_json(self) -> dict:
        return {
            "steps": [
                {
                    "group": s.group,
                    "forced_zero": list(s.forced_zero),
                    "remaining_rank": s.remaining_rank,
                }
                for s in self.steps
            ],
            "kernel_rank": self.kernel_rank,
            "kernel_basis": [list(r) for r in self.kernel_basis],
            "box": list(self.box),
            "scanned": self.scanned,
            "accepted": self.accepted,
            "inactive_surfaces": list(self.inactive_surfaces),
        }

    @classmethod
    def from_json(cls, data: dict) -> "EnumerationTrace":
        return cls(
            steps=tuple(
                EliminationStep(s["group"], tuple(s["forced_zero"]), s["remaining_rank"])
                for s in data["steps"]
            ),
            kernel_rank=data["kernel_rank"],
            kernel_basis=tuple(tuple(r) for r in data["kernel_basis"]),
            box=tuple(data["box"]),
            scanned=data["scanned"],
            accepted=data["accepted"],
            inactive_surfaces=tuple(data["inactive_surfaces"]),
        )


# -- exact helpers ---------------------------------------------------------------


def _rational_inverse(rows: Sequence[Sequence[int]]) -> List[List[Fraction]]:
    k = len(rows)
    aug = [
        [Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(k)]
        for i, row in enumerate(rows)
    ]
    for c in range(k):
        piv = next(i for i in range(c, k) if aug[i][c] != 0)
        aug[c], aug[piv] = aug[piv], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for i in range(k):
            if i != c and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [row[k:] for row in aug]


def _mod2_solvable(rows: Sequence[Sequence[int]], rhs: Sequence[int], k: int) -> bool:
    """Solvability of M t = rhs over GF(2), rows as bitmasks."""
    pivots: Dict[int, int] = {}
    for row, b in zip(rows, rhs):
        m = 0
        for j, x in enumerate(row):
            if x & 1:
                m |= 1 << j
        if b & 1:
            m |= 1 << k
        for p, vec in pivots.items():
            if (m >> p) & 1:
                m ^= vec
        data = m & ((1 << k) - 1)
        if data:
            pivots[(data & -data).bit_length() - 1] = m
        elif m:
            return False
    return True


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def _restrict(functional: Sequence[int], basis_rows: Sequence[Sequence[int]], k: int) -> Tuple[int, ...]:
    # functional on ambient coordinates -> functional on kernel parameters
    return tuple(
        sum(functional[i] * basis_rows[i][j] for i in range(len(functional)))
        for j in range(k)
    )


_BOX_LIMIT = 5_000_000


# -- the enumerator --------------------------------------------------------------


def enumerate_with_trace(
    q: IntegerMatrix, constraints: ConstraintSet
) -> Tuple[List[CharacteristicClass], EnumerationTrace]:
    n = q.rows
    if q.cols != n or not q.is_symmetric():
        raise EnumerationError("form must be square and symmetric")
    for z in constraints.zero_pairing_classes:
        if len(z) != n:
            raise DimensionMismatch("zero-pairing class has wrong dimension")
    for s in constraints.adjunction_surfaces:
        if len(s.homology_vector) != n:
            raise DimensionMismatch(f"surface {s.label!r} vector has wrong dimension")
    target = constraints.simple_type_square

    # stage 1: eliminate the zero-pairing constraints through an exact
    # integer kernel, one named group at a time
    basis_rows: List[List[int]] = [[int(i == j) for j in range(n)] for i in range(n)]
    k = n
    steps: List[EliminationStep] = []
    zeroed = {i for i in range(n) if not any(basis_rows[i])}
    for name, group in constraints.iter_groups():
        if k > 0:
            rows = [_restrict(q.mat_vec(z), basis_rows, k) for z in group]
            kern = right_kernel_basis(IntegerMatrix(rows, cols=k))
            basis_rows = [
                [sum(basis_rows[i][j] * t[j] for j in range(k)) for t in kern]
                for i in range(n)
            ]
            k = len(kern)
        newly = tuple(
            sorted(i for i in range(n) if i not in zeroed and not any(basis_rows[i]))
        )
        zeroed.update(newly)
        steps.append(EliminationStep(name, newly, k))

    # stage 2: adjunction bounds on the surviving parameters
    active_rows: List[Tuple[int, ...]] = []
    active_bounds: List[int] = []
    inactive: List[str] = []
    empty_region = False
    for s in constraints.adjunction_surfaces:
        qv = q.mat_vec(s.homology_vector)
        sq = _dot(s.homology_vector, qv)
        if not constraints.simple_type and sq < 0:
            inactive.append(s.label)
            continue
        bound = 2 * s.genus - 2 - sq
        row = _restrict(qv, basis_rows, k)
        if not any(row):
            if bound < 0:
                empty_region = True
            continue
        if bound < 0:
            empty_region = True
            continue
        active_rows.append(row)
        active_bounds.append(bound)

    caps: List[int] = []
    if empty_region:
        k_trace = k
        trace = EnumerationTrace(
            tuple(steps), k_trace, tuple(tuple(r) for r in basis_rows), (), 0, 0, tuple(inactive)
        )
        return [], trace

    if k > 0:
        if rational_rank(active_rows) < k:
            raise UnboundedRegion(
                "adjunction and zero-pairing data do not span the lattice; "
                "the constraint region is unbounded"
            )
        sel_rows: List[Tuple[int, ...]] = []
        sel_bounds: List[int] = []
        for row, bnd in zip(active_rows, active_bounds):
            if rational_rank(sel_rows + [row]) > len(sel_rows):
                sel_rows.append(row)
                sel_bounds.append(bnd)
                if len(sel_rows) == k:
                    break
        inv = _rational_inverse(sel_rows)
        caps = [
            int(sum(abs(inv[i][j]) * sel_bounds[j] for j in range(k)))
            for i in range(k)
        ]
        points = 1
        for c in caps:
            points *= 2 * c + 1
        if points > _BOX_LIMIT:
            raise EnumerationError(f"search box of {points} points is too large")
        # parity presolve: the characteristic condition restricted to the
        # kernel lattice must be solvable mod 2 at all
        parity_rows = [
            [sum(q.entries[i][l] * basis_rows[l][j] for l in range(n)) for j in range(k)]
            for i in range(n)
        ]
        diag = [q.entries[i][i] for i in range(n)]
        if not _mod2_solvable(parity_rows, diag, k):
            raise NoCharacteristicVector(
                "no characteristic vector exists in the constrained sublattice"
            )

    out: List[CharacteristicClass] = []
    scanned = 0
    for t in itertools.product(*[range(-c, c + 1) for c in caps]):
        scanned += 1
        if any(abs(_dot(row, t)) > b for row, b in zip(active_rows, active_bounds)):
            continue
        v = tuple(_dot(basis_rows[i], t) for i in range(n))
        qv = q.mat_vec(v)
        if _dot(v, qv) != target:
            continue
        if any((qv[i] - q.entries[i][i]) % 2 != 0 for i in range(n)):
            continue
        out.append(CharacteristicClass(v))
    out.sort()

    # post-hoc re-checks: every candidate is characteristic, has the right
    # square, and the set is closed under negation
    vectors = {c.vector for c in out}
    for c in out:
        qv = q.mat_vec(c.vector)
        if _dot(c.vector, qv) != target or not is_characteristic(c.vector, q):
            raise EnumerationError("internal: candidate failed re-verification")
        if tuple(-x for x in c.vector) not in vectors:
            raise EnumerationError("internal: candidate set not closed under negation")

    trace = EnumerationTrace(
        steps=tuple(steps),
        kernel_rank=k,
        kernel_basis=tuple(tuple(r) for r in basis_rows),
        box=tuple(caps),
        scanned=scanned,
        accepted=len(out),
        inactive_surfaces=tuple(inactive),
    )
    return out, trace


def enumerate_basic_candidates(
    q: IntegerMatrix, constraints: ConstraintSet
) -> List[CharacteristicClass]:
    """All integer classes passing the characteristic, square, adjunction,
    and zero-pairing constraints, lexicographically sorted."""
    out, _ = enumerate_with_trace(q, constraints)
    return out


# -- brute-force oracle ----------------------------------------------------------


def box_scan(
    q: IntegerMatrix,
    constraints: ConstraintSet,
    bound: int,
    backend: Optional[str] = None,
) -> List[CharacteristicClass]:
    """Scan the full box |v_i| <= bound with the same filters; oracle path.

    Results are post-verified with exact integer arithmetic, so an int64
    overflow inside a backend cannot produce a silently wrong accept.
    """
    n = q.rows
    if q.cols != n or not q.is_symmetric():
        raise EnumerationError("form must be square and symmetric")
    if bound < 0:
        raise EnumerationError("bound must be non-negative")
    for z in constraints.zero_pairing_classes:
        if len(z) != n:
            raise DimensionMismatch("zero-pairing class has wrong dimension")
    arows: List[Tuple[int, ...]] = []
    abounds: List[int] = []
    for s in constraints.adjunction_surfaces:
        if len(s.homology_vector) != n:
            raise DimensionMismatch(f"surface {s.label!r} vector has wrong dimension")
        qv = q.mat_vec(s.homology_vector)
        sq = _dot(s.homology_vector, qv)
        if not constraints.simple_type and sq < 0:
            continue
        arows.append(tuple(qv))
        abounds.append(2 * s.genus - 2 - sq)
    zrows = [tuple(q.mat_vec(z)) for z in constraints.zero_pairing_classes]

    points = (2 * bound + 1) ** n
    if points > 50_000_000:
        raise EnumerationError(f"scan box of {points} points is too large")
    maxq = max((abs(x) for row in q.entries for x in row), default=0)
    maxrow = max(
        (abs(x) for row in itertools.chain(arows, zrows) for x in row), default=0
    )
    worst = max(
        n * max(maxq, maxrow) * bound,  # pairings
        n * n * maxq * bound * bound,  # squares
        abs(constraints.simple_type_square),
    )
    if worst >= 2**62:
        raise EnumerationError("box scan would overflow int64")

    res = _scan.scan_box(
        [list(r) for r in q.entries],
        [list(r) for r in arows],
        abounds,
        [list(r) for r in zrows],
        constraints.simple_type_square,
        [bound] * n,
        backend=backend,
    )
    out = [CharacteristicClass(tuple(int(x) for x in row)) for row in res]
    for c in out:  # exact re-verification of every accepted point
        qv = q.mat_vec(c.vector)
        good = (
            all(_dot(c.vector, z) == 0 for z in zrows)
            and all(abs(_dot(c.vector, r)) <= b for r, b in zip(arows, abounds))
            and _dot(c.vector, qv) == constraints.simple_type_square
            and is_characteristic(c.vector, q)
        )
        if not good:
            raise EnumerationError("internal: scan backend accepted a bad point")
    out.sort()
    return out


# -- chamber bookkeeping and reports ----------------------------------------------


@dataclass(frozen=True)
class ChamberInfo:
    b1: int
    b2plus: int
    b2minus: int
    sw_zero_well_defined: Optional[bool] = None

    def __post_init__(self):
        expected = self.b1 == 0 and self.b2plus == 1 and self.b2minus <= 9
        if self.sw_zero_well_defined is None:
            object.__setattr__(self, "sw_zero_well_defined", expected)
        elif self.sw_zero_well_defined != expected:
            raise EnumerationError("sw_zero_well_defined contradicts b1/b2+/b2-")

    @classmethod
    def from_model(cls, x: FourManifoldModel) -> "ChamberInfo":
        return cls(b1=x.b1, b2plus=x.b2_plus, b2minus=x.b2_minus)

    def euler_signature(self) -> Tuple[int, int]:
        e = 2 - 2 * self.b1 + self.b2plus + self.b2minus
        return e, self.b2plus - self.b2minus

    def to_json(self) -> dict:
        return {
            "b1": self.b1,
            "b2plus": self.b2plus,
            "b2minus": self.b2minus,
            "sw_zero_well_defined": self.sw_zero_well_defined,
        }

    @classmethod
    def from_json(cls, data: dict) -> "ChamberInfo":
        return cls(
            b1=data["b1"],
            b2plus=data["b2plus"],
            b2minus=data["b2minus"],
            sw_zero_well_defined=data.get("sw_zero_well_defined"),
        )


UNDETERMINED = "undetermined by this artifact"


@dataclass(frozen=True)
class SWValue:
    cls: CharacteristicClass
    value: str
    chamber: str


@dataclass(frozen=True)
class BasicClassReport:
    candidates: Tuple[CharacteristicClass, ...]
    chamber: ChamberInfo
    canonical: Optional[CharacteristicClass] = None
    sw_values: Tuple[SWValue, ...] = ()
    basis: Tuple[str, ...] = ()
    warnings: Tuple[str, ...] = ()
    trace: Optional[EnumerationTrace] = None

    def __post_init__(self):
        object.__setattr__(self, "candidates", tuple(self.candidates))
        vectors = {c.vector for c in self.candidates}
        for c in self.candidates:
            if tuple(-x for x in c.vector) not in vectors:
                raise EnumerationError("candidates must be closed under negation")

    def classes_formatted(self) -> str:
        return format_class_set(self.candidates, self.basis)

    def to_json(self) -> dict:
        return {
            "schema": "fourfold-lab/swreport/1",
            "basis": list(self.basis),
            "candidates": [list(c.vector) for c in self.candidates],
            "classes": self.classes_formatted(),
            "canonical": list(self.canonical.vector) if self.canonical else None,
            "sw_values": [
                {
                    "class": list(v.cls.vector),
                    "printed": v.cls.format(self.basis),
                    "value": v.value,
                    "chamber": v.chamber,
                }
                for v in self.sw_values
            ],
            "chamber": self.chamber.to_json(),
            "warnings": list(self.warnings),
            "trace": self.trace.to_json() if self.trace else None,
        }

    @classmethod
    def from_json(cls, data: dict) -> "BasicClassReport":
        if data.get("schema") != "fourfold-lab/swreport/1":
            raise EnumerationError(f"unsupported schema {data.get('schema')!r}")
        return cls(
            candidates=tuple(CharacteristicClass(tuple(v)) for v in data["candidates"]),
            chamber=ChamberInfo.from_json(data["chamber"]),
            canonical=CharacteristicClass(tuple(data["canonical"]))
            if data.get("canonical")
            else None,
            sw_values=tuple(
                SWValue(CharacteristicClass(tuple(v["class"])), v["value"], v["chamber"])
                for v in data.get("sw_values", ())
            ),
            basis=tuple(data.get("basis", ())),
            warnings=tuple(data.get("warnings", ())),
            trace=EnumerationTrace.from_json(data["trace"]) if data.get("trace") else None,
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def taubes_annotate(
    report: BasicClassReport,
    canonical: CharacteristicClass,
    b2plus: int,
) -> BasicClassReport:
    """Attach the invariant values forced for the canonical class.

    With b2+ > 1 the value is chamber-independent and recorded on both
    +/-canonical (signs correlated; the overall sign stays undetermined).
    With b2+ = 1 only the negative-chamber value on -canonical is forced,
    and it transfers to the zero-perturbation invariant exactly when the
    chamber data says that invariant is well defined.
    """
    vectors = {c.vector for c in report.candidates}
    if canonical.vector not in vectors:
        return replace(
            report,
            warnings=report.warnings
            + ("canonical class is not among the candidates; no values assigned",),
        )
    neg = -canonical
    e, sigma = report.chamber.euler_signature()
    chi4 = e + sigma
    chi_h = chi4 // 4 if chi4 % 4 == 0 else None

    values: List[SWValue] = []
    if b2plus > 1:
        for c in report.candidates:
            if c == canonical:
                values.append(SWValue(c, "±1", "all chambers"))
            elif c == neg:
                flipped = chi_h is not None and chi_h % 2 == 1
                values.append(SWValue(c, "∓1" if flipped else "±1", "all chambers"))
            else:
                values.append(SWValue(c, UNDETERMINED, "all chambers"))
        return replace(report, canonical=canonical, sw_values=tuple(values))
    if b2plus == 1:
        for c in report.candidates:
            if c == neg:
                values.append(SWValue(c, "±1", "SW^-"))
                if report.chamber.sw_zero_well_defined:
                    values.append(SWValue(c, "±1", "SW^0"))
            else:
                values.append(SWValue(c, UNDETERMINED, "SW^-"))
        return replace(report, canonical=canonical, sw_values=tuple(values))
    values = [SWValue(c, UNDETERMINED, "n/a") for c in report.candidates]
    return replace(
        report,
        canonical=canonical,
        sw_values=tuple(values),
        warnings=report.warnings + ("no chamber statement applies at b2+ = 0",),
    )


# -- model-driven entry points -----------------------------------------------------


def constraints_from_model(x: FourManifoldModel) -> ConstraintSet:
    """Constraint data read off a model.

    Tracked surfaces of genus >= 1 give adjunction bounds.  Basis classes
    outside the span of every tracked surface arose as untracked summed or
    rim classes, and the construction forces candidates to pair trivially
    with them; they become one group of zero-pairing constraints.
    """
    adjunction = tuple(
        s for s in x.surfaces if s.genus >= 1 and s.homology_vector is not None
    )
    covered = set()
    for s in x.surfaces:
        if s.homology_vector is not None:
            covered.update(i for i, c in enumerate(s.homology_vector) if c)
    zero = tuple(
        x.unit_vector(lbl) for i, lbl in enumerate(x.basis) if i not in covered
    )
    c1sq = 2 * x.euler + 3 * x.signature
    return ConstraintSet(
        adjunction_surfaces=adjunction,
        zero_pairing_classes=zero,
        simple_type_square=c1sq,
        simple_type=x.symplectic and x.b2_plus > 1,
        zero_pairing_groups=(("untracked-classes", len(zero)),) if zero else (),
    )


def build_report(
    x: FourManifoldModel,
    constraints: Optional[ConstraintSet] = None,
) -> BasicClassReport:
    """Enumerate a model's candidates and annotate the forced values."""
    if constraints is None:
        constraints = constraints_from_model(x)
    cands, trace = enumerate_with_trace(x.form, constraints)
    canonical = (
        CharacteristicClass(x.canonical_class) if x.canonical_class is not None else None
    )
    report = BasicClassReport(
        candidates=tuple(cands),
        chamber=ChamberInfo.from_model(x),
        canonical=canonical,
        basis=x.basis,
        trace=trace,
    )
    if canonical is not None:
        report = taubes_annotate(report, canonical, x.b2_plus)
    return report
