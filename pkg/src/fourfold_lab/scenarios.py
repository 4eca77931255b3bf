"""Configuration-driven pipelines that glue surgered knot products into
closed symplectic 4-manifolds and survey their basic classes.

Two scenarios are built in.  ``xk`` starts from a genus-one fibered knot,
sums the surgery-times-circle model with itself (section torus to fiber
torus), then doubles the result across the genus-two surface with a
handle-swapping gluing.  ``vk`` sums the genus-one model against a
higher-genus fibered knot's model (fiber to section torus) and doubles
across the high-genus surface.  Every stage is checked by
``verify_model`` before the next runs, first homology is recomputed by
an independent inclusion-matrix route at each gluing, and the resulting
report serializes to schema-stable JSON for golden-file regression.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Dict, Mapping, Optional, Tuple

from .fourfold import (
    CheckResult,
    ComplementSpec,
    ConsistencyReport,
    FourManifoldModel,
    GluingSpec,
    MarkedSurface,
    char_numbers,
    complement_presentation,
    fiber_complement_presentation,
    fiber_sum,
    mv_h1_cokernel,
    mv_inclusion_matrix,
    product_with_circle,
    verify_model,
)
from .intlinalg import IntegerMatrix, hyperbolic_form, is_even_form
from .knotforge import (
    FigureEight,
    FiberednessReport,
    KnotGroupModel,
    fiberedness_screen,
    parse_knot_spec,
    standard_knot,
    zero_surgery,
)
from .presentations import Presentation, abelianize
from .swenum import (
    BasicClassReport,
    ConstraintSet,
    build_report,
    constraints_from_model,
    sw_dimension,
    wall_crossing_delta,
)
from .words import Word, commutator

SCHEMA = "fourfold-lab/pipeline/1"

# verdicts under which a knot model may enter a pipeline at all
_FIBERED = ("certified_fibered", "known_fibered")

# generator names the complement presentation claims for itself
_RESERVED = {"c1", "c2", "d", "y"}


class ScenarioError(ValueError):
    """Bad configuration or a violated scenario precondition."""


class NotFibered(ScenarioError):
    """The knot failed the fiberedness screen required by the scenario."""

    def __init__(self, knot: str, verdict: str, detail: str = ""):
        self.verdict = verdict
        msg = f"{knot}: fiberedness verdict is {verdict!r}"
        if detail:
            msg += f"; {detail}"
        super().__init__(msg)


class StageVerificationError(ScenarioError):
    """A stage's consistency report came back with a failing check."""


# -- configuration -------------------------------------------------------------


@dataclass(frozen=True)
class ScenarioConfig:
    """One scenario run.

    ``knot`` and ``second_knot`` use the CLI knot grammar (``trefoil``,
    ``figure8``, ``torus:p,q``, ``twist:n``).  For ``vk``, exactly one of
    ``genus_g`` / ``second_knot`` is enough: a bare genus picks the
    ``torus:2,2g+1`` knot, and a bare knot fixes the genus; when both are
    given they must agree.  ``output`` is where the CLI writes the
    report; ``trace`` asks the CLI to dump intermediate matrices.
    """

    scenario: str
    knot: str = "trefoil"
    genus_g: Optional[int] = None
    second_knot: Optional[str] = None
    output: Optional[str] = None
    trace: bool = False

    def __post_init__(self):
        if self.scenario not in ("xk", "vk"):
            raise ScenarioError(f"unknown scenario {self.scenario!r}; want xk or vk")
        if self.scenario == "xk":
            if self.genus_g is not None or self.second_knot is not None:
                raise ScenarioError("xk takes no genus or second-knot settings")
        if self.genus_g is not None and self.genus_g < 2:
            raise ScenarioError(f"vk requires genus >= 2, got {self.genus_g}")

    @classmethod
    def from_json(cls, data: Mapping) -> "ScenarioConfig":
        if not isinstance(data, Mapping):
            raise ScenarioError("config must be a JSON object")
        aliases = {"g": "genus_g", "knot2": "second_knot"}
        known = {"scenario", "knot", "genus_g", "second_knot", "output", "trace"}
        kwargs: Dict[str, object] = {}
        for key, value in data.items():
            name = aliases.get(key, key)
            if name not in known:
                raise ScenarioError(f"unknown config key {key!r}")
            if name in kwargs:
                raise ScenarioError(f"config sets {name!r} twice")
            kwargs[name] = value
        if "scenario" not in kwargs:
            raise ScenarioError("config needs a 'scenario' key (xk or vk)")
        return cls(**kwargs)

    @classmethod
    def from_file(cls, path: str) -> "ScenarioConfig":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_json(json.load(fh))

    def with_overrides(self, **overrides) -> "ScenarioConfig":
        """Apply CLI-style overrides: None means "not given", and a False
        trace flag never un-sets a file's trace=true."""
        updates = {}
        for key, value in overrides.items():
            if key == "trace":
                if value:
                    updates[key] = True
            elif value is not None:
                updates[key] = value
        return replace(self, **updates) if updates else self

    def resolved(self) -> "ScenarioConfig":
        """Fill vk defaults: a genus picks torus:2,2g+1 when no second
        knot is named."""
        if self.scenario != "vk" or self.second_knot is not None:
            return self
        if self.genus_g is None:
            raise ScenarioError("vk needs genus_g or second_knot")
        return replace(self, second_knot=f"torus:2,{2 * self.genus_g + 1}")

    def to_json(self) -> dict:
        return {
            "scenario": self.scenario,
            "knot": self.knot,
            "genus_g": self.genus_g,
            "second_knot": self.second_knot,
            "output": self.output,
            "trace": self.trace,
        }


# -- report structure -----------------------------------------------------------


@dataclass(frozen=True)
class StageRecord:
    stage: str
    title: str
    data: Mapping[str, object]
    checks: Tuple[CheckResult, ...] = ()

    @property
    def all_pass(self) -> bool:
        return all(c.ok is not False for c in self.checks)

    def to_json(self) -> dict:
        return {
            "stage": self.stage,
            "title": self.title,
            "data": dict(self.data),
            "checks": [
                {"name": c.name, "ok": c.ok, "detail": c.detail} for c in self.checks
            ],
        }


@dataclass(frozen=True)
class PipelineReport:
    scenario: str
    config: Optional[ScenarioConfig] = None
    stages: Tuple[StageRecord, ...] = ()
    classes: Optional[BasicClassReport] = None
    assumptions: Tuple[str, ...] = ()

    @property
    def all_pass(self) -> bool:
        return all(s.all_pass for s in self.stages)

    def stage(self, name: str) -> StageRecord:
        for s in self.stages:
            if s.stage == name:
                return s
        raise KeyError(f"no stage named {name!r}")

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "scenario": self.scenario,
            "config": self.config.to_json() if self.config else None,
            "all_pass": self.all_pass,
            "assumptions": list(self.assumptions),
            "stages": [s.to_json() for s in self.stages],
            "classes": self.classes.to_json() if self.classes else None,
        }


def emit_report(report: PipelineReport, format: str = "json") -> str:
    """Render a report: ``json`` is schema-stable for golden files,
    ``text`` is a human summary."""
    if format == "json":
        return json.dumps(report.to_json(), indent=2, ensure_ascii=False) + "\n"
    if format == "text":
        return _render_text(report)
    raise ValueError(f"unknown report format {format!r}; want json or text")


_TEXT_SKIP = {"presentation", "presentation_unsimplified", "mv_matrix", "chamber"}


def _render_text(report: PipelineReport) -> str:
    lines = [f"pipeline report: {report.scenario}"]
    if report.config is not None:
        lines.append(f"knot: {report.config.knot}")
        if report.config.second_knot:
            lines.append(f"second knot: {report.config.second_knot}")
    lines.append(f"all verifications passed: {'yes' if report.all_pass else 'NO'}")
    if report.assumptions:
        lines.append("assumptions:")
        lines.extend(f"  - {a}" for a in report.assumptions)
    for s in report.stages:
        lines.append("")
        lines.append(f"[{s.stage}] {s.title}")
        for key, value in s.data.items():
            if key in _TEXT_SKIP or value is None:
                continue
            label = key.replace("_", " ")
            if isinstance(value, Mapping):
                lines.append(f"  {label}: {json.dumps(value, ensure_ascii=False)}")
            elif isinstance(value, (list, tuple)):
                shown = "; ".join(str(v) for v in value) if value else "(none)"
                lines.append(f"  {label}: {shown}")
            else:
                lines.append(f"  {label}: {value}")
        if s.checks:
            good = sum(1 for c in s.checks if c.ok is not False)
            lines.append(f"  checks: {good}/{len(s.checks)} passed")
    lines.append("")
    return "\n".join(lines)


# -- shared stage plumbing ------------------------------------------------------


def _frac(x) -> object:
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else str(x)
    return x


def form_summary(form: IntegerMatrix) -> str:
    """Short name for an intersection form: nH when it is a sum of
    hyperbolic blocks, else rank and parity."""
    n = form.rows
    if n == 0:
        return "rank 0"
    if n % 2 == 0 and form == hyperbolic_form(n // 2):
        return "H" if n == 2 else f"{n // 2}H"
    parity = "even" if is_even_form(form) else "odd"
    return f"rank {n}, {parity}"


def _snapshot(pres: Presentation) -> dict:
    return {
        "generators": list(pres.generators),
        "relators": [pres.format_word(r) for r in pres.relators],
        "shadow_families": [
            {"name": f.name, "kind": f.kind, "known_parts": len(f.known_parts)}
            for f in pres.shadows
        ],
    }


def _gate(stage: str, rep: ConsistencyReport) -> Tuple[CheckResult, ...]:
    fails = rep.failures()
    if fails:
        named = "; ".join(f"{c.name}: {c.detail or 'failed'}" for c in fails)
        raise StageVerificationError(f"stage {stage!r} verification failed: {named}")
    return tuple(rep.checks)


def _model_data(model: FourManifoldModel, rep: ConsistencyReport, derivation: str) -> dict:
    c1, chi = char_numbers(model)
    ab = abelianize(model.pi1)
    return {
        "derivation": derivation,
        "euler": model.euler,
        "signature": model.signature,
        "b1": model.b1,
        "b2": model.b2,
        "b2_plus": model.b2_plus,
        "b2_minus": model.b2_minus,
        "c1_squared": c1,
        "chi_h": _frac(chi),
        "form": form_summary(model.form),
        "spin": rep.spin,
        "symplectic": model.symplectic,
        "h1": ab.describe(),
        "assumptions": list(model.assumptions),
        "presentation": _snapshot(model.pi1),
        "presentation_unsimplified": (
            _snapshot(model.pi1_unsimplified) if model.pi1_unsimplified else None
        ),
    }


def _model_stage(stage: str, model: FourManifoldModel, derivation: str) -> StageRecord:
    rep = verify_model(model)
    checks = _gate(stage, rep)
    return StageRecord(stage, model.name, _model_data(model, rep, derivation), checks)


def _sum_stage(
    stage: str,
    model: FourManifoldModel,
    x_pi1: Presentation,
    y_pi1: Presentation,
    glue: GluingSpec,
    derivation: str,
    extras: Optional[Mapping[str, object]] = None,
    extra_checks: Tuple[CheckResult, ...] = (),
) -> StageRecord:
    """Verify a glued model and cross-check its H_1 by the inclusion
    matrix of the identified curves."""
    rep = verify_model(model)
    checks = list(_gate(stage, rep)) + list(extra_checks)
    px = complement_presentation(x_pi1, glue.side_x)
    py = complement_presentation(y_pi1, glue.side_y)
    pairs = list(glue.identifications) + [glue.boundary_relation]
    matrix = mv_inclusion_matrix(px, py, pairs)
    cok = mv_h1_cokernel(matrix)
    ab = abelianize(model.pi1)
    agree = cok.free_rank == ab.free_rank and cok.torsion == ab.torsion
    checks.append(
        CheckResult(
            "h1-two-routes",
            agree,
            f"inclusion cokernel {cok.describe()}, abelianization {ab.describe()}",
        )
    )
    data = _model_data(model, rep, derivation)
    data["mv_matrix"] = [list(r) for r in matrix.entries]
    data["mv_h1"] = cok.describe()
    data["routes_agree"] = agree
    if extras:
        data.update(extras)
    if not agree:
        raise StageVerificationError(
            f"stage {stage!r} verification failed: h1-two-routes: "
            f"inclusion route gives {cok.describe()}, abelianization gives {ab.describe()}"
        )
    for c in extra_checks:
        if c.ok is False:
            raise StageVerificationError(
                f"stage {stage!r} verification failed: {c.name}: {c.detail or 'failed'}"
            )
    return StageRecord(stage, model.name, data, tuple(checks))


# -- knot-level stages ----------------------------------------------------------


def _load_knot(spec_text: str):
    spec = parse_knot_spec(spec_text)
    model = standard_knot(spec)
    return spec, model, fiberedness_screen(model)


def _knot_record(stage: str, model: KnotGroupModel, screen: FiberednessReport) -> StageRecord:
    data = {
        "derivation": "knot group with certified meridian/longitude data",
        "genus": model.genus,
        "alexander": str(screen.alexander),
        "monic": screen.monic,
        "degree_matches_genus": screen.degree_matches,
        "verdict": screen.verdict,
        "certificates": list(model.certificates),
    }
    checks = (
        CheckResult("fibered", screen.verdict in _FIBERED, screen.verdict),
    )
    return StageRecord(stage, model.name, data, checks)


def _require_genus_one_fibered(scenario: str, model: KnotGroupModel, screen: FiberednessReport):
    if screen.verdict not in _FIBERED:
        raise NotFibered(
            model.name,
            screen.verdict,
            f"alexander polynomial {screen.alexander} fails the fibered screen",
        )
    if model.genus != 1:
        raise ScenarioError(
            f"{scenario} needs a genus-one fibered knot; {model.name} has genus {model.genus}"
        )
    if model.fiber is None or model.fiber.monodromy is None:
        raise ScenarioError(
            f"{scenario} needs closed monodromy words for the fiber; "
            f"{model.name} carries none (use trefoil or figure8)"
        )
    if set(model.presentation.generators) & _RESERVED:
        raise ScenarioError(
            f"knot generator names collide with complement names {sorted(_RESERVED)}"
        )


def _require_high_genus_fibered(config: ScenarioConfig, model: KnotGroupModel, screen: FiberednessReport) -> int:
    if screen.verdict not in _FIBERED:
        raise NotFibered(
            model.name,
            screen.verdict,
            f"alexander polynomial {screen.alexander} fails the fibered screen",
        )
    g = model.genus
    if g is None or model.fiber is None:
        raise ScenarioError("vk needs a second knot with known genus and fiber data")
    if g < 2:
        raise ScenarioError(f"vk requires genus >= 2; {model.name} has genus {g}")
    if config.genus_g is not None and config.genus_g != g:
        raise ScenarioError(
            f"configured genus {config.genus_g} disagrees with {model.name} (genus {g})"
        )
    if set(model.presentation.generators) & (_RESERVED | {"z"}):
        raise ScenarioError(
            "second-knot generator names collide with complement names"
        )
    return g


def _surgery_record(stage: str, m) -> StageRecord:
    data = {
        "derivation": "0-framed surgery: the longitude becomes a relator",
        "h1": "Z",
        "meridian": m.presentation.format_word(m.meridian),
        "presentation": _snapshot(m.presentation),
    }
    checks = (CheckResult("h1-infinite-cyclic", True, "Z, generated by the meridian"),)
    return StageRecord(stage, m.name, data, checks)


# -- the two gluings ------------------------------------------------------------


def _self_sum(k: KnotGroupModel, p: FourManifoldModel) -> Tuple[FourManifoldModel, GluingSpec]:
    """Sum the surgery-times-circle model with a second copy of itself:
    the section torus of one against the fiber torus of the other, the
    circle factor matched to a fiber letter so the product structure is
    twisted apart."""
    rep, mu2 = fiber_complement_presentation(k.fiber, ("c1", "c2"))
    xname = p.pi1.generators[-1]
    x = p.pi1.gen(xname)
    lam_index = len(k.presentation.relators)
    final_gens = tuple(p.pi1.generators) + ("d", "y")
    final = Presentation(final_gens)
    emb = k.fiber.embedding
    surfaces = (
        MarkedSurface(
            "S2", 2, 0, (0, 1), (emb[0], emb[1], final.gen("d"), final.gen("y"))
        ),
        MarkedSurface("T", 1, 0, (1, 0), (k.meridian, x)),
    )
    glue = GluingSpec(
        identifications=((x, Word.gen(0)), (k.meridian, Word.gen(1))),
        boundary_relation=(k.longitude, mu2),
        new_pairs=(("T", "S2", 1, 2),),
        side_x=ComplementSpec(
            meridian=k.longitude, kill=(lam_index,), consumed=("F", "T_m"), exact=True
        ),
        side_y=ComplementSpec(meridian=mu2, consumed=("F", "T_m"), replacement=rep),
        surfaces=surfaces,
        simplify_keep=final_gens,
        name=f"self-sum({p.name})",
    )
    return fiber_sum(p, "T_m", p, "F", glue), glue


def _fiber_section_sum(
    k: KnotGroupModel,
    p1: FourManifoldModel,
    k2: KnotGroupModel,
    p2: FourManifoldModel,
) -> Tuple[FourManifoldModel, GluingSpec]:
    """Sum the genus-one knot's model along its fiber against the
    high-genus knot's model along its section torus.  The high-genus
    fiber caps the removed genus-one fiber's complement to a closed
    surface of genus g+1."""
    g = k2.fiber.genus
    rep, mu1 = fiber_complement_presentation(k.fiber, ("c1", "c2"))
    zname = p2.pi1.generators[-1]
    z_hat = p2.pi1.gen(zname)
    lam_index = len(k2.presentation.relators)
    keep = ("d", "y") + tuple(k2.presentation.generators) + (zname,)
    final = Presentation(keep)

    def refit(w: Word) -> Word:
        return final.parse_word(k2.presentation.format_word(w))

    m2 = refit(k2.meridian)
    fiber_words = tuple(refit(w) for w in k2.fiber.embedding)
    surfaces = (
        MarkedSurface("T_W", 1, 0, (1, 0), (final.gen(zname), m2)),
        MarkedSurface(
            "S", g + 1, 0, (0, 1), (final.gen("d"), final.gen("y")) + fiber_words
        ),
    )
    glue = GluingSpec(
        identifications=((Word.gen(0), z_hat), (Word.gen(1), k2.meridian)),
        boundary_relation=(mu1, k2.longitude),
        new_pairs=(("T_W", "S", 1, g + 1),),
        side_x=ComplementSpec(meridian=mu1, consumed=("F", "T_m"), replacement=rep),
        side_y=ComplementSpec(
            meridian=k2.longitude, kill=(lam_index,), consumed=("F", "T_m"), exact=True
        ),
        surfaces=surfaces,
        simplify_keep=keep,
        name=f"fiber-section sum({p1.name}, {p2.name})",
    )
    return fiber_sum(p1, "F", p2, "T_m", glue), glue


def _relator_index(pres: Presentation, w: Word) -> int:
    for i, r in enumerate(pres.relators):
        if r == w:
            return i
    raise ScenarioError(f"expected relator {pres.format_word(w)!r} not found")


def _dual_circle_kill(pres: Presentation, circle: str) -> Tuple[int, ...]:
    """Indices of the relators that fail off the summed surface.

    These are the commutators tying the dual circle generator to the rest
    of the group: relators with zero exponent vector that open with the
    circle generator itself.  Matching on shape rather than on synthesized
    words keeps the lookup stable under the simplifier's choice of how to
    spell eliminated generators.
    """
    idx = pres.generators.index(circle)
    n = pres.ngens
    out = []
    for i, rel in enumerate(pres.relators):
        if not rel.runs or rel.runs[0] != (idx, 1):
            continue
        if any(rel.exponent_vector(n)):
            continue
        out.append(i)
    if not out:
        raise ScenarioError(
            f"no relators tie the circle generator {circle!r} to the group"
        )
    return tuple(out)


def _handle_swap_double(
    model: FourManifoldModel,
    surface_label: str,
    dual_source: str,
    *,
    circle: str,
    meridian: Word,
    pair_labels: Tuple[str, str],
    extra_pairs: Tuple[Tuple[str, str, Optional[int], Optional[int]], ...] = (),
    canonical: Tuple[int, ...],
    name: str,
) -> Tuple[FourManifoldModel, GluingSpec]:
    """Glue two copies of a model along a square-zero surface, matching
    the surface to itself by the map that swaps its first and last
    handle pairs and fixes the middle ones.

    The complement is not fully presentable: the commutators tying the
    dual circle generator ``circle`` to the rest of the group no longer
    hold off the surface, so they are replaced by a shadow family of
    unknown relators in the meridian's normal closure.  The dual surface
    is the two copies of ``dual_source`` (a torus) glued along the
    meridian circle: a closed genus-two surface.
    """
    surf = model.surface(surface_label)
    images = surf.pi1_images
    n2 = 2 * surf.genus
    ids = (
        [(images[0], images[n2 - 2]), (images[1], images[n2 - 1])]
        + [(images[i], images[i]) for i in range(2, n2 - 2)]
        + [(images[n2 - 2], images[0]), (images[n2 - 1], images[1])]
    )
    kill = _dual_circle_kill(model.pi1, circle)
    side = ComplementSpec(
        meridian=meridian, kill=kill, consumed=tuple(model.basis), exact=False
    )
    ngx = model.pi1.ngens
    rename = {g: f"{g}2" for g in model.pi1.generators}

    def shift(w: Word) -> Word:
        return w.substitute(lambda i: Word.gen(i + ngx))

    dual = model.surface(dual_source).pi1_images
    sum_label, dual_label = pair_labels
    nbasis = 2 + 2 * len(extra_pairs)

    def unit(i: int) -> Tuple[int, ...]:
        return tuple(int(j == i) for j in range(nbasis))

    surfaces = (
        MarkedSurface(sum_label, surf.genus, 0, unit(0), images),
        MarkedSurface(
            dual_label, 2, 0, unit(1), (dual[0], dual[1], shift(dual[0]), shift(dual[1]))
        ),
    )
    glue = GluingSpec(
        identifications=tuple(ids),
        boundary_relation=(meridian, meridian),
        new_pairs=((sum_label, dual_label, surf.genus, 2),) + tuple(extra_pairs),
        side_x=side,
        side_y=side,
        rename_y=rename,
        surfaces=surfaces,
        canonical_class=canonical,
        name=name,
    )
    return fiber_sum(model, surface_label, model, surface_label, glue), glue


# -- basic-class stage ----------------------------------------------------------


def _classes_stage(
    model: FourManifoldModel,
    constraints: ConstraintSet,
    derivation: str,
) -> Tuple[BasicClassReport, StageRecord]:
    report = build_report(model, constraints)
    vectors = {c.vector for c in report.candidates}
    ok_canonical = model.canonical_class in vectors
    dims = [
        sw_dimension(c.vector, model.euler, model.signature, model.form)
        for c in report.candidates
    ]
    ok_dims = all(d == 0 for d in dims)
    checks = (
        CheckResult(
            "canonical-among-candidates",
            ok_canonical,
            report.canonical.format(report.basis) if report.canonical else "no canonical class",
        ),
        CheckResult(
            "sw-dimension-zero",
            ok_dims,
            ", ".join(str(_frac(d)) for d in dims) if dims else "no candidates",
        ),
        CheckResult("negation-closed", True, "validated on construction"),
    )
    wall = None
    if model.b2_plus == 1:
        wall = {"dimension": 0, "delta": wall_crossing_delta(0)}
    data = {
        "derivation": derivation,
        "basis": list(report.basis),
        "candidates": [list(c.vector) for c in report.candidates],
        "basic_classes": report.classes_formatted(),
        "sw_dimensions": [_frac(d) for d in dims],
        "wall_crossing": wall,
        "sw_values": [
            f"{v.cls.format(report.basis)}: {v.value} ({v.chamber})"
            for v in report.sw_values
        ],
        "elimination": [
            f"{s.group}: pinned coordinates {list(s.forced_zero)}, rank now {s.remaining_rank}"
            for s in (report.trace.steps if report.trace else ())
        ],
        "kernel_rank": report.trace.kernel_rank if report.trace else None,
        "box": list(report.trace.box) if report.trace else None,
        "scanned": report.trace.scanned if report.trace else None,
        "warnings": list(report.warnings),
    }
    record = StageRecord(
        "classes", f"basic classes of {model.name}", data, checks
    )
    for c in checks:
        if c.ok is False:
            raise StageVerificationError(
                f"stage 'classes' verification failed: {c.name}: {c.detail or 'failed'}"
            )
    return report, record


def _vk_constraint_set(model: FourManifoldModel, g: int) -> ConstraintSet:
    """Adjunction on the two tracked surfaces plus the named zero-pairing
    groups: rim tori and their dual vanishing classes, whose pairings pin
    the corresponding coordinates to zero before the box scan."""
    rims = tuple(model.unit_vector(f"R{i}") for i in range(1, 2 * g - 1))
    vans = tuple(model.unit_vector(f"V{i}") for i in range(1, 2 * g - 1))
    return ConstraintSet(
        adjunction_surfaces=(model.surface("S"), model.surface("Sigma")),
        zero_pairing_classes=rims + vans,
        simple_type_square=2 * model.euler + 3 * model.signature,
        simple_type=True,
        zero_pairing_groups=(("rim-tori", 2 * g - 2), ("vanishing-classes", 2 * g - 2)),
    )


# -- scenario drivers -----------------------------------------------------------


def run_xk(config: ScenarioConfig) -> PipelineReport:
    """Genus-one pipeline: surgery, circle product, twisted self-sum,
    handle-swap double.  The result is a spin symplectic model with
    e=4, sigma=0, trivial H_1, intersection form H, and basic classes
    plus/minus twice the sum of the two tracked surface classes."""
    if config.scenario != "xk":
        raise ScenarioError(f"run_xk got scenario {config.scenario!r}")
    config = config.resolved()
    spec, k, screen = _load_knot(config.knot)
    _require_genus_one_fibered("xk", k, screen)
    stages = [_knot_record("knot", k, screen)]

    m = zero_surgery(k)
    stages.append(_surgery_record("surgery", m))

    p = product_with_circle(m)
    stages.append(
        _model_stage(
            "product",
            p,
            "product with a circle; fiber and section torus tracked as a hyperbolic pair",
        )
    )

    y, y_glue = _self_sum(k, p)
    stages.append(
        _sum_stage(
            "first-sum",
            y,
            p.pi1,
            p.pi1,
            y_glue,
            "section torus glued to fiber torus across two copies; "
            "fiber letters absorbed by the matching, leaving H_1 = Z^2",
        )
    )

    xname = p.pi1.generators[-1]
    x_w = y.pi1.gen(xname)
    mu = commutator(x_w, k.meridian)
    x_model, x_glue = _handle_swap_double(
        y,
        "S2",
        "T",
        circle=xname,
        meridian=mu,
        pair_labels=("S", "T"),
        canonical=(2, 2),
        name=f"double({y.name})",
    )
    stages.append(
        _sum_stage(
            "second-sum",
            x_model,
            y.pi1,
            y.pi1,
            x_glue,
            "double across the genus-two surface with the handle-swapping "
            "matching; every generator is forced into the commutator subgroup",
        )
    )

    constraints = constraints_from_model(x_model)
    classes, record = _classes_stage(
        x_model,
        constraints,
        "characteristic classes passing adjunction on both tracked surfaces "
        "and the square condition 2e+3sigma",
    )
    stages.append(record)

    assumptions = list(
        dict.fromkeys(x_model.assumptions + ("no-h2-torsion",))
    )
    assumptions.append(
        "basic-class square pinned to 2e+3sigma at b2+=1 (simple-type hypothesis)"
    )
    if isinstance(spec, FigureEight):
        assumptions.append(
            "figure-eight monodromy words are built-in table data "
            "(checked against the group relators)"
        )
    return PipelineReport(
        "xk", config, tuple(stages), classes, tuple(assumptions)
    )


def run_vk(config: ScenarioConfig) -> PipelineReport:
    """High-genus pipeline: two surgered knot products summed fiber to
    section, then doubled across the genus g+1 surface.  The result has
    e=4g, sigma=0, trivial H_1, form a sum of 2g-1 hyperbolic blocks,
    and basic classes plus/minus (2S + 2g Sigma)."""
    if config.scenario != "vk":
        raise ScenarioError(f"run_vk got scenario {config.scenario!r}")
    config = config.resolved()
    spec, k, screen = _load_knot(config.knot)
    _require_genus_one_fibered("vk", k, screen)
    spec2, k2, screen2 = _load_knot(config.second_knot)
    g = _require_high_genus_fibered(config, k2, screen2)
    stages = [
        _knot_record("knot", k, screen),
        _knot_record("second-knot", k2, screen2),
    ]

    m1 = zero_surgery(k)
    stages.append(_surgery_record("surgery", m1))
    m2 = zero_surgery(k2)
    stages.append(_surgery_record("second-surgery", m2))

    p1 = product_with_circle(m1)
    stages.append(
        _model_stage(
            "product",
            p1,
            "product with a circle; fiber and section torus tracked as a hyperbolic pair",
        )
    )
    p2 = product_with_circle(m2, circle_name="z")
    stages.append(
        _model_stage(
            "second-product",
            p2,
            "product with a circle; fiber and section torus tracked as a hyperbolic pair",
        )
    )

    w, w_glue = _fiber_section_sum(k, p1, k2, p2)
    stages.append(
        _sum_stage(
            "first-sum",
            w,
            p1.pi1,
            p2.pi1,
            w_glue,
            "genus-one fiber complement glued to the high-genus model's "
            "section torus; the capped fiber has genus g+1",
        )
    )

    zname = p2.pi1.generators[-1]
    z_w = w.pi1.gen(zname)
    m2_w = w.surface("T_W").pi1_images[1]
    mu = commutator(z_w, m2_w)
    extra_pairs = tuple(
        (f"R{i}", f"V{i}", 1, None) for i in range(1, 2 * g - 1)
    )
    canonical = (2, 2 * g) + (0,) * (4 * g - 4)
    v, v_glue = _handle_swap_double(
        w,
        "S",
        "T_W",
        circle=zname,
        meridian=mu,
        pair_labels=("S", "Sigma"),
        extra_pairs=extra_pairs,
        canonical=canonical,
        name=f"double({w.name})",
    )

    c1w, chiw = char_numbers(w)
    c1v, chiv = char_numbers(v)
    identity_checks = (
        CheckResult(
            "c1sq-doubling-identity",
            c1v == 2 * c1w + 8 * g,
            f"{c1v} = 2*{c1w} + 8*{g}",
        ),
        CheckResult(
            "chi-doubling-identity",
            chiv == 2 * chiw + g,
            f"{_frac(chiv)} = 2*{_frac(chiw)} + {g}",
        ),
    )
    stages.append(
        _sum_stage(
            "second-sum",
            v,
            w.pi1,
            w.pi1,
            v_glue,
            "double across the genus g+1 surface with the handle-swapping "
            "matching; rim tori and vanishing classes tracked in homology only",
            extras={
                "identities": {
                    "c1_squared": {"value": c1v, "predicted": 2 * c1w + 8 * g},
                    "chi_h": {"value": _frac(chiv), "predicted": _frac(2 * chiw + g)},
                }
            },
            extra_checks=identity_checks,
        )
    )

    classes, record = _classes_stage(
        v,
        _vk_constraint_set(v, g),
        "rim-torus and vanishing-class pairings pinned to zero, then "
        "adjunction on both tracked surfaces and the square condition 2e+3sigma",
    )
    stages.append(record)

    assumptions = list(dict.fromkeys(v.assumptions + ("no-h2-torsion",)))
    if isinstance(spec, FigureEight) or isinstance(spec2, FigureEight):
        assumptions.append(
            "figure-eight monodromy words are built-in table data "
            "(checked against the group relators)"
        )
    return PipelineReport("vk", config, tuple(stages), classes, tuple(assumptions))


def run_scenario(config: ScenarioConfig) -> PipelineReport:
    return run_xk(config) if config.scenario == "xk" else run_vk(config)
