"""Command line front end.

Four subcommands: ``scenario`` runs a full pipeline and writes its
report, ``knot`` builds and screens a single knot model, ``swclasses``
enumerates basic-class candidates for a lattice-level model file, and
``fibersum`` does characteristic-number bookkeeping for a gluing.  Every
command exits 0 only when all of its verifications pass: 1 flags a
failed verification, 2 a bad invocation or input file.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import List, Optional, Sequence

from .fourfold import MarkedSurface, ModelError
from .intlinalg import IntegerMatrix, signature_symmetric
from .knotforge import CertificationError, fiberedness_screen, parse_knot_spec, standard_knot
from .presentations import PresentationError
from .scenarios import (
    PipelineReport,
    ScenarioConfig,
    ScenarioError,
    StageVerificationError,
    emit_report,
    run_scenario,
)
from .swenum import (
    BasicClassReport,
    ChamberInfo,
    CharacteristicClass,
    ConstraintSet,
    EnumerationError,
    box_scan,
    enumerate_with_trace,
    taubes_annotate,
)


def _write_file(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _load_json(path: str) -> dict:
    if path == "-":
        return json.load(sys.stdin)
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _print_matrix(title: str, rows: Sequence[Sequence[int]]) -> None:
    print(f"{title}:")
    if not rows:
        print("  (empty)")
        return
    width = max(len(str(x)) for row in rows for x in row)
    for row in rows:
        print("  [" + " ".join(str(x).rjust(width) for x in row) + "]")


# -- scenario ---------------------------------------------------------------------


def _scenario_trace_dump(report: PipelineReport) -> None:
    for s in report.stages:
        matrix = s.data.get("mv_matrix")
        if matrix:
            _print_matrix(f"[{s.stage}] inclusion matrix", matrix)
    classes = report.classes
    if classes is not None and classes.trace is not None:
        tr = classes.trace
        _print_matrix("[classes] kernel basis (rows)", tr.kernel_basis)
        print(f"[classes] box caps: {list(tr.box)}")
        print(f"[classes] scanned {tr.scanned} points, accepted {tr.accepted}")


def _cmd_scenario(args: argparse.Namespace) -> int:
    if args.config:
        config = ScenarioConfig.from_file(args.config)
        if config.scenario != args.name:
            raise ScenarioError(
                f"config file is for scenario {config.scenario!r}, "
                f"command line says {args.name!r}"
            )
    else:
        config = ScenarioConfig(scenario=args.name)
    config = config.with_overrides(
        knot=args.knot,
        genus_g=args.g,
        second_knot=args.knot2,
        output=args.json,
        trace=args.trace,
    )
    report = run_scenario(config)
    print(emit_report(report, format="text"), end="")
    if config.trace:
        _scenario_trace_dump(report)
    if config.output:
        _write_file(config.output, emit_report(report))
        print(f"json report written to {config.output}")
    if args.text:
        _write_file(args.text, emit_report(report, format="text"))
        print(f"text report written to {args.text}")
    return 0 if report.all_pass else 1


# -- knot -------------------------------------------------------------------------


def _cmd_knot(args: argparse.Namespace) -> int:
    spec = parse_knot_spec(args.spec)
    model = standard_knot(spec)
    screen = fiberedness_screen(model)
    pres = model.presentation
    doc = {
        "schema": "fourfold-lab/knot/1",
        "name": model.name,
        "genus": model.genus,
        "alexander": str(screen.alexander),
        "monic": screen.monic,
        "degree_matches_genus": screen.degree_matches,
        "verdict": screen.verdict,
        "certificates": list(model.certificates),
        "generators": list(pres.generators),
        "relators": [pres.format_word(r) for r in pres.relators],
        "meridian": pres.format_word(model.meridian),
        "longitude": pres.format_word(model.longitude),
        "fiber_genus": model.fiber.genus if model.fiber else None,
    }
    print(f"knot: {model.name}")
    print(f"genus: {model.genus}")
    print(f"alexander polynomial: {screen.alexander}")
    print(f"monic: {'yes' if screen.monic else 'no'}")
    if screen.degree_matches is not None:
        print(f"degree matches genus: {'yes' if screen.degree_matches else 'no'}")
    print(f"fiberedness verdict: {screen.verdict}")
    if model.certificates:
        print("certificates:")
        for c in model.certificates:
            print(f"  - {c}")
    print(f"group: <{', '.join(pres.generators)} | "
          f"{', '.join(pres.format_word(r) for r in pres.relators)}>")
    print(f"meridian: {pres.format_word(model.meridian)}")
    print(f"longitude: {pres.format_word(model.longitude)}")
    if args.json:
        _write_file(args.json, json.dumps(doc, indent=2, ensure_ascii=False) + "\n")
        print(f"json written to {args.json}")
    return 0


# -- swclasses --------------------------------------------------------------------


_MODEL_KEYS = frozenset(
    {
        "form",
        "basis",
        "b1",
        "signature",
        "euler",
        "surfaces",
        "zero_pairing_classes",
        "simple_type_square",
        "simple_type",
        "zero_pairing_groups",
        "canonical",
    }
)
_SURFACE_KEYS = frozenset({"label", "genus", "vector", "self_intersection"})


def _model_from_doc(doc: dict):
    """Lattice-level model: form, surfaces, and chamber data from JSON."""
    unknown = sorted(set(doc) - _MODEL_KEYS)
    if unknown:
        raise EnumerationError(
            f"unknown model keys {unknown}; valid keys are {sorted(_MODEL_KEYS)}"
        )
    if "form" not in doc:
        raise EnumerationError("model file needs a 'form' matrix")
    form = IntegerMatrix([[int(x) for x in row] for row in doc["form"]])
    n = form.rows
    basis = tuple(doc.get("basis") or (f"e{i + 1}" for i in range(n)))
    if len(basis) != n:
        raise EnumerationError(f"basis names {len(basis)} entries, form rank is {n}")
    b1 = int(doc.get("b1", 0))
    sig = signature_symmetric(form)
    euler = 2 - 2 * b1 + n
    if "signature" in doc and int(doc["signature"]) != sig:
        raise EnumerationError(
            f"declared signature {doc['signature']} but the form has {sig}"
        )
    if "euler" in doc and int(doc["euler"]) != euler:
        raise EnumerationError(
            f"declared euler {doc['euler']} but b1={b1} and rank {n} give {euler}"
        )

    surfaces = []
    for s in doc.get("surfaces", ()):
        bad = sorted(set(s) - _SURFACE_KEYS)
        if bad:
            raise EnumerationError(
                f"unknown surface keys {bad}; valid keys are {sorted(_SURFACE_KEYS)}"
            )
        vec = tuple(int(x) for x in s["vector"])
        if len(vec) != n:
            raise EnumerationError(f"surface {s.get('label')!r} vector has wrong length")
        sq = sum(a * b for a, b in zip(vec, form.mat_vec(vec)))
        if "self_intersection" in s and int(s["self_intersection"]) != sq:
            raise EnumerationError(
                f"surface {s.get('label')!r} declares square {s['self_intersection']} "
                f"but the form gives {sq}"
            )
        surfaces.append(MarkedSurface(str(s["label"]), int(s["genus"]), sq, vec))

    constraints = ConstraintSet(
        adjunction_surfaces=tuple(surfaces),
        zero_pairing_classes=tuple(
            tuple(int(x) for x in z) for z in doc.get("zero_pairing_classes", ())
        ),
        simple_type_square=int(doc.get("simple_type_square", 2 * euler + 3 * sig)),
        simple_type=bool(doc.get("simple_type", False)),
        zero_pairing_groups=tuple(
            (str(name), int(count)) for name, count in doc.get("zero_pairing_groups", ())
        ),
    )
    chamber = ChamberInfo(b1=b1, b2plus=(n + sig) // 2, b2minus=(n - sig) // 2)
    canonical = None
    if doc.get("canonical") is not None:
        canonical = CharacteristicClass(tuple(int(x) for x in doc["canonical"]))
    return form, basis, constraints, chamber, canonical


def _cmd_swclasses(args: argparse.Namespace) -> int:
    doc = _load_json(args.model)
    form, basis, constraints, chamber, canonical = _model_from_doc(doc)
    cands, trace = enumerate_with_trace(form, constraints)
    report = BasicClassReport(
        candidates=tuple(cands),
        chamber=chamber,
        canonical=canonical,
        basis=basis,
        trace=trace,
    )
    if canonical is not None:
        report = taubes_annotate(report, canonical, chamber.b2plus)

    print(f"basis: {', '.join(basis)}")
    print(f"candidates: {report.classes_formatted()}")
    for step in trace.steps:
        print(
            f"eliminated {step.group}: coordinates {list(step.forced_zero)} "
            f"pinned to zero, rank now {step.remaining_rank}"
        )
    print(f"kernel rank {trace.kernel_rank}, box {list(trace.box)}, "
          f"scanned {trace.scanned}, accepted {trace.accepted}")
    for v in report.sw_values:
        print(f"sw {v.cls.format(basis)}: {v.value} ({v.chamber})")
    for w in report.warnings:
        print(f"warning: {w}")
    if args.trace:
        _print_matrix("kernel basis (rows)", trace.kernel_basis)
        _print_matrix("form", form.entries)

    ok = True
    if args.oracle is not None:
        oracle = box_scan(form, constraints, args.oracle, backend=args.backend)
        inside = sorted(
            c.vector for c in cands if all(abs(x) <= args.oracle for x in c.vector)
        )
        scanned = sorted(c.vector for c in oracle)
        if inside == scanned:
            print(f"oracle: box scan at bound {args.oracle} agrees "
                  f"({len(scanned)} classes)")
        else:
            ok = False
            missing = [v for v in scanned if v not in inside]
            extra = [v for v in inside if v not in scanned]
            print(f"oracle: MISMATCH at bound {args.oracle}")
            if missing:
                print(f"  scan found, kernel path missed: {missing}")
            if extra:
                print(f"  kernel path found, scan missed: {extra}")

    if args.json:
        _write_file(args.json, report.dumps() + "\n")
        print(f"json written to {args.json}")
    return 0 if ok else 1


# -- fibersum ---------------------------------------------------------------------


def _side_numbers(doc: dict, path: str) -> tuple:
    if "euler" in doc and "signature" in doc:
        return int(doc["euler"]), int(doc["signature"])
    if "form" in doc:
        form = IntegerMatrix([[int(x) for x in row] for row in doc["form"]])
        b1 = int(doc.get("b1", 0))
        return 2 - 2 * b1 + form.rows, signature_symmetric(form)
    raise EnumerationError(f"{path}: need euler+signature or a form matrix")


def _cmd_fibersum(args: argparse.Namespace) -> int:
    g = args.genus
    if g < 1:
        raise EnumerationError("fiber sum needs genus >= 1")
    sides = []
    for path in (args.x, args.y):
        doc = _load_json(path)
        e, sig = _side_numbers(doc, path)
        sides.append({"path": path, "euler": e, "signature": sig,
                      "c1_squared": 2 * e + 3 * sig,
                      "chi_h_times_4": e + sig})
    e = sides[0]["euler"] + sides[1]["euler"] + 4 * g - 4
    sig = sides[0]["signature"] + sides[1]["signature"]
    c1sq = 2 * e + 3 * sig
    chi4 = e + sig
    chi_h = Fraction(chi4, 4)

    checks = [
        {
            "name": "c1sq-additivity",
            "ok": c1sq == sides[0]["c1_squared"] + sides[1]["c1_squared"] + 8 * (g - 1),
            "detail": f"{c1sq} = {sides[0]['c1_squared']} + {sides[1]['c1_squared']} "
                      f"+ 8({g}-1)",
        },
        {
            "name": "chi-additivity",
            "ok": chi4 == sides[0]["chi_h_times_4"] + sides[1]["chi_h_times_4"]
            + 4 * (g - 1),
            "detail": f"4chi_h: {chi4}",
        },
        {
            "name": "chi-integral",
            "ok": chi4 % 4 == 0,
            "detail": f"e + sigma = {chi4}" + ("" if chi4 % 4 == 0 else " is not divisible by 4"),
        },
    ]
    doc = {
        "schema": "fourfold-lab/fibersum/1",
        "genus": g,
        "sides": sides,
        "euler": e,
        "signature": sig,
        "c1_squared": c1sq,
        "chi_h": int(chi_h) if chi_h.denominator == 1 else str(chi_h),
        "checks": checks,
    }
    print(f"fiber sum along a genus-{g} square-zero surface")
    for side in sides:
        print(f"  {side['path']}: e={side['euler']}, sigma={side['signature']}")
    print(f"result: e={e}, sigma={sig}, c1^2={c1sq}, chi_h={doc['chi_h']}")
    ok = True
    for c in checks:
        mark = "ok" if c["ok"] else "FAIL"
        print(f"  [{mark}] {c['name']}: {c['detail']}")
        ok = ok and c["ok"]
    if args.json:
        _write_file(args.json, json.dumps(doc, indent=2, ensure_ascii=False) + "\n")
        print(f"json written to {args.json}")
    return 0 if ok else 1


# -- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fourfold-lab",
        description="surgical 4-manifold pipelines and basic-class surveys",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sc = sub.add_parser("scenario", help="run a full pipeline and report it")
    sc.add_argument("name", choices=("xk", "vk"), help="which pipeline to run")
    sc.add_argument("--knot", help="knot spec (trefoil, figure8, torus:p,q, twist:n)")
    sc.add_argument("--knot2", help="second knot spec for vk")
    sc.add_argument("--g", type=int, help="genus of the vk partner knot")
    sc.add_argument("--config", help="JSON config file; flags override it")
    sc.add_argument("--json", help="write the JSON report here")
    sc.add_argument("--text", help="write the text report here")
    sc.add_argument("--trace", action="store_true",
                    help="dump inclusion matrices and the scan kernel")
    sc.set_defaults(func=_cmd_scenario)

    kn = sub.add_parser("knot", help="build one knot model and screen it")
    kn.add_argument("spec", help="knot spec (trefoil, figure8, torus:p,q, twist:n)")
    kn.add_argument("--json", help="write the knot facts here")
    kn.set_defaults(func=_cmd_knot)

    sw = sub.add_parser("swclasses", help="enumerate basic-class candidates")
    sw.add_argument("model", help="lattice model JSON file, or - for stdin")
    sw.add_argument("--oracle", type=int, metavar="BOUND",
                    help="cross-check against a brute box scan up to BOUND")
    sw.add_argument("--backend", choices=("numba", "numpy"),
                    help="force the oracle scan backend")
    sw.add_argument("--json", help="write the report here")
    sw.add_argument("--trace", action="store_true",
                    help="dump the kernel basis and the form")
    sw.set_defaults(func=_cmd_swclasses)

    fs = sub.add_parser("fibersum", help="characteristic-number bookkeeping")
    fs.add_argument("x", help="first side model JSON")
    fs.add_argument("y", help="second side model JSON")
    fs.add_argument("--genus", type=int, required=True,
                    help="genus of the matched square-zero surface")
    fs.add_argument("--json", help="write the bookkeeping here")
    fs.set_defaults(func=_cmd_fibersum)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (StageVerificationError, CertificationError) as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 1
    except (
        ScenarioError,
        EnumerationError,
        ModelError,
        PresentationError,
        ValueError,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
