"""fourfold-lab: exact models of knot-surgery 4-manifolds and their
Seiberg-Witten basic class enumeration.

The package splits into five public modules.  ``fpgroup`` holds the
group-theory substrate (words, presentations, abelianization, Fox
calculus).  ``knotforge`` builds certified knot group models and their
surgeries.  ``fourfold`` assembles closed 4-manifold models by circle
products and fiber sums, with verification.  ``swenum`` enumerates
basic-class candidates against adjunction and square constraints.
``scenarios_cli`` wires complete pipelines and the ``fourfold-lab``
command around all of it.
"""

from . import fourfold, fpgroup, knotforge, scenarios_cli, swenum
from .fourfold import FourManifoldModel, fiber_sum, product_with_circle, verify_model
from .fpgroup import IntegerMatrix, LaurentPolynomial, Presentation, Word
from .knotforge import standard_knot, torus_knot_group, zero_surgery
from .scenarios_cli import ScenarioConfig, emit_report, run_scenario, run_vk, run_xk
from .swenum import BasicClassReport, build_report, enumerate_basic_candidates

__version__ = "0.1.0"

__all__ = [
    "BasicClassReport",
    "FourManifoldModel",
    "IntegerMatrix",
    "LaurentPolynomial",
    "Presentation",
    "ScenarioConfig",
    "Word",
    "build_report",
    "emit_report",
    "enumerate_basic_candidates",
    "fiber_sum",
    "fourfold",
    "fpgroup",
    "knotforge",
    "product_with_circle",
    "run_scenario",
    "run_vk",
    "run_xk",
    "scenarios_cli",
    "standard_knot",
    "swenum",
    "torus_knot_group",
    "verify_model",
    "zero_surgery",
]
