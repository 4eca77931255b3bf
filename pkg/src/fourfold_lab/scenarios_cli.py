"""Scenario pipelines and their command line entry point, in one place."""

from .cli import build_parser, main
from .scenarios import (
    NotFibered,
    PipelineReport,
    ScenarioConfig,
    ScenarioError,
    StageRecord,
    StageVerificationError,
    emit_report,
    run_scenario,
    run_vk,
    run_xk,
)

__all__ = [
    "NotFibered",
    "PipelineReport",
    "ScenarioConfig",
    "ScenarioError",
    "StageRecord",
    "StageVerificationError",
    "build_parser",
    "emit_report",
    "main",
    "run_scenario",
    "run_vk",
    "run_xk",
]
