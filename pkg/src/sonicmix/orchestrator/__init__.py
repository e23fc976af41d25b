"""Retrieve-then-generate session loop around a pluggable script generator."""

from .context import GeneratorContext, asset_block, build_context, method_table
from .generators import (
    GeneratorConfigError,
    GeneratorError,
    MockGenerator,
    NewQuery,
    RemoteGenerator,
    RetrievalDecision,
    Reuse,
    ScriptGenerator,
    extract_script,
    heuristic_decision,
    parse_decision,
)
from .loop import DecisionFallbackWarning, OrchestratorError, SessionState, decide_retrieval, step

__all__ = [
    "DecisionFallbackWarning",
    "GeneratorConfigError",
    "GeneratorContext",
    "GeneratorError",
    "MockGenerator",
    "NewQuery",
    "OrchestratorError",
    "RemoteGenerator",
    "RetrievalDecision",
    "Reuse",
    "ScriptGenerator",
    "SessionState",
    "asset_block",
    "build_context",
    "decide_retrieval",
    "extract_script",
    "heuristic_decision",
    "method_table",
    "parse_decision",
    "step",
]
