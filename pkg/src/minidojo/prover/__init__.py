"""Automated proving: tactic generators and best-first search."""

from __future__ import annotations

from .generate import (
    TACTIC_TYPES,
    ExternalGenerator,
    GeneratorSpec,
    OracleGenerator,
    ScoredTactic,
    TemplateGenerator,
    TemplatePriors,
    make_generator,
    tactic_type,
)
from .search import SearchResult, best_first_search, evaluate_pass_at_1, result_to_record

__all__ = [
    "TACTIC_TYPES",
    "ExternalGenerator",
    "GeneratorSpec",
    "OracleGenerator",
    "ScoredTactic",
    "TemplateGenerator",
    "TemplatePriors",
    "make_generator",
    "tactic_type",
    "SearchResult",
    "best_first_search",
    "evaluate_pass_at_1",
    "result_to_record",
]
