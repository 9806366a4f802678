"""Interaction layer: sessions over a corpus plus the JSON wire protocol."""

from .session import (
    AMBIGUOUS_NAME,
    BUDGET_EXCEEDED,
    DEFAULT_STEP_BUDGET,
    DEFAULT_WALL_SECONDS,
    ON_ERROR_STATE,
    PARSE_ERROR,
    TACTIC_FAILED,
    TIMEOUT,
    UNKNOWN_NAME,
    EnvState,
    Session,
    initialize,
    step_budget_default,
    wall_seconds_default,
)
from .server import ProtocolHandler, make_tcp_server, serve_stdio

__all__ = [
    "EnvState",
    "Session",
    "initialize",
    "ProtocolHandler",
    "serve_stdio",
    "make_tcp_server",
    "DEFAULT_WALL_SECONDS",
    "DEFAULT_STEP_BUDGET",
    "wall_seconds_default",
    "step_budget_default",
    "PARSE_ERROR",
    "UNKNOWN_NAME",
    "AMBIGUOUS_NAME",
    "TACTIC_FAILED",
    "TIMEOUT",
    "BUDGET_EXCEEDED",
    "ON_ERROR_STATE",
]
