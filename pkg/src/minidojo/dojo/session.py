"""Gym-style proof interaction.

A session pins one theorem and hands out immutable environment states keyed
by strictly increasing ids (0 is the initial state). ``run_tac`` never raises
for proof-level problems: parse failures, resolution failures, failed
tactics, and exhausted budgets all come back as error states, and error
states (like finished states) absorb every subsequent tactic. States form a
tree, so any earlier id can be re-run for backtracking.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass
from typing import Callable

from ..corpus import Corpus
from ..errors import (
    AmbiguousNameError,
    DojoError,
    MiniLeanError,
    ParseError,
    RewriteBudgetError,
    TacticError,
    UnknownNameError,
)
from ..kernel import ProofState, apply_tactic, format_state, initial_state, parse_tactic

__all__ = [
    "EnvState",
    "Session",
    "initialize",
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

DEFAULT_WALL_SECONDS = 600.0
DEFAULT_STEP_BUDGET = 100

PARSE_ERROR = "ParseError"
UNKNOWN_NAME = "UnknownName"
AMBIGUOUS_NAME = "AmbiguousName"
TACTIC_FAILED = "TacticFailed"
TIMEOUT = "Timeout"
BUDGET_EXCEEDED = "BudgetExceeded"
ON_ERROR_STATE = "OnErrorState"


def wall_seconds_default() -> float:
    value = os.environ.get("MINIDOJO_WALL_S")
    return float(value) if value else DEFAULT_WALL_SECONDS


def step_budget_default() -> int:
    value = os.environ.get("MINIDOJO_STEPS")
    return int(value) if value else DEFAULT_STEP_BUDGET


@dataclass(frozen=True)
class EnvState:
    """One node of the interaction tree: open goals, a finished proof, or an
    absorbed error."""

    id: int
    proof_state: ProofState | None
    error_kind: str | None = None
    error_message: str | None = None

    @property
    def is_error(self) -> bool:
        return self.error_kind is not None

    @property
    def proof_finished(self) -> bool:
        return self.proof_state is not None and self.proof_state.finished

    @property
    def text(self) -> str | None:
        return format_state(self.proof_state) if self.proof_state is not None else None


class Session:
    def __init__(
        self,
        corpus: Corpus,
        theorem: str,
        wall_seconds: float | None = None,
        step_budget: int | None = None,
        mode: str = "inside_namespace",
        clock: Callable[[], float] = time.monotonic,
    ):
        self.theorem = corpus.theorem(theorem)
        budget = step_budget if step_budget is not None else step_budget_default()
        self.env = corpus.env_for(theorem, mode=mode, rewrite_budget=budget)
        self.wall_seconds = wall_seconds if wall_seconds is not None else wall_seconds_default()
        self.clock = clock
        self.started = clock()
        root = EnvState(0, initial_state(self.theorem.statement()))
        self.states: dict[int, EnvState] = {0: root}
        self.parents: dict[int, tuple[int, str]] = {}
        self._next_id = 1

    @property
    def initial(self) -> EnvState:
        return self.states[0]

    def elapsed(self) -> float:
        return self.clock() - self.started

    def _record(self, state: EnvState, parent: int, tactic: str) -> EnvState:
        self.states[state.id] = state
        self.parents[state.id] = (parent, tactic)
        return state

    def _error(self, parent: int, tactic: str, kind: str, message: str) -> EnvState:
        state = EnvState(self._next_id, None, kind, message)
        self._next_id += 1
        return self._record(state, parent, tactic)

    def run_tac(self, state_id: int, tactic_text: str) -> EnvState:
        source = self.states.get(state_id)
        if source is None:
            raise DojoError(f"unknown state id {state_id}")
        if source.is_error or source.proof_finished:
            return self._error(
                state_id,
                tactic_text,
                ON_ERROR_STATE,
                "state accepts no tactics"
                + (f" (absorbed {source.error_kind})" if source.is_error else " (proof finished)"),
            )
        if self.elapsed() > self.wall_seconds:
            return self._error(
                state_id, tactic_text, TIMEOUT, f"wall clock budget {self.wall_seconds}s exhausted"
            )
        try:
            tactic = parse_tactic(tactic_text)
        except ParseError as exc:
            return self._error(state_id, tactic_text, PARSE_ERROR, str(exc))
        try:
            after = apply_tactic(source.proof_state, tactic, self.env)
        except AmbiguousNameError as exc:
            return self._error(state_id, tactic_text, AMBIGUOUS_NAME, str(exc))
        except UnknownNameError as exc:
            return self._error(state_id, tactic_text, UNKNOWN_NAME, str(exc))
        except RewriteBudgetError as exc:
            return self._error(state_id, tactic_text, BUDGET_EXCEEDED, str(exc))
        except TacticError as exc:
            return self._error(state_id, tactic_text, TACTIC_FAILED, str(exc))
        except MiniLeanError as exc:  # pragma: no cover - no other kinds expected
            return self._error(state_id, tactic_text, TACTIC_FAILED, str(exc))
        state = EnvState(self._next_id, after)
        self._next_id += 1
        return self._record(state, state_id, tactic_text)

    def path_to(self, state_id: int) -> list[str]:
        """Tactic texts along the tree path from the initial state."""

        if state_id not in self.states:
            raise DojoError(f"unknown state id {state_id}")
        tactics: list[str] = []
        while state_id != 0:
            state_id, tactic = self.parents[state_id]
            tactics.append(tactic)
        tactics.reverse()
        return tactics


def initialize(
    corpus: Corpus,
    theorem: str,
    wall_seconds: float | None = None,
    step_budget: int | None = None,
    mode: str = "inside_namespace",
    clock: Callable[[], float] = time.monotonic,
) -> tuple[Session, EnvState]:
    session = Session(corpus, theorem, wall_seconds, step_budget, mode, clock)
    return session, session.initial
