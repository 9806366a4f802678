"""Tactic application and proof replay.

Every tactic operates on the first open goal only, so applying one changes
the goal count by exactly -1 (a goal closes), 0 (it is transformed), or +1
(cases and split turn one goal into two).
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import RewriteBudgetError, TacticError, ReplayError, MiniLeanError
from .decls import Decl, DeclKind
from .names import Env
from .rewrite import Rule, rewrite_goal_once
from .tactics import Cases, Rfl, Rw, Split, Tactic, Unfold, format_tactic
from .terms import (
    ZERO,
    AndGoal,
    EqGoal,
    Goal,
    ProofState,
    Sequent,
    Var,
    format_goal,
    goal_free_vars,
    initial_state,
    subst_goal,
    succ,
)

__all__ = ["apply_tactic", "check_proof", "ReplayStep", "fresh_variable"]

_FRESH_BASE = "k"


def fresh_variable(taken: frozenset[str]) -> str:
    """First name in k, k', k'', ... not already taken."""

    name = _FRESH_BASE
    while name in taken:
        name += "'"
    return name


def _oriented_rules(decl: Decl, reverse: bool = False) -> list[Rule]:
    return [Rule.from_equation(lhs, rhs, reverse=reverse) for lhs, rhs in decl.equations]


def _close_if_trivial(goal: Goal) -> bool:
    return isinstance(goal, EqGoal) and goal.lhs == goal.rhs


def apply_tactic(state: ProofState, tactic: Tactic, env: Env) -> ProofState:
    """Apply one tactic to the first goal. Raises TacticError (and its
    subclass RewriteBudgetError) or a name-resolution error."""

    if state.finished:
        raise TacticError(f"no goals to apply {format_tactic(tactic)!r} to")
    first, rest = state.sequents[0], state.sequents[1:]
    goal, binders = first.goal, first.binders

    if isinstance(tactic, Rfl):
        if not isinstance(goal, EqGoal):
            raise TacticError("rfl expects an equality goal")
        if goal.lhs != goal.rhs:
            raise TacticError(f"rfl: sides differ in {format_goal(goal)!r}")
        return ProofState(rest)

    if isinstance(tactic, Split):
        if not isinstance(goal, AndGoal):
            raise TacticError("split expects a conjunction goal")
        return ProofState((Sequent(goal.left, binders), Sequent(goal.right, binders), *rest))

    if isinstance(tactic, Cases):
        if tactic.var not in binders:
            raise TacticError(f"cases: {tactic.var!r} is not a bound variable of the goal")
        remaining = binders - {tactic.var}
        fresh = fresh_variable(remaining | (goal_free_vars(goal) - {tactic.var}))
        zero_goal = subst_goal(goal, {tactic.var: ZERO})
        succ_goal = subst_goal(goal, {tactic.var: succ(Var(fresh))})
        return ProofState(
            (Sequent(zero_goal, remaining), Sequent(succ_goal, remaining | {fresh}), *rest)
        )

    if isinstance(tactic, Rw):
        decl = env.resolve(tactic.target)
        rewritten = rewrite_goal_once(goal, _oriented_rules(decl, tactic.reverse))
        if rewritten is None:
            raise TacticError(f"rw {decl.full_name}: no redex in {format_goal(goal)!r}")
        if _close_if_trivial(rewritten):
            return ProofState(rest)
        return ProofState((Sequent(rewritten, binders), *rest))

    if isinstance(tactic, Unfold):
        decl = env.resolve(tactic.target)
        if decl.kind is not DeclKind.DEFINITION:
            raise TacticError(f"unfold {decl.full_name}: not a definition")
        rules = _oriented_rules(decl)
        steps = 0
        current = goal
        while True:
            rewritten = rewrite_goal_once(current, rules)
            if rewritten is None:
                break
            steps += 1
            if steps > env.rewrite_budget:
                raise RewriteBudgetError(
                    f"unfold {decl.full_name}: exceeded {env.rewrite_budget} rewrite steps"
                )
            current = rewritten
        if steps == 0:
            raise TacticError(f"unfold {decl.full_name}: nothing to unfold in {format_goal(goal)!r}")
        if _close_if_trivial(current):
            return ProofState(rest)
        return ProofState((Sequent(current, binders), *rest))

    raise TacticError(f"unsupported tactic {tactic!r}")


@dataclass(frozen=True)
class ReplayStep:
    before: ProofState
    tactic: Tactic
    after: ProofState


def check_proof(decl: Decl, env: Env) -> list[ReplayStep]:
    """Replay a declaration's proof from its statement. Returns all steps on
    success; raises ReplayError naming the first failing tactic index (or the
    proof length when tactics run out with goals remaining)."""

    state = initial_state(decl.statement())
    steps: list[ReplayStep] = []
    for index, tactic in enumerate(decl.proof):
        try:
            after = apply_tactic(state, tactic, env)
        except MiniLeanError as exc:
            raise ReplayError(
                f"{decl.full_name}: {format_tactic(tactic)!r} failed: {exc}", index, exc
            ) from exc
        steps.append(ReplayStep(state, tactic, after))
        state = after
    if not state.finished:
        raise ReplayError(
            f"{decl.full_name}: proof ended with {len(state.sequents)} open goal(s)",
            len(decl.proof),
        )
    return steps
