"""First-order terms, goals, and proof states.

Terms are either variables or applications of a head symbol to arguments.
``zero`` is the only nullary constructor that appears at the surface; every
other bare identifier parses as a variable, so printing and parsing round-trip
without a binder context. ``succ`` is the unary successor constructor; all
remaining head symbols are user function symbols with arity fixed by use.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping, Union

__all__ = [
    "Var",
    "App",
    "Term",
    "ZERO",
    "succ",
    "EqGoal",
    "AndGoal",
    "Goal",
    "Sequent",
    "ProofState",
    "free_vars",
    "goal_free_vars",
    "subst",
    "subst_goal",
    "format_term",
    "format_goal",
    "format_state",
    "initial_state",
]


@dataclass(frozen=True, slots=True)
class Var:
    name: str


@dataclass(frozen=True, slots=True)
class App:
    head: str
    args: tuple["Term", ...] = ()


Term = Union[Var, App]

ZERO = App("zero")


def succ(t: Term) -> App:
    return App("succ", (t,))


@dataclass(frozen=True, slots=True)
class EqGoal:
    lhs: Term
    rhs: Term


@dataclass(frozen=True, slots=True)
class AndGoal:
    left: "Goal"
    right: "Goal"


Goal = Union[EqGoal, AndGoal]


@dataclass(frozen=True, slots=True)
class Sequent:
    """One open goal together with its universally quantified variables."""

    goal: Goal
    binders: frozenset[str]


@dataclass(frozen=True, slots=True)
class ProofState:
    """An ordered sequence of open goals. Empty means the proof is finished."""

    sequents: tuple[Sequent, ...]

    @property
    def finished(self) -> bool:
        return not self.sequents


def free_vars(term: Term) -> frozenset[str]:
    if isinstance(term, Var):
        return frozenset((term.name,))
    acc: set[str] = set()
    stack = list(term.args)
    while stack:
        t = stack.pop()
        if isinstance(t, Var):
            acc.add(t.name)
        else:
            stack.extend(t.args)
    return frozenset(acc)


def _iter_goals(goal: Goal) -> Iterator[EqGoal]:
    if isinstance(goal, EqGoal):
        yield goal
    else:
        yield from _iter_goals(goal.left)
        yield from _iter_goals(goal.right)


def goal_free_vars(goal: Goal) -> frozenset[str]:
    acc: frozenset[str] = frozenset()
    for eq in _iter_goals(goal):
        acc |= free_vars(eq.lhs) | free_vars(eq.rhs)
    return acc


def subst(term: Term, mapping: Mapping[str, Term]) -> Term:
    if isinstance(term, Var):
        return mapping.get(term.name, term)
    if not term.args:
        return term
    return App(term.head, tuple(subst(a, mapping) for a in term.args))


def subst_goal(goal: Goal, mapping: Mapping[str, Term]) -> Goal:
    if isinstance(goal, EqGoal):
        return EqGoal(subst(goal.lhs, mapping), subst(goal.rhs, mapping))
    return AndGoal(subst_goal(goal.left, mapping), subst_goal(goal.right, mapping))


def format_term(term: Term) -> str:
    if isinstance(term, Var):
        return term.name
    if not term.args:
        return term.head
    return f"{term.head}({', '.join(format_term(a) for a in term.args)})"


def format_goal(goal: Goal) -> str:
    if isinstance(goal, EqGoal):
        return f"{format_term(goal.lhs)} = {format_term(goal.rhs)}"
    # Conjunction is right-associative; a left child that is itself a
    # conjunction needs parentheses to survive re-parsing.
    left = format_goal(goal.left)
    if isinstance(goal.left, AndGoal):
        left = f"({left})"
    return f"{left} ∧ {format_goal(goal.right)}"


def format_state(state: ProofState) -> str:
    n = len(state.sequents)
    if n == 0:
        return "no goals"
    lines = [f"⊢ {format_goal(s.goal)}" for s in state.sequents]
    if n == 1:
        return lines[0]
    return f"{n} goals\n" + "\n\n".join(lines)


def initial_state(goal: Goal) -> ProofState:
    """Proof state for a statement: one goal, binders = its free variables."""

    return ProofState((Sequent(goal, goal_free_vars(goal)),))
