"""First-order matching and single-step rewriting.

Matching is syntactic and first-order: pattern variables bind subterms
(consistently, so nonlinear patterns like mod(n, n) require equal arguments)
while subject variables behave as constants. Rewriting replaces the single
leftmost-outermost redex, scanning an equation's left side before its right
and a conjunction's left conjunct before the right one.
"""

from __future__ import annotations

from dataclasses import dataclass

from .terms import AndGoal, App, EqGoal, Goal, Term, Var, free_vars, subst

__all__ = ["Rule", "match_term", "rewrite_once", "rewrite_goal_once"]


@dataclass(frozen=True)
class Rule:
    """An oriented rewrite rule lhs -> rhs with its quantified variables."""

    lhs: Term
    rhs: Term
    vars: frozenset[str]

    @classmethod
    def from_equation(cls, lhs: Term, rhs: Term, reverse: bool = False) -> "Rule":
        variables = free_vars(lhs) | free_vars(rhs)
        if reverse:
            lhs, rhs = rhs, lhs
        return cls(lhs, rhs, variables)

    @property
    def applicable(self) -> bool:
        # A rule whose replacement mentions variables the pattern cannot bind
        # has no redexes (there is no way to instantiate the new term).
        return free_vars(self.rhs) <= free_vars(self.lhs)


def match_term(
    pattern: Term,
    subject: Term,
    pattern_vars: frozenset[str],
    bindings: dict[str, Term] | None = None,
) -> dict[str, Term] | None:
    """Match subject against pattern, binding pattern_vars. Returns the
    substitution or None. Subject variables only match themselves unless
    bound by a pattern variable."""

    if bindings is None:
        bindings = {}
    if isinstance(pattern, Var):
        if pattern.name in pattern_vars:
            bound = bindings.get(pattern.name)
            if bound is None:
                bindings[pattern.name] = subject
                return bindings
            return bindings if bound == subject else None
        return bindings if pattern == subject else None
    if not isinstance(subject, App):
        return None
    if pattern.head != subject.head or len(pattern.args) != len(subject.args):
        return None
    for p_arg, s_arg in zip(pattern.args, subject.args):
        if match_term(p_arg, s_arg, pattern_vars, bindings) is None:
            return None
    return bindings


def _rewrite_term(term: Term, rules: list[Rule]) -> Term | None:
    for rule in rules:
        sigma = match_term(rule.lhs, term, rule.vars)
        if sigma is not None:
            return subst(rule.rhs, sigma)
    if isinstance(term, App):
        for i, arg in enumerate(term.args):
            replaced = _rewrite_term(arg, rules)
            if replaced is not None:
                args = list(term.args)
                args[i] = replaced
                return App(term.head, tuple(args))
    return None


def rewrite_goal_once(goal: Goal, rules: list[Rule]) -> Goal | None:
    """Rewrite the leftmost-outermost redex of any rule, or None if there is
    no redex. At each position the rules are tried in order."""

    usable = [r for r in rules if r.applicable]
    if not usable:
        return None
    return _rewrite_goal(goal, usable)


def _rewrite_goal(goal: Goal, rules: list[Rule]) -> Goal | None:
    if isinstance(goal, EqGoal):
        replaced = _rewrite_term(goal.lhs, rules)
        if replaced is not None:
            return EqGoal(replaced, goal.rhs)
        replaced = _rewrite_term(goal.rhs, rules)
        if replaced is not None:
            return EqGoal(goal.lhs, replaced)
        return None
    replaced = _rewrite_goal(goal.left, rules)
    if replaced is not None:
        return AndGoal(replaced, goal.right)
    replaced = _rewrite_goal(goal.right, rules)
    if replaced is not None:
        return AndGoal(goal.left, replaced)
    return None


def rewrite_once(goal: Goal, equation: tuple[Term, Term], reverse: bool = False) -> Goal | None:
    """Single-rule form: orient the equation and rewrite once."""

    return rewrite_goal_once(goal, [Rule.from_equation(*equation, reverse=reverse)])
