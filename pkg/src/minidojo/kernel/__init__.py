"""The proof kernel: terms, parsing, name resolution, rewriting, tactics."""

from .apply import ReplayStep, apply_tactic, check_proof, fresh_variable
from .decls import Decl, DeclKind
from .names import INSIDE_NAMESPACE, OPEN_ONLY, Env, resolve_name
from .parser import Node, ParsedFile, parse_file, parse_tactic, parse_term, slice_span, tokenize
from .rewrite import Rule, match_term, rewrite_goal_once, rewrite_once
from .tactics import Cases, Rfl, Rw, Split, Tactic, Unfold, format_tactic
from .terms import (
    ZERO,
    AndGoal,
    App,
    EqGoal,
    Goal,
    ProofState,
    Sequent,
    Term,
    Var,
    format_goal,
    format_state,
    format_term,
    free_vars,
    goal_free_vars,
    initial_state,
    subst,
    subst_goal,
    succ,
)

__all__ = [
    "App",
    "Var",
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
    "Rfl",
    "Split",
    "Cases",
    "Rw",
    "Unfold",
    "Tactic",
    "format_tactic",
    "Decl",
    "DeclKind",
    "Env",
    "resolve_name",
    "INSIDE_NAMESPACE",
    "OPEN_ONLY",
    "Rule",
    "match_term",
    "rewrite_once",
    "rewrite_goal_once",
    "apply_tactic",
    "check_proof",
    "ReplayStep",
    "fresh_variable",
    "parse_file",
    "parse_term",
    "parse_tactic",
    "tokenize",
    "slice_span",
    "ParsedFile",
    "Node",
]
