"""Declarations: definitions, lemmas, and theorems."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .tactics import Tactic
from .terms import EqGoal, Term

__all__ = ["DeclKind", "Decl"]


class DeclKind(str, Enum):
    DEFINITION = "definition"
    LEMMA = "lemma"
    THEOREM = "theorem"


@dataclass(frozen=True)
class Decl:
    """One named declaration.

    Definitions carry one or more oriented equations and no proof; lemmas and
    theorems carry exactly one equation (their statement) and a tactic proof.
    start/end are 1-based (line, col) with the end column inclusive, and
    delimit the declaration's verbatim source text within ``path``.
    """

    kind: DeclKind
    short_name: str
    namespace_path: tuple[str, ...]
    full_name: str
    equations: tuple[tuple[Term, Term], ...]
    proof: tuple[Tactic, ...]
    start: tuple[int, int]
    end: tuple[int, int]
    path: str

    @property
    def provable(self) -> bool:
        return self.kind in (DeclKind.LEMMA, DeclKind.THEOREM)

    def statement(self) -> EqGoal:
        if not self.provable:
            raise ValueError(f"{self.full_name} is a definition, not a statement")
        lhs, rhs = self.equations[0]
        return EqGoal(lhs, rhs)
