"""Tactic syntax.

The tactic set is fixed: rfl, rw (forward or reversed), unfold, cases, split.
Target names are kept as written in the source (possibly dot-qualified);
resolution against a declaration table happens at application time.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

__all__ = ["Rfl", "Split", "Cases", "Rw", "Unfold", "Tactic", "format_tactic"]


@dataclass(frozen=True, slots=True)
class Rfl:
    pass


@dataclass(frozen=True, slots=True)
class Split:
    pass


@dataclass(frozen=True, slots=True)
class Cases:
    var: str


@dataclass(frozen=True, slots=True)
class Rw:
    target: str
    reverse: bool = False


@dataclass(frozen=True, slots=True)
class Unfold:
    target: str


Tactic = Union[Rfl, Split, Cases, Rw, Unfold]


def format_tactic(tactic: Tactic) -> str:
    if isinstance(tactic, Rfl):
        return "rfl"
    if isinstance(tactic, Split):
        return "split"
    if isinstance(tactic, Cases):
        return f"cases {tactic.var}"
    if isinstance(tactic, Rw):
        return f"rw ← {tactic.target}" if tactic.reverse else f"rw {tactic.target}"
    return f"unfold {tactic.target}"
