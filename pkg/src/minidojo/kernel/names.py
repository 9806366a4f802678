"""Name resolution for tactic targets.

Default mode mirrors working inside a namespace: a surface name is tried with
progressively shorter prefixes of the current namespace path (innermost
first), then at the root. The first level with a match wins, so a name
defined in the enclosing namespace always shadows a root-level name.

``open_only`` mode reproduces a degraded environment that merely opens
namespaces instead of entering them: every declaration whose short name
matches the surface name is a candidate at a single level, so two
declarations named ``read`` in different namespaces become ambiguous instead
of resolving to the enclosing one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from ..errors import AmbiguousNameError, UnknownNameError
from .decls import Decl

__all__ = ["INSIDE_NAMESPACE", "OPEN_ONLY", "Env", "resolve_name"]

INSIDE_NAMESPACE = "inside_namespace"
OPEN_ONLY = "open_only"


@dataclass
class Env:
    """Resolution context for replaying one proof: the visible declarations
    (its accessible premises), the namespace the proof lives in, and the
    resolution mode."""

    decls: Mapping[str, Decl]
    namespace_path: tuple[str, ...] = ()
    mode: str = INSIDE_NAMESPACE
    rewrite_budget: int = 100

    def resolve(self, surface: str) -> Decl:
        return resolve_name(surface, self.namespace_path, self.decls, self.mode)


def resolve_name(
    surface: str,
    namespace_path: tuple[str, ...],
    decls: Mapping[str, Decl],
    mode: str = INSIDE_NAMESPACE,
) -> Decl:
    if mode == INSIDE_NAMESPACE:
        for depth in range(len(namespace_path), 0, -1):
            candidate = ".".join((*namespace_path[:depth], surface))
            if candidate in decls:
                return decls[candidate]
        if surface in decls:
            return decls[surface]
        raise UnknownNameError(f"unknown name {surface!r} (namespace {'.'.join(namespace_path) or '<root>'})")
    if mode == OPEN_ONLY:
        if "." in surface:
            # Qualified names bypass opening and must match exactly.
            if surface in decls:
                return decls[surface]
            raise UnknownNameError(f"unknown name {surface!r}")
        matches = sorted(
            full for full in decls if full == surface or full.rsplit(".", 1)[-1] == surface
        )
        if not matches:
            raise UnknownNameError(f"unknown name {surface!r}")
        if len(matches) > 1:
            raise AmbiguousNameError(surface, matches)
        return decls[matches[0]]
    raise ValueError(f"unknown resolution mode {mode!r}")
