"""Exception hierarchy shared across the package.

Every error raised by the kernel, corpus loader, splitter, or prover derives
from MiniLeanError so callers (CLI, gym server) can map failures to a single
machine-readable shape.
"""

from __future__ import annotations


class MiniLeanError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(MiniLeanError):
    """Source text violates the surface grammar. Carries 1-based line/col."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} (line {line}, col {col})")
        self.line = line
        self.col = col


class DuplicateNameError(MiniLeanError):
    """Two declarations share a full name."""


class ArityError(MiniLeanError):
    """A head symbol is used with inconsistent argument counts."""


class UnknownNameError(MiniLeanError):
    """A surface name resolves to no visible declaration."""


class AmbiguousNameError(MiniLeanError):
    """A surface name resolves to more than one declaration at one level."""

    def __init__(self, surface: str, candidates: list[str]):
        super().__init__(
            f"ambiguous name {surface!r}: candidates {', '.join(sorted(candidates))}"
        )
        self.candidates = sorted(candidates)


class TacticError(MiniLeanError):
    """A tactic does not apply to the current proof state."""


class RewriteBudgetError(TacticError):
    """A single tactic call exceeded its rewrite step budget."""


class MissingImportError(MiniLeanError):
    """An import line names a file that is not in the corpus."""


class ImportCycleError(MiniLeanError):
    """The import graph contains a cycle."""


class UnknownTheoremError(MiniLeanError):
    """A theorem name does not exist or is not a provable declaration."""


class ReplayError(MiniLeanError):
    """A recorded proof fails to replay.

    index is the 0-based position of the failing tactic; when a proof runs
    out of tactics with goals remaining, index equals the proof length.
    """

    def __init__(self, message: str, index: int, cause: Exception | None = None):
        super().__init__(f"{message} (tactic index {index})")
        self.index = index
        self.cause = cause


class SplitError(MiniLeanError):
    """A dataset split request cannot be satisfied."""


class EmptyDatasetError(MiniLeanError):
    """Training requested on a dataset with no usable examples."""


class InfeasibleSplitError(SplitError):
    """Quotas cannot be met while keeping the novel-premise invariant."""


class DojoError(MiniLeanError):
    """Misuse of the interaction API (for example an unknown state id)."""


class ProverError(MiniLeanError):
    """A tactic generator violated its contract."""


class ForgeError(MiniLeanError):
    """A synthetic-corpus request cannot be satisfied."""
