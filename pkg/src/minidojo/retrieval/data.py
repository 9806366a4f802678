"""Training-data view over traced theorems.

Each tactic step becomes one example: the goal state before the step plus
the premises the step's tactic referenced. The view also keeps, for every
theorem, the list of premises accessible at its position, which is the
candidate set both for negative sampling and for retrieval at eval time.

A dataset can be built straight from an in-memory corpus or from the two
exported artifacts (the premise-corpus JSONL and a theorems file), so
downstream tools never need the original sources.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from ..corpus import Corpus, Premise, accessible_names
from ..errors import UnknownTheoremError
from ..tracer import TracedTheorem, load_theorem_records, record_to_traced, trace_corpus

__all__ = ["StateExample", "RetrievalDataset"]


@dataclass(frozen=True)
class StateExample:
    theorem: str
    file_path: str
    state: str
    tactic: str
    premises: tuple[str, ...]  # premises the tactic referenced


class RetrievalDataset:
    def __init__(
        self,
        premises: dict[str, Premise],
        accessible: dict[str, list[str]],
        examples: list[StateExample],
    ):
        self.premises = premises
        self._accessible = accessible
        self._examples = examples

    @property
    def theorems(self) -> list[str]:
        return list(self._accessible)

    def accessible(self, theorem: str) -> list[str]:
        if theorem not in self._accessible:
            raise UnknownTheoremError(f"no traced theorem named {theorem!r}")
        return list(self._accessible[theorem])

    def examples(self, theorems: Iterable[str] | None = None) -> list[StateExample]:
        if theorems is None:
            return list(self._examples)
        wanted = set(theorems)
        return [e for e in self._examples if e.theorem in wanted]

    def train_examples(self, theorems: Iterable[str] | None = None) -> list[StateExample]:
        """Examples usable as supervision: at least one referenced premise."""

        return [e for e in self.examples(theorems) if e.premises]

    @classmethod
    def from_corpus(
        cls, corpus: Corpus, traced: Sequence[TracedTheorem] | None = None
    ) -> "RetrievalDataset":
        if traced is None:
            traced = trace_corpus(corpus)
        premises_by_file = {
            path: [(d.full_name, d.start, d.end) for d in f.decls]
            for path, f in corpus.files.items()
        }
        imports = {path: f.imports for path, f in corpus.files.items()}
        return _assemble(dict(corpus.premises), premises_by_file, imports, corpus.topo, traced)

    @classmethod
    def from_files(cls, corpus_path: str | Path, theorems_path: str | Path) -> "RetrievalDataset":
        premises: dict[str, Premise] = {}
        premises_by_file: dict[str, list[tuple[str, tuple[int, int], tuple[int, int]]]] = {}
        imports: dict[str, list[str]] = {}
        topo: list[str] = []
        for line in Path(corpus_path).read_text(encoding="utf-8").splitlines():
            if not line.strip():
                continue
            record = json.loads(line)
            path = record["path"]
            topo.append(path)
            imports[path] = list(record["imports"])
            rows: list[tuple[str, tuple[int, int], tuple[int, int]]] = []
            for p in record["premises"]:
                prem = Premise(
                    full_name=p["full_name"],
                    path=path,
                    start=tuple(p["start"]),
                    end=tuple(p["end"]),
                    kind=p["kind"],
                    code=p["code"],
                )
                premises[prem.full_name] = prem
                rows.append((prem.full_name, prem.start, prem.end))
            premises_by_file[path] = rows
        traced = [record_to_traced(r) for r in load_theorem_records(theorems_path)]
        return _assemble(premises, premises_by_file, imports, topo, traced)


def _assemble(
    premises: dict[str, Premise],
    premises_by_file: Mapping[str, Sequence[tuple[str, tuple[int, int], tuple[int, int]]]],
    imports: Mapping[str, Sequence[str]],
    topo: Sequence[str],
    traced: Sequence[TracedTheorem],
) -> RetrievalDataset:
    accessible: dict[str, list[str]] = {}
    examples: list[StateExample] = []
    for t in traced:
        acc = accessible_names(imports, premises_by_file, topo, t.full_name, t.file_path, t.start)
        accessible[t.full_name] = acc
        acc_set = set(acc)
        for step in t.traced_tactics:
            used = tuple(
                dict.fromkeys(
                    p.full_name for p in step.annotated_tactic[1] if p.full_name in acc_set
                )
            )
            examples.append(
                StateExample(t.full_name, t.file_path, step.state_before, step.tactic, used)
            )
    return RetrievalDataset(premises, accessible, examples)
