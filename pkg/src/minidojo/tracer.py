"""Proof tracing and dataset export.

Tracing replays a proof and records, for every tactic, the formatted states
before and after plus an annotated form of the tactic text in which premise
references are wrapped in ``<a>...</a>`` tags, with provenance (full name,
defining file, definition position) alongside. Exports are line-oriented
JSON for the premise corpus and JSON (array or lines) for theorem records;
both use a fixed key order so output is byte-stable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .corpus import Corpus, Premise
from .kernel import check_proof, format_state, format_tactic

__all__ = [
    "Provenance",
    "TracedTactic",
    "TracedTheorem",
    "annotate_tactic",
    "trace_theorem",
    "trace_corpus",
    "export_corpus_jsonl",
    "export_theorems",
    "traced_to_record",
    "record_to_traced",
    "DEFAULT_URL",
    "DEFAULT_COMMIT",
]

DEFAULT_URL = "local"
DEFAULT_COMMIT = "0" * 40


@dataclass(frozen=True)
class Provenance:
    full_name: str
    def_path: str
    def_pos: tuple[int, int]


@dataclass(frozen=True)
class TracedTactic:
    tactic: str
    annotated_tactic: tuple[str, tuple[Provenance, ...]]
    state_before: str
    state_after: str


@dataclass(frozen=True)
class TracedTheorem:
    url: str
    commit: str
    file_path: str
    full_name: str
    start: tuple[int, int]
    end: tuple[int, int]
    traced_tactics: tuple[TracedTactic, ...]


def annotate_tactic(
    text: str, references: Sequence[tuple[tuple[int, int], Premise]]
) -> tuple[str, tuple[Provenance, ...]]:
    """Wrap each referenced span of the tactic text in ``<a>`` tags.

    ``references`` pairs half-open character spans with the premises they
    mention; spans must be disjoint. Stripping the tags from the annotated
    text recovers the input exactly.
    """

    ordered = sorted(references, key=lambda ref: ref[0])
    pieces: list[str] = []
    provenance: list[Provenance] = []
    cursor = 0
    for (start, end), premise in ordered:
        if start < cursor or end > len(text) or start >= end:
            raise ValueError(f"invalid or overlapping span ({start}, {end}) in {text!r}")
        pieces.append(text[cursor:start])
        pieces.append(f"<a>{text[start:end]}</a>")
        provenance.append(Provenance(premise.full_name, premise.path, premise.start))
        cursor = end
    pieces.append(text[cursor:])
    return "".join(pieces), tuple(provenance)


def trace_theorem(
    corpus: Corpus,
    full_name: str,
    url: str = DEFAULT_URL,
    commit: str = DEFAULT_COMMIT,
) -> TracedTheorem:
    decl = corpus.theorem(full_name)
    env = corpus.env_for(full_name)
    steps = check_proof(decl, env)
    traced: list[TracedTactic] = []
    for step in steps:
        text = format_tactic(step.tactic)
        target = getattr(step.tactic, "target", None)
        refs: list[tuple[tuple[int, int], Premise]] = []
        if target is not None:
            resolved = env.resolve(target)
            # The target is always the final token of the formatted tactic.
            start = len(text) - len(target)
            refs.append(((start, len(text)), corpus.premises[resolved.full_name]))
        annotated, provenance = annotate_tactic(text, refs)
        traced.append(
            TracedTactic(
                tactic=text,
                annotated_tactic=(annotated, provenance),
                state_before=format_state(step.before),
                state_after=format_state(step.after),
            )
        )
    return TracedTheorem(
        url=url,
        commit=commit,
        file_path=decl.path,
        full_name=decl.full_name,
        start=decl.start,
        end=decl.end,
        traced_tactics=tuple(traced),
    )


def trace_corpus(
    corpus: Corpus, url: str = DEFAULT_URL, commit: str = DEFAULT_COMMIT
) -> list[TracedTheorem]:
    """Trace every provable declaration, in topological then span order."""

    return [trace_theorem(corpus, d.full_name, url, commit) for d in corpus.theorems()]


def export_corpus_jsonl(corpus: Corpus, out: str | Path) -> None:
    """One line per file in topological order: path, direct imports, premises."""

    lines = []
    for path in corpus.topo:
        f = corpus.files[path]
        record = {
            "path": path,
            "imports": list(f.imports),
            "premises": [
                {
                    "full_name": p.full_name,
                    "code": p.code,
                    "start": list(p.start),
                    "end": list(p.end),
                    "kind": p.kind,
                }
                for p in corpus.premises_of(path)
            ],
        }
        lines.append(json.dumps(record, ensure_ascii=False))
    Path(out).write_text("\n".join(lines) + "\n", encoding="utf-8")


def traced_to_record(traced: TracedTheorem) -> dict:
    return {
        "url": traced.url,
        "commit": traced.commit,
        "file_path": traced.file_path,
        "full_name": traced.full_name,
        "start": list(traced.start),
        "end": list(traced.end),
        "traced_tactics": [
            {
                "tactic": t.tactic,
                "annotated_tactic": [
                    t.annotated_tactic[0],
                    [
                        {
                            "full_name": p.full_name,
                            "def_path": p.def_path,
                            "def_pos": list(p.def_pos),
                        }
                        for p in t.annotated_tactic[1]
                    ],
                ],
                "state_before": t.state_before,
                "state_after": t.state_after,
            }
            for t in traced.traced_tactics
        ],
    }


def record_to_traced(record: dict) -> TracedTheorem:
    return TracedTheorem(
        url=record["url"],
        commit=record["commit"],
        file_path=record["file_path"],
        full_name=record["full_name"],
        start=tuple(record["start"]),
        end=tuple(record["end"]),
        traced_tactics=tuple(
            TracedTactic(
                tactic=t["tactic"],
                annotated_tactic=(
                    t["annotated_tactic"][0],
                    tuple(
                        Provenance(p["full_name"], p["def_path"], tuple(p["def_pos"]))
                        for p in t["annotated_tactic"][1]
                    ),
                ),
                state_before=t["state_before"],
                state_after=t["state_after"],
            )
            for t in record["traced_tactics"]
        ),
    )


def export_theorems(traced: Iterable[TracedTheorem], out: str | Path, jsonl: bool = False) -> None:
    records = [traced_to_record(t) for t in traced]
    path = Path(out)
    if jsonl:
        path.write_text(
            "".join(json.dumps(r, ensure_ascii=False) + "\n" for r in records), encoding="utf-8"
        )
    else:
        path.write_text(json.dumps(records, ensure_ascii=False, indent=2) + "\n", encoding="utf-8")


def load_theorem_records(path: str | Path) -> list[dict]:
    """Read either export format back into plain records."""

    text = Path(path).read_text(encoding="utf-8")
    stripped = text.lstrip()
    if stripped.startswith("["):
        return json.loads(text)
    return [json.loads(line) for line in text.splitlines() if line.strip()]
