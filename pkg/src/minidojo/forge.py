"""Seeded synthetic-corpus generator.

Builds a tree of source files where every theorem is provable by
construction: statements embed rewrite redexes for specific definitions
and their proofs are the matching one- or two-step ``rw`` chains (the last
rewrite closes the goal), with every tenth theorem a premise-free ``rfl``.
Each "positive" definition is accompanied by near-duplicate definitions in
the same file that differ from it by a single symbol, giving retrieval
training its hard in-file distractors. The import graph is a random DAG
(files only import earlier files). Output is deterministic per spec.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, fields
from pathlib import Path

from .errors import ForgeError

__all__ = ["ForgeSpec", "forge_corpus", "forge_to_dir"]


@dataclass
class ForgeSpec:
    seed: int = 1
    n_files: int = 10
    n_premises: int = 80
    n_theorems: int = 60
    # Probability that a theorem's statement is built from its required
    # premise's own symbols (beyond the redex itself), rather than from a
    # shared low-signal pool.
    lexical_overlap: float = 0.9
    infile_confusables: int = 2

    def validate(self) -> None:
        if self.n_files < 1:
            raise ForgeError("need at least one file")
        if min(self.n_premises, self.n_theorems, self.infile_confusables, self.seed) < 0:
            raise ForgeError("counts and seed must be nonnegative")
        if not 0.0 <= self.lexical_overlap <= 1.0:
            raise ForgeError("lexical_overlap must be a probability")
        group = 1 + self.infile_confusables
        if 0 < self.n_premises < group:
            raise ForgeError(
                f"{self.n_premises} premises cannot give one positive "
                f"{self.infile_confusables} confusables"
            )

    def to_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    @classmethod
    def from_dict(cls, data: dict) -> "ForgeSpec":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ForgeError(f"unknown forge spec keys: {sorted(unknown)}")
        return cls(**data)


_NOISE_SYMBOLS = [f"w{i}" for i in range(10)]


@dataclass
class _Positive:
    index: int
    file: int
    confusables: int

    @property
    def op(self) -> str:
        return f"p{self.index:03d}"

    @property
    def key(self) -> str:
        return f"k{self.index:03d}"


def _noise_term(rng: random.Random) -> str:
    depth = rng.randint(1, 2)
    term = "zero"
    for _ in range(depth):
        term = f"{rng.choice(_NOISE_SYMBOLS)}({term})"
    return term


def forge_corpus(spec: ForgeSpec) -> dict[str, str]:
    """Source texts keyed by file path, ready for corpus loading."""

    spec.validate()
    rng = random.Random(spec.seed)
    n = spec.n_files

    # Import DAG: every file after the first imports 1-3 earlier files.
    imports: list[list[int]] = [[]]
    for i in range(1, n):
        count = rng.randint(1, min(i, 3))
        imports.append(sorted(rng.sample(range(i), count)))

    # Positives round-robin across files; leftover premise budget becomes
    # extra confusables so every positive keeps its full distractor set.
    group = 1 + spec.infile_confusables
    n_positives = spec.n_premises // group
    positives = [_Positive(k, k % n, spec.infile_confusables) for k in range(n_positives)]
    for k in range(spec.n_premises - n_positives * group):
        positives[k % n_positives].confusables += 1

    closure: list[set[int]] = []
    for i in range(n):
        seen: set[int] = set()
        stack = list(imports[i])
        while stack:
            j = stack.pop()
            if j not in seen:
                seen.add(j)
                stack.extend(imports[j])
        closure.append(seen)
    reachable = [
        [p for p in positives if p.file == i or p.file in closure[i]] for i in range(n)
    ]
    eligible = [i for i in range(n) if reachable[i]]

    theorems: list[list[str]] = [[] for _ in range(n)]
    for j in range(spec.n_theorems):
        kind = rng.choice(("lemma", "theorem"))
        name = f"t{j:03d}"
        if j % 10 == 0 or not eligible:
            host = rng.randrange(n)
            theorems[host].append(f"{kind} {name} : x = x := begin rfl end")
            continue
        host = rng.choice(eligible)
        chain = rng.choices(reachable[host], k=rng.randint(1, 2))
        inner = chain[0]
        if rng.random() < spec.lexical_overlap:
            body = f"{inner.key}(zero)"
        else:
            body = _noise_term(rng)
        lhs = body
        proof: list[str] = []
        for p in chain:
            lhs = f"{p.op}({lhs}, {p.key}(zero))"
            ref = p.op if p.file == host else f"f{p.file:02d}.{p.op}"
            proof.append(f"rw {ref}")
        statement = f"{lhs} = {body}"
        theorems[host].append(f"{kind} {name} : {statement} := begin {', '.join(proof)} end")

    sources: dict[str, str] = {}
    for i in range(n):
        lines = [f"import f{m:02d}" for m in imports[i]]
        if lines:
            lines.append("")
        lines += [f"namespace f{i:02d}", ""]
        for p in positives:
            if p.file != i:
                continue
            lines.append(f"def {p.op} : {p.op}(x, {p.key}(zero)) = x")
            for c in range(p.confusables):
                alias = f"{p.op}_c{c + 1}"
                lines.append(f"def {alias} : {alias}(x, {p.key}(zero)) = x")
        if theorems[i]:
            lines.append("")
            lines.extend(theorems[i])
        lines += ["", f"end f{i:02d}", ""]
        sources[f"f{i:02d}.mlean"] = "\n".join(lines)
    return sources


def forge_to_dir(spec: ForgeSpec, out_dir: str | Path) -> list[Path]:
    root = Path(out_dir)
    root.mkdir(parents=True, exist_ok=True)
    written = []
    for path, source in sorted(forge_corpus(spec).items()):
        target = root / path
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(source, encoding="utf-8")
        written.append(target)
    return written
