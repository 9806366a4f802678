"""Tactic candidate generation for proof search.

Three generators share one interface, ``candidates(theorem, proof_state)``
returning tactics with log probabilities that sum to at most 1 in
probability space:

* template: enumerates every tactic the language admits at the current
  first goal (closing tactics, case splits on binders, rewrites and
  unfolds over the top retrieved premises), scores each as a weighted
  retrieval score plus a tactic-type prior, and normalizes by softmax;
* oracle: replays recorded proofs, for upper-bound and harness testing;
* external: defers to a child process speaking line-delimited JSON.
"""

from __future__ import annotations

import json
import math
import shlex
import subprocess
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from ..errors import ProverError
from ..kernel import ProofState, format_state
from ..retrieval import PremiseIndex, RetrievalDataset, Retriever, retrieve

__all__ = [
    "TACTIC_TYPES",
    "tactic_type",
    "TemplatePriors",
    "ScoredTactic",
    "GeneratorSpec",
    "TemplateGenerator",
    "OracleGenerator",
    "ExternalGenerator",
    "make_generator",
]

TACTIC_TYPES = ("rfl", "split", "cases", "rw", "rw_rev", "unfold")


def tactic_type(text: str) -> str:
    stripped = text.strip()
    if stripped == "rfl":
        return "rfl"
    if stripped == "split":
        return "split"
    if stripped.startswith("cases"):
        return "cases"
    if stripped.startswith("rw ←") or stripped.startswith("rw <-"):
        return "rw_rev"
    if stripped.startswith("rw"):
        return "rw"
    if stripped.startswith("unfold"):
        return "unfold"
    raise ProverError(f"unclassifiable tactic {text!r}")


@dataclass
class TemplatePriors:
    """Add-one smoothed frequencies of tactic types in training proofs."""

    counts: dict[str, int]

    @classmethod
    def uniform(cls) -> "TemplatePriors":
        return cls({t: 0 for t in TACTIC_TYPES})

    @classmethod
    def from_tactics(cls, tactics: Iterable[str]) -> "TemplatePriors":
        counts = {t: 0 for t in TACTIC_TYPES}
        for text in tactics:
            counts[tactic_type(text)] += 1
        return cls(counts)

    @classmethod
    def from_dataset(
        cls, dataset: RetrievalDataset, theorems: Iterable[str] | None = None
    ) -> "TemplatePriors":
        return cls.from_tactics(e.tactic for e in dataset.examples(theorems))

    def log_prior(self, ttype: str) -> float:
        total = sum(self.counts.values())
        return math.log((self.counts[ttype] + 1) / (total + len(TACTIC_TYPES)))


@dataclass(frozen=True)
class ScoredTactic:
    tactic: str
    log_prob: float


@dataclass
class GeneratorSpec:
    kind: str = "template"  # template | oracle | external
    beam: int = 64
    use_retrieval: bool = True
    w_cos: float = 1.0
    top_k_premises: int = 10
    seed: int = 0
    external_cmd: str | None = None


def _log_softmax(scores: np.ndarray) -> np.ndarray:
    top = scores.max()
    return scores - (top + math.log(np.exp(scores - top).sum()))


class TemplateGenerator:
    def __init__(
        self,
        dataset: RetrievalDataset,
        spec: GeneratorSpec,
        model: Retriever | None = None,
        priors: TemplatePriors | None = None,
    ):
        if spec.use_retrieval and model is None:
            raise ProverError("retrieval-guided generation needs a retriever model")
        self.dataset = dataset
        self.spec = spec
        self.model = model
        self.priors = priors if priors is not None else TemplatePriors.from_dataset(dataset)
        self.index = (
            PremiseIndex(model, {n: p.code for n, p in dataset.premises.items()})
            if model is not None and spec.use_retrieval
            else None
        )
        self.rng = np.random.default_rng(spec.seed)

    def _premises(self, theorem: str, state_text: str) -> list[tuple[str, float]]:
        if self.spec.use_retrieval:
            return retrieve(
                self.model,
                self.dataset,
                theorem,
                state_text,
                m=self.spec.top_k_premises,
                index=self.index,
            )
        # Ablation without retrieval: a random accessible sample, all flat.
        accessible = self.dataset.accessible(theorem)
        k = min(self.spec.top_k_premises, len(accessible))
        if k == 0:
            return []
        picked = self.rng.choice(len(accessible), size=k, replace=False)
        return [(accessible[int(i)], 0.0) for i in picked]

    def candidates(self, theorem: str, proof_state: ProofState | None) -> list[ScoredTactic]:
        if proof_state is None or proof_state.finished:
            return []
        first = proof_state.sequents[0]
        state_text = format_state(proof_state)
        raw: list[tuple[str, float]] = [
            ("rfl", self.priors.log_prior("rfl")),
            ("split", self.priors.log_prior("split")),
        ]
        for var in sorted(first.binders):
            raw.append((f"cases {var}", self.priors.log_prior("cases")))
        for name, score in self._premises(theorem, state_text):
            weighted = self.spec.w_cos * score
            raw.append((f"rw {name}", weighted + self.priors.log_prior("rw")))
            raw.append((f"rw ← {name}", weighted + self.priors.log_prior("rw_rev")))
            if self.dataset.premises[name].kind == "definition":
                raw.append((f"unfold {name}", weighted + self.priors.log_prior("unfold")))
        log_probs = _log_softmax(np.array([s for _, s in raw], dtype=np.float64))
        out = [ScoredTactic(text, float(lp)) for (text, _), lp in zip(raw, log_probs)]
        out.sort(key=lambda c: (-c.log_prob, c.tactic))
        return out[: self.spec.beam]


_ORACLE_HIT = math.log(0.9)
_ORACLE_FILLER = math.log(0.05)


class OracleGenerator:
    """Looks the state up in recorded proofs; the recorded tactic gets
    probability 0.9 and two cheap closers share a little mass so the search
    has something to reject."""

    def __init__(self, table: dict[tuple[str, str], str]):
        self.table = table

    @classmethod
    def from_dataset(
        cls, dataset: RetrievalDataset, theorems: Iterable[str] | None = None
    ) -> "OracleGenerator":
        table: dict[tuple[str, str], str] = {}
        for example in dataset.examples(theorems):
            table.setdefault((example.theorem, example.state), example.tactic)
        return cls(table)

    def candidates(self, theorem: str, proof_state: ProofState | None) -> list[ScoredTactic]:
        if proof_state is None or proof_state.finished:
            return []
        recorded = self.table.get((theorem, format_state(proof_state)))
        fillers = [t for t in ("rfl", "split") if t != recorded]
        if recorded is None:
            return [ScoredTactic(f, math.log(0.45)) for f in fillers]
        out = [ScoredTactic(recorded, _ORACLE_HIT)]
        out.extend(ScoredTactic(f, _ORACLE_FILLER) for f in fillers)
        return out


class ExternalGenerator:
    """Bridges to a child process. Each request is one JSON line with the
    formatted state and scored premises; the reply is one JSON line with
    tactics and log probabilities (probabilities must sum to at most 1)."""

    def __init__(
        self,
        cmd: str,
        dataset: RetrievalDataset,
        spec: GeneratorSpec,
        model: Retriever | None = None,
    ):
        if not cmd:
            raise ProverError("external generator needs a command")
        self.dataset = dataset
        self.spec = spec
        self.model = model
        self.index = (
            PremiseIndex(model, {n: p.code for n, p in dataset.premises.items()})
            if model is not None and spec.use_retrieval
            else None
        )
        self.proc = subprocess.Popen(
            shlex.split(cmd),
            stdin=subprocess.PIPE,
            stdout=subprocess.PIPE,
            text=True,
            bufsize=1,
        )

    def _premises(self, theorem: str, state_text: str) -> list[dict]:
        if self.model is not None and self.spec.use_retrieval:
            ranked = retrieve(
                self.model,
                self.dataset,
                theorem,
                state_text,
                m=self.spec.top_k_premises,
                index=self.index,
            )
        else:
            ranked = [
                (name, 0.0)
                for name in self.dataset.accessible(theorem)[: self.spec.top_k_premises]
            ]
        return [
            {"full_name": name, "code": self.dataset.premises[name].code, "score": score}
            for name, score in ranked
        ]

    def candidates(self, theorem: str, proof_state: ProofState | None) -> list[ScoredTactic]:
        if proof_state is None or proof_state.finished:
            return []
        state_text = format_state(proof_state)
        request = {"state": state_text, "premises": self._premises(theorem, state_text)}
        try:
            self.proc.stdin.write(json.dumps(request, ensure_ascii=False) + "\n")
            self.proc.stdin.flush()
            line = self.proc.stdout.readline()
        except (BrokenPipeError, OSError) as exc:
            raise ProverError(f"external generator pipe failed: {exc}") from exc
        if not line:
            raise ProverError("external generator closed its output")
        return _parse_external_reply(line, self.spec.beam)

    def close(self) -> None:
        if self.proc.poll() is None:
            self.proc.stdin.close()
            self.proc.wait(timeout=10)

    def __enter__(self) -> "ExternalGenerator":
        return self

    def __exit__(self, *exc_info) -> None:
        self.close()


def _parse_external_reply(line: str, beam: int) -> list[ScoredTactic]:
    try:
        reply = json.loads(line)
    except json.JSONDecodeError as exc:
        raise ProverError(f"external generator sent malformed JSON: {exc}") from exc
    if not isinstance(reply, dict) or not isinstance(reply.get("tactics"), list):
        raise ProverError("external generator reply must be an object with a 'tactics' list")
    out: list[ScoredTactic] = []
    mass = 0.0
    for item in reply["tactics"]:
        if not isinstance(item, dict):
            raise ProverError("each tactic entry must be an object")
        text = item.get("tactic")
        log_prob = item.get("log_prob")
        if not isinstance(text, str) or not isinstance(log_prob, (int, float)):
            raise ProverError("tactic entries need a string 'tactic' and numeric 'log_prob'")
        log_prob = float(log_prob)
        if not math.isfinite(log_prob):
            raise ProverError(f"non-finite log probability for {text!r}")
        mass += math.exp(log_prob)
        out.append(ScoredTactic(text, log_prob))
    if mass > 1.0 + 1e-9:
        raise ProverError(f"tactic probabilities sum to {mass:.6f} > 1")
    out.sort(key=lambda c: (-c.log_prob, c.tactic))
    return out[:beam]


def make_generator(
    dataset: RetrievalDataset,
    spec: GeneratorSpec,
    model: Retriever | None = None,
    priors: TemplatePriors | None = None,
    train_theorems: Iterable[str] | None = None,
):
    if spec.kind == "template":
        if priors is None:
            priors = TemplatePriors.from_dataset(dataset, train_theorems)
        return TemplateGenerator(dataset, spec, model, priors)
    if spec.kind == "oracle":
        return OracleGenerator.from_dataset(dataset)
    if spec.kind == "external":
        return ExternalGenerator(spec.external_cmd or "", dataset, spec, model)
    raise ProverError(f"unknown generator kind {spec.kind!r}")
