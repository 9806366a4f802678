"""Byte n-gram hashing encoder.

A text embeds as the average of embedding-table rows selected by hashing its
UTF-8 byte n-grams (sizes 1-3 by default) into a fixed number of buckets
with 64-bit FNV-1a. The table is the model's only parameter. An empty text
embeds to the zero vector, and cosine against a zero vector is defined as 0.
"""

from __future__ import annotations

import base64
import json
from collections import Counter
from dataclasses import dataclass, field, fields
from pathlib import Path

import numpy as np

from ..errors import MiniLeanError

__all__ = [
    "RetrieverConfig",
    "Retriever",
    "new_retriever",
    "fnv1a64",
    "ngram_buckets",
    "embed_reps",
    "cosine",
    "save_retriever",
    "load_retriever",
    "PremiseIndex",
    "retrieve",
]

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_MASK = 0xFFFFFFFFFFFFFFFF

FORMAT_NAME = "minidojo-retriever"
FORMAT_VERSION = 1


def fnv1a64(data: bytes) -> int:
    h = _FNV_OFFSET
    for byte in data:
        h = ((h ^ byte) * _FNV_PRIME) & _MASK
    return h


@dataclass
class RetrieverConfig:
    embedding_dim: int = 64
    buckets: int = 4096
    ngram_sizes: tuple[int, ...] = (1, 2, 3)
    batch_states: int = 8
    negatives: int = 3
    infile_negatives: int = 1
    retrieve_count: int = 100
    warmup_steps: int = 2000
    total_steps: int = 4000
    lr_max: float = 0.1
    seed: int = 0

    def to_dict(self) -> dict:
        out = {f.name: getattr(self, f.name) for f in fields(self)}
        out["ngram_sizes"] = list(self.ngram_sizes)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "RetrieverConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise MiniLeanError(f"unknown retriever config keys: {sorted(unknown)}")
        kwargs = dict(data)
        if "ngram_sizes" in kwargs:
            kwargs["ngram_sizes"] = tuple(kwargs["ngram_sizes"])
        return cls(**kwargs)


def ngram_buckets(text: str, sizes: tuple[int, ...], buckets: int) -> tuple[np.ndarray, np.ndarray]:
    """Bucket index and occurrence count arrays for a text's byte n-grams."""

    data = text.encode("utf-8")
    counts: Counter[int] = Counter()
    for n in sizes:
        for i in range(len(data) - n + 1):
            counts[fnv1a64(data[i : i + n]) % buckets] += 1
    if not counts:
        return np.empty(0, dtype=np.int64), np.empty(0, dtype=np.float64)
    indices = np.array(sorted(counts), dtype=np.int64)
    weights = np.array([counts[i] for i in indices], dtype=np.float64)
    return indices, weights


def embed_reps(E: np.ndarray, reps: list[tuple[np.ndarray, np.ndarray]]) -> np.ndarray:
    """Stack averaged-row embeddings for precomputed bucket representations."""

    out = np.zeros((len(reps), E.shape[1]), dtype=np.float64)
    for row, (indices, weights) in enumerate(reps):
        if len(indices):
            out[row] = weights @ E[indices] / weights.sum()
    return out


def cosine(u: np.ndarray, v: np.ndarray) -> float:
    nu = float(np.linalg.norm(u))
    nv = float(np.linalg.norm(v))
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return float(np.dot(u, v) / (nu * nv))


class Retriever:
    def __init__(self, config: RetrieverConfig, E: np.ndarray):
        if E.shape != (config.buckets, config.embedding_dim):
            raise MiniLeanError(f"embedding table shape {E.shape} does not match config")
        self.config = config
        self.E = E
        self.log: dict = {}
        self._reps: dict[str, tuple[np.ndarray, np.ndarray]] = {}

    def rep(self, text: str) -> tuple[np.ndarray, np.ndarray]:
        cached = self._reps.get(text)
        if cached is None:
            cached = ngram_buckets(text, self.config.ngram_sizes, self.config.buckets)
            self._reps[text] = cached
        return cached

    def embed(self, text: str) -> np.ndarray:
        return embed_reps(self.E, [self.rep(text)])[0]


def new_retriever(config: RetrieverConfig) -> Retriever:
    rng = np.random.default_rng(config.seed)
    E = rng.standard_normal((config.buckets, config.embedding_dim)) * 0.1
    return Retriever(config, E)


def save_retriever(model: Retriever, path: str | Path) -> None:
    payload = {
        "format": FORMAT_NAME,
        "version": FORMAT_VERSION,
        "config": model.config.to_dict(),
        "dtype": "float64",
        "shape": list(model.E.shape),
        "data": base64.b64encode(np.ascontiguousarray(model.E, dtype=np.float64).tobytes()).decode(
            "ascii"
        ),
    }
    Path(path).write_text(json.dumps(payload), encoding="utf-8")


def load_retriever(path: str | Path) -> Retriever:
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    if payload.get("format") != FORMAT_NAME or payload.get("version") != FORMAT_VERSION:
        raise MiniLeanError(
            f"not a {FORMAT_NAME} v{FORMAT_VERSION} file: {payload.get('format')!r}"
            f" v{payload.get('version')!r}"
        )
    config = RetrieverConfig.from_dict(payload["config"])
    raw = base64.b64decode(payload["data"])
    E = np.frombuffer(raw, dtype=np.float64).reshape(tuple(payload["shape"])).copy()
    return Retriever(config, E)


class PremiseIndex:
    """Normalized embeddings for a set of premises, computed once so many
    retrieval calls against one model stay cheap."""

    def __init__(self, model: Retriever, codes: dict[str, str]):
        self.names = sorted(codes)
        matrix = embed_reps(model.E, [model.rep(codes[n]) for n in self.names])
        norms = np.linalg.norm(matrix, axis=1)
        nonzero = norms > 0
        matrix[nonzero] /= norms[nonzero][:, None]
        self.matrix = matrix
        self.position = {name: i for i, name in enumerate(self.names)}

    def scores(self, state_vec: np.ndarray) -> np.ndarray:
        norm = float(np.linalg.norm(state_vec))
        if norm == 0.0:
            return np.zeros(len(self.names), dtype=np.float64)
        return self.matrix @ (state_vec / norm)


def retrieve(
    model: Retriever,
    dataset,
    theorem: str,
    state_text: str,
    m: int | None = None,
    all_premises: bool = False,
    index: PremiseIndex | None = None,
) -> list[tuple[str, float]]:
    """Rank premises by cosine to the state, highest first, ties by name.
    Candidates are the theorem's accessible premises unless ``all_premises``
    asks for the whole dataset (the corresponding ablation)."""

    m = m if m is not None else model.config.retrieve_count
    if index is None:
        index = PremiseIndex(model, {name: p.code for name, p in dataset.premises.items()})
    if all_premises:
        candidates = list(dataset.premises)
    else:
        candidates = dataset.accessible(theorem)
    scores = index.scores(model.embed(state_text))
    ranked = sorted(
        ((name, float(scores[index.position[name]])) for name in candidates),
        key=lambda pair: (-pair[1], pair[0]),
    )
    return ranked[:m]
