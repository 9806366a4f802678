"""Okapi BM25 ranking baseline over premise source text."""

from __future__ import annotations

import math
import re
from collections import Counter

from .data import RetrievalDataset

__all__ = ["tokenize", "Bm25Index", "bm25_rank"]

_TOKEN = re.compile(r"[a-z]+|[0-9]+")


def tokenize(text: str) -> list[str]:
    return _TOKEN.findall(text.lower())


class Bm25Index:
    def __init__(self, docs: dict[str, str], k1: float = 1.2, b: float = 0.75):
        self.k1 = k1
        self.b = b
        self.names = sorted(docs)
        self.term_counts = {name: Counter(tokenize(docs[name])) for name in self.names}
        self.lengths = {name: sum(c.values()) for name, c in self.term_counts.items()}
        n_docs = len(self.names)
        self.avg_length = sum(self.lengths.values()) / n_docs if n_docs else 0.0
        df: Counter[str] = Counter()
        for counts in self.term_counts.values():
            df.update(counts.keys())
        self.idf = {
            term: math.log((n_docs - count + 0.5) / (count + 0.5) + 1.0)
            for term, count in df.items()
        }

    def score(self, query_tokens: list[str], name: str) -> float:
        counts = self.term_counts[name]
        length = self.lengths[name]
        norm = self.k1 * (1.0 - self.b + self.b * length / self.avg_length) if self.avg_length else 0.0
        total = 0.0
        for term in query_tokens:
            tf = counts.get(term, 0)
            if tf:
                total += self.idf[term] * tf * (self.k1 + 1.0) / (tf + norm)
        return total

    def rank(self, query: str, m: int | None = None) -> list[tuple[str, float]]:
        tokens = tokenize(query)
        ranked = sorted(
            ((name, self.score(tokens, name)) for name in self.names),
            key=lambda pair: (-pair[1], pair[0]),
        )
        return ranked if m is None else ranked[:m]


def bm25_rank(
    dataset: RetrievalDataset,
    theorem: str,
    state_text: str,
    m: int = 100,
    all_premises: bool = False,
) -> list[tuple[str, float]]:
    """Rank a theorem's accessible premises against a goal state. The index
    is rebuilt per candidate set, so document statistics match exactly what
    the retriever was allowed to see."""

    if all_premises:
        candidates = list(dataset.premises)
    else:
        candidates = dataset.accessible(theorem)
    index = Bm25Index({name: dataset.premises[name].code for name in candidates})
    return index.rank(state_text, m)
