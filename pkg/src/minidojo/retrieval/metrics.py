"""Ranking quality metrics: recall at k and mean reciprocal rank."""

from __future__ import annotations

import math
from typing import Callable, Iterable, Sequence

from ..errors import EmptyDatasetError
from .data import RetrievalDataset

__all__ = ["recall_at", "reciprocal_rank", "expected_uniform_mrr", "eval_retrieval"]


def recall_at(ranked: Sequence[str], relevant: set[str], k: int) -> float:
    return len(set(ranked[:k]) & relevant) / len(relevant)


def reciprocal_rank(ranked: Sequence[str], relevant: set[str]) -> float:
    for position, name in enumerate(ranked, start=1):
        if name in relevant:
            return 1.0 / position
    return 0.0


def expected_uniform_mrr(n_candidates: int, n_relevant: int) -> float:
    """Exact expected reciprocal rank of the first relevant item when a
    uniformly random permutation ranks ``n_candidates`` items of which
    ``n_relevant`` are relevant."""

    if n_relevant <= 0 or n_candidates <= 0:
        return 0.0
    n_relevant = min(n_relevant, n_candidates)
    total = 0.0
    for k in range(1, n_candidates - n_relevant + 2):
        prefix_all_irrelevant = math.comb(n_candidates - n_relevant, k - 1) / math.comb(
            n_candidates, k - 1
        )
        p_first_at_k = prefix_all_irrelevant * n_relevant / (n_candidates - k + 1)
        total += p_first_at_k / k
    return total


def eval_retrieval(
    rank: Callable[[str, str], Sequence],
    dataset: RetrievalDataset,
    theorems: Iterable[str] | None = None,
) -> dict:
    """Average R@1, R@10 and MRR of ``rank(theorem, state_text)`` over every
    supervised state. The ranker may return names or (name, score) pairs."""

    examples = dataset.train_examples(theorems)
    if not examples:
        raise EmptyDatasetError("no states with referenced premises to evaluate on")
    r1 = r10 = mrr = 0.0
    for example in examples:
        ranked = [r[0] if isinstance(r, tuple) else r for r in rank(example.theorem, example.state)]
        relevant = set(example.premises)
        r1 += recall_at(ranked, relevant, 1)
        r10 += recall_at(ranked, relevant, 10)
        mrr += reciprocal_rank(ranked, relevant)
    n = len(examples)
    return {"r1": r1 / n, "r10": r10 / n, "mrr": mrr / n, "n_examples": n}
