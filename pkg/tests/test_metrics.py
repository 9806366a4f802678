from __future__ import annotations

import pytest

from minidojo.corpus import corpus_from_sources
from minidojo.errors import EmptyDatasetError
from minidojo.retrieval import (
    RetrievalDataset,
    bm25_rank,
    eval_retrieval,
    expected_uniform_mrr,
    recall_at,
    reciprocal_rank,
)


def test_recall_at_hand_values():
    ranked = ["a", "b", "c", "d"]
    assert recall_at(ranked, {"a"}, 1) == 1.0
    assert recall_at(ranked, {"b"}, 1) == 0.0
    assert recall_at(ranked, {"a", "d"}, 2) == 0.5
    assert recall_at(ranked, {"a", "d"}, 4) == 1.0
    assert recall_at(ranked, {"z"}, 4) == 0.0


def test_reciprocal_rank_hand_values():
    assert reciprocal_rank(["a", "b", "c"], {"a"}) == 1.0
    assert reciprocal_rank(["a", "b", "c"], {"b"}) == 0.5
    assert reciprocal_rank(["a", "b", "c"], {"c", "b"}) == 0.5
    assert reciprocal_rank(["a", "b", "c"], {"z"}) == 0.0
    assert reciprocal_rank([], {"a"}) == 0.0


def test_expected_uniform_mrr_exact_values():
    # Exhaustively checkable cases: with g relevant out of n shuffled
    # uniformly, E[1/rank of first relevant].
    assert expected_uniform_mrr(1, 1) == pytest.approx(1.0)
    assert expected_uniform_mrr(2, 1) == pytest.approx(0.75)
    assert expected_uniform_mrr(3, 1) == pytest.approx(11.0 / 18.0)
    assert expected_uniform_mrr(3, 2) == pytest.approx(5.0 / 6.0)
    assert expected_uniform_mrr(4, 4) == pytest.approx(1.0)


def test_expected_uniform_mrr_brute_force():
    from itertools import permutations

    def brute(n, g):
        total = 0.0
        count = 0
        items = [1] * g + [0] * (n - g)
        for perm in set(permutations(items)):
            weight = 1
            rank = perm.index(1) + 1
            # Each distinct 0/1 arrangement is equally likely.
            total += (1.0 / rank)
            count += 1
        return total / count

    for n in range(1, 7):
        for g in range(1, n + 1):
            assert expected_uniform_mrr(n, g) == pytest.approx(brute(n, g))


def test_expected_uniform_mrr_degenerate():
    assert expected_uniform_mrr(5, 0) == 0.0
    assert expected_uniform_mrr(0, 0) == 0.0


def test_eval_retrieval_perfect_and_worst_rankers(bundled_dataset):
    def perfect(theorem, state_text):
        example = next(
            e for e in bundled_dataset.train_examples() if e.theorem == theorem and e.state == state_text
        )
        rest = [n for n in bundled_dataset.accessible(theorem) if n not in example.premises]
        return list(example.premises) + rest

    report = eval_retrieval(perfect, bundled_dataset)
    assert report["mrr"] == 1.0
    assert report["r1"] > 0.0
    assert report["r10"] == 1.0
    assert report["n_examples"] == len(bundled_dataset.train_examples())

    def hopeless(theorem, state_text):
        return []

    report = eval_retrieval(hopeless, bundled_dataset)
    assert report["mrr"] == 0.0 and report["r10"] == 0.0


def test_eval_retrieval_accepts_scored_pairs(bundled_dataset):
    report = eval_retrieval(
        lambda t, s: bm25_rank(bundled_dataset, t, s), bundled_dataset
    )
    assert 0.0 <= report["mrr"] <= 1.0


def test_eval_retrieval_scoped_theorems(bundled_dataset):
    report = eval_retrieval(
        lambda t, s: bm25_rank(bundled_dataset, t, s),
        bundled_dataset,
        theorems=["nat.gcd_self"],
    )
    gcd_examples = [e for e in bundled_dataset.train_examples() if e.theorem == "nat.gcd_self"]
    assert report["n_examples"] == len(gcd_examples)


def test_eval_retrieval_requires_examples():
    corpus = corpus_from_sources({"a.mlean": "lemma t : zero = zero := begin rfl end\n"})
    dataset = RetrievalDataset.from_corpus(corpus)
    with pytest.raises(EmptyDatasetError):
        eval_retrieval(lambda t, s: [], dataset)
