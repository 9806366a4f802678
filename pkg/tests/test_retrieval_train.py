from __future__ import annotations

import math

import numpy as np
import pytest

from minidojo.corpus import corpus_from_sources
from minidojo.errors import EmptyDatasetError
from minidojo.retrieval import (
    RetrievalDataset,
    RetrieverConfig,
    train_retriever,
)
from minidojo.retrieval.train import learning_rate, sample_batch

SMALL = RetrieverConfig(warmup_steps=20, total_steps=60, batch_states=4, seed=0)


def test_learning_rate_schedule_hand_points():
    config = RetrieverConfig(warmup_steps=10, total_steps=30, lr_max=0.1)
    # Linear warmup hits lr_max exactly at the last warmup step.
    assert learning_rate(0, config) == pytest.approx(0.01)
    assert learning_rate(4, config) == pytest.approx(0.05)
    assert learning_rate(9, config) == pytest.approx(0.1)
    # Cosine decay: halfway through the decay span the rate is lr_max / 2.
    assert learning_rate(20, config) == pytest.approx(0.05)
    # The final step approaches zero.
    assert learning_rate(29, config) == pytest.approx(
        0.1 * 0.5 * (1 + math.cos(math.pi * 19 / 20))
    )
    assert learning_rate(30, config) == pytest.approx(0.0)


def test_learning_rate_is_positive_over_the_run():
    config = RetrieverConfig(warmup_steps=5, total_steps=20)
    rates = [learning_rate(s, config) for s in range(20)]
    assert all(r > 0 for r in rates)
    assert max(rates) == pytest.approx(config.lr_max)


def test_training_is_deterministic(forged_dataset):
    a = train_retriever(forged_dataset, SMALL)
    b = train_retriever(forged_dataset, SMALL)
    assert np.array_equal(a.E, b.E)
    assert a.log["losses"] == b.log["losses"]


def test_training_seed_changes_outcome(forged_dataset):
    a = train_retriever(forged_dataset, SMALL)
    b = train_retriever(forged_dataset, RetrieverConfig(**{**SMALL.to_dict(), "seed": 1}))
    assert not np.array_equal(a.E, b.E)


def test_training_reduces_loss(forged_dataset):
    config = RetrieverConfig(warmup_steps=40, total_steps=400, batch_states=8, seed=0)
    model = train_retriever(forged_dataset, config)
    losses = model.log["losses"]
    head = sum(losses[:20]) / 20
    tail = sum(losses[-20:]) / 20
    assert tail < head * 0.7


def test_training_log_shape(forged_dataset):
    model = train_retriever(forged_dataset, SMALL)
    assert len(model.log["losses"]) == SMALL.total_steps
    b = SMALL.batch_states
    n = SMALL.negatives
    assert model.log["loss_divisor"] == b * b * (n + 1)
    assert model.log["examples"] > 0


def test_sample_batch_shapes_and_labels(forged_dataset):
    config = RetrieverConfig(batch_states=4, negatives=3)
    rng = np.random.default_rng(0)
    pool = forged_dataset.train_examples()
    chosen, premise_names, labels = sample_batch(rng, config, forged_dataset, pool)
    assert len(chosen) == 4
    assert len(premise_names) == 4 * (1 + 3)
    assert labels.shape == (4, 16)
    for row, example in enumerate(chosen):
        for col, name in enumerate(premise_names):
            expected = 1.0 if name in example.premises else 0.0
            assert labels[row, col] == expected


def test_sample_batch_first_negative_prefers_same_file(forged_dataset):
    # With the in-file quota on, each state's first negative comes from the
    # positive's file whenever that file offers a non-ground-truth premise.
    config = RetrieverConfig(batch_states=8, negatives=3, infile_negatives=1)
    rng = np.random.default_rng(3)
    in_file = 0
    total = 0
    for _ in range(30):
        chosen, premise_names, _ = sample_batch(
            rng, config, forged_dataset, forged_dataset.train_examples()
        )
        for i, example in enumerate(chosen):
            group = premise_names[i * 4 : (i + 1) * 4]
            positive_file = forged_dataset.premises[group[0]].path
            first_negative = group[1]
            total += 1
            if forged_dataset.premises[first_negative].path == positive_file:
                in_file += 1
    assert in_file / total > 0.9


def test_train_requires_examples():
    corpus = corpus_from_sources(
        {"a.mlean": "lemma t : zero = zero := begin rfl end\n"}
    )
    dataset = RetrievalDataset.from_corpus(corpus)
    with pytest.raises(EmptyDatasetError):
        train_retriever(dataset, SMALL)
