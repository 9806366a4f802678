"""SGD training loop for the hashing retriever.

Each step samples a batch of supervised states. Every state contributes one
uniformly chosen positive premise and a fixed number of negatives; a quota
of those negatives comes from the positive's own file (the hard,
lexically-close distractors), the rest from anywhere accessible. All
sampled premises in the batch score against all states in the batch. The
learning rate ramps up linearly, then follows a half-cosine down to zero.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

from ..errors import EmptyDatasetError
from .data import RetrievalDataset, StateExample
from .loss import batch_loss_and_grad
from .model import Retriever, RetrieverConfig, new_retriever

__all__ = ["learning_rate", "sample_batch", "train_retriever"]


def learning_rate(step: int, config: RetrieverConfig) -> float:
    if step < config.warmup_steps:
        return config.lr_max * (step + 1) / config.warmup_steps
    span = max(1, config.total_steps - config.warmup_steps)
    progress = (step - config.warmup_steps) / span
    return config.lr_max * 0.5 * (1.0 + math.cos(math.pi * progress))


def _pick(rng: np.random.Generator, pool: Sequence[str], k: int) -> list[str]:
    if k <= 0 or not pool:
        return []
    idx = rng.choice(len(pool), size=min(k, len(pool)), replace=False)
    return [pool[int(i)] for i in idx]


def _negatives(
    rng: np.random.Generator,
    config: RetrieverConfig,
    dataset: RetrievalDataset,
    example: StateExample,
    positive: str,
) -> list[str]:
    gt = set(example.premises)
    non_gt = [n for n in dataset.accessible(example.theorem) if n not in gt]
    pos_path = dataset.premises[positive].path
    infile = [n for n in non_gt if dataset.premises[n].path == pos_path]
    negs = _pick(rng, infile, min(config.infile_negatives, config.negatives))
    taken = set(negs)
    negs += _pick(rng, [n for n in non_gt if n not in taken], config.negatives - len(negs))
    if len(negs) < config.negatives:
        # Degenerate corpus: not enough distinct distractors, repeat some.
        fallback = non_gt or [n for n in sorted(dataset.premises) if n not in gt] or [positive]
        while len(negs) < config.negatives:
            negs.append(fallback[int(rng.integers(len(fallback)))])
    return negs


def sample_batch(
    rng: np.random.Generator,
    config: RetrieverConfig,
    dataset: RetrievalDataset,
    pool: Sequence[StateExample],
) -> tuple[list[StateExample], list[str], np.ndarray]:
    chosen = [pool[int(i)] for i in rng.integers(len(pool), size=config.batch_states)]
    premise_names: list[str] = []
    for example in chosen:
        positive = example.premises[int(rng.integers(len(example.premises)))]
        premise_names.append(positive)
        premise_names.extend(_negatives(rng, config, dataset, example, positive))
    labels = np.zeros((len(chosen), len(premise_names)), dtype=np.float64)
    for i, example in enumerate(chosen):
        gt = set(example.premises)
        for j, name in enumerate(premise_names):
            if name in gt:
                labels[i, j] = 1.0
    return chosen, premise_names, labels


def train_retriever(
    dataset: RetrievalDataset,
    config: RetrieverConfig | None = None,
    theorems: Iterable[str] | None = None,
) -> Retriever:
    config = config if config is not None else RetrieverConfig()
    pool = dataset.train_examples(theorems)
    if not pool:
        raise EmptyDatasetError("no training states reference any premise")
    model = new_retriever(config)
    rng = np.random.default_rng([config.seed, 1])
    losses: list[float] = []
    for step in range(config.total_steps):
        chosen, premise_names, labels = sample_batch(rng, config, dataset, pool)
        state_reps = [model.rep(e.state) for e in chosen]
        premise_reps = [model.rep(dataset.premises[n].code) for n in premise_names]
        loss, dE = batch_loss_and_grad(model.E, state_reps, premise_reps, labels)
        model.E -= learning_rate(step, config) * dE
        losses.append(loss)
    model.log = {
        "examples": len(pool),
        "loss_divisor": config.batch_states * config.batch_states * (config.negatives + 1),
        "losses": losses,
    }
    return model
