"""Premise retrieval: hashing encoder, training loop, BM25 baseline,
and ranking metrics."""

from __future__ import annotations

from .bm25 import Bm25Index, bm25_rank, tokenize
from .data import RetrievalDataset, StateExample
from .loss import batch_cosines, batch_loss, batch_loss_and_grad
from .metrics import eval_retrieval, expected_uniform_mrr, recall_at, reciprocal_rank
from .model import (
    PremiseIndex,
    Retriever,
    RetrieverConfig,
    cosine,
    embed_reps,
    fnv1a64,
    load_retriever,
    new_retriever,
    ngram_buckets,
    retrieve,
    save_retriever,
)
from .train import learning_rate, sample_batch, train_retriever

__all__ = [
    "Bm25Index",
    "bm25_rank",
    "tokenize",
    "RetrievalDataset",
    "StateExample",
    "batch_cosines",
    "batch_loss",
    "batch_loss_and_grad",
    "eval_retrieval",
    "expected_uniform_mrr",
    "recall_at",
    "reciprocal_rank",
    "PremiseIndex",
    "Retriever",
    "RetrieverConfig",
    "cosine",
    "embed_reps",
    "fnv1a64",
    "load_retriever",
    "new_retriever",
    "ngram_buckets",
    "retrieve",
    "save_retriever",
    "learning_rate",
    "sample_batch",
    "train_retriever",
]
