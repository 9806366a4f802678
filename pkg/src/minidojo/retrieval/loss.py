"""Squared-error cosine loss over a batch, with closed-form gradients.

Every state in the batch is scored against every premise in the batch
(in-batch negatives). With b states and P premises the loss is

    loss = sum_ij (labels_ij - cos(s_i, p_j))^2 / (b * P)

and the gradient flows back through the averaged-row embeddings into the
embedding table. Zero-norm embeddings have cosine 0 by convention and
contribute no gradient.
"""

from __future__ import annotations

import numpy as np

from .model import embed_reps

__all__ = ["batch_cosines", "batch_loss", "batch_loss_and_grad"]

Rep = tuple[np.ndarray, np.ndarray]


def _normalized(matrix: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    norms = np.linalg.norm(matrix, axis=1)
    unit = np.zeros_like(matrix)
    nonzero = norms > 0
    unit[nonzero] = matrix[nonzero] / norms[nonzero][:, None]
    return unit, norms


def batch_cosines(E: np.ndarray, state_reps: list[Rep], premise_reps: list[Rep]) -> np.ndarray:
    S_hat, _ = _normalized(embed_reps(E, state_reps))
    P_hat, _ = _normalized(embed_reps(E, premise_reps))
    return S_hat @ P_hat.T


def batch_loss(
    E: np.ndarray, state_reps: list[Rep], premise_reps: list[Rep], labels: np.ndarray
) -> float:
    C = batch_cosines(E, state_reps, premise_reps)
    return float(np.sum((labels - C) ** 2) / labels.size)


def _scatter(dE: np.ndarray, reps: list[Rep], grads: np.ndarray) -> None:
    for (indices, weights), grad in zip(reps, grads):
        if len(indices):
            np.add.at(dE, indices, (weights / weights.sum())[:, None] * grad)


def batch_loss_and_grad(
    E: np.ndarray, state_reps: list[Rep], premise_reps: list[Rep], labels: np.ndarray
) -> tuple[float, np.ndarray]:
    S = embed_reps(E, state_reps)
    P = embed_reps(E, premise_reps)
    S_hat, s_norms = _normalized(S)
    P_hat, p_norms = _normalized(P)
    C = S_hat @ P_hat.T
    loss = float(np.sum((labels - C) ** 2) / labels.size)

    # d loss / d C, then pull back through the cosine of each pair:
    # d cos / d s = (p_hat - cos * s_hat) / |s|, symmetrically for p.
    G = -2.0 * (labels - C) / labels.size
    GC = G * C
    dS = G @ P_hat - GC.sum(axis=1)[:, None] * S_hat
    dP = G.T @ S_hat - GC.sum(axis=0)[:, None] * P_hat
    s_ok = s_norms > 0
    p_ok = p_norms > 0
    dS[s_ok] /= s_norms[s_ok][:, None]
    dS[~s_ok] = 0.0
    dP[p_ok] /= p_norms[p_ok][:, None]
    dP[~p_ok] = 0.0

    dE = np.zeros_like(E)
    _scatter(dE, state_reps, dS)
    _scatter(dE, premise_reps, dP)
    return loss, dE
