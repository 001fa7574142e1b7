"""Per-iteration swarm graph: pairwise distances, fitness ranks, hop probabilities.

The swarm is viewed as a complete weighted graph rebuilt every iteration:
nodes are particles, edge weights are Euclidean distances, and every node's
self-loop weight is pinned to 1.  Fitness ranks (N for the best particle down
to 1 for the worst) bias a random walker on this graph; the probability of
hopping from source j to node i is rank_i * weight_ij, normalized over all i.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

__all__ = [
    "SELF_WEIGHT",
    "COINCIDENT_DISTANCE",
    "SwarmGraph",
    "build_distance_matrix",
    "compute_ranks",
    "transition_probabilities",
    "build_swarm_graph",
]

SELF_WEIGHT = 1.0
# Substituted for an exact zero off-diagonal distance so no particle ever
# drops out of the hop distribution.
COINCIDENT_DISTANCE = 1e-9


def build_distance_matrix(positions) -> np.ndarray:
    """Symmetric N x N matrix of pairwise distances with diagonal SELF_WEIGHT."""
    pos = np.asarray(positions, dtype=float)
    if pos.ndim != 2:
        raise ValueError("positions must be an (N, dim) array")
    if pos.shape[0] < 2:
        raise ValueError("need at least 2 particles")
    diff = pos[:, None, :] - pos[None, :, :]
    matrix = np.sqrt(np.sum(diff * diff, axis=-1))
    off_diagonal = ~np.eye(pos.shape[0], dtype=bool)
    matrix[off_diagonal & (matrix == 0.0)] = COINCIDENT_DISTANCE
    np.fill_diagonal(matrix, SELF_WEIGHT)
    return matrix


def compute_ranks(fitnesses, sense: str = "minimize") -> np.ndarray:
    """Integer ranks 1..N: the best particle gets N, the worst gets 1.

    Ties break by index: among equal fitnesses the lower index takes the
    higher rank, which keeps seeded runs reproducible.
    """
    f = np.asarray(fitnesses, dtype=float)
    if f.ndim != 1 or f.shape[0] < 2:
        raise ValueError("fitnesses must be a vector of length >= 2")
    if not np.all(np.isfinite(f)):
        raise ValueError("fitnesses must be finite")
    if sense == "minimize":
        key = f
    elif sense == "maximize":
        key = -f
    else:
        raise ValueError(f"unknown sense {sense!r}")
    order = np.argsort(key, kind="stable")
    ranks = np.empty(f.shape[0], dtype=int)
    ranks[order] = np.arange(f.shape[0], 0, -1)
    return ranks


def transition_probabilities(alpha, distances, source: int) -> np.ndarray:
    """Hop distribution from `source`: P_i = alpha_i * A[i, source] / sum_k alpha_k * A[k, source]."""
    alpha = np.asarray(alpha, dtype=float)
    matrix = np.asarray(distances, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError("distance matrix must be square")
    if alpha.shape != (matrix.shape[0],):
        raise ValueError("rank vector length must match the matrix size")
    if not 0 <= source < matrix.shape[0]:
        raise IndexError(f"source {source} out of range")
    weights = alpha * matrix[:, source]
    return weights / weights.sum()


@dataclass(frozen=True)
class SwarmGraph:
    """Immutable per-iteration snapshot of the swarm graph.

    `prob_rows[j]` is the full hop distribution out of source particle j
    (so prob_rows[j][i] is the probability of hopping from j to i).
    """

    positions: np.ndarray
    distances: np.ndarray
    alpha: np.ndarray
    prob_rows: np.ndarray

    @property
    def size(self) -> int:
        return self.alpha.shape[0]

    def to_json_dict(self) -> dict:
        """Debug dump: {"positions", "A", "alpha", "prob_rows"} as plain lists."""
        return {
            "positions": self.positions.tolist(),
            "A": self.distances.tolist(),
            "alpha": self.alpha.tolist(),
            "prob_rows": self.prob_rows.tolist(),
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_json_dict(), **kwargs)


def build_swarm_graph(positions, fitnesses, sense: str = "minimize") -> SwarmGraph:
    """Assemble the distance matrix, ranks, and all hop distributions at once."""
    matrix = build_distance_matrix(positions)
    alpha = compute_ranks(fitnesses, sense)
    weighted = alpha[:, None] * matrix  # entry (i, j): rank_i * distance_ij
    prob = weighted / weighted.sum(axis=0, keepdims=True)
    return SwarmGraph(
        positions=np.asarray(positions, dtype=float).copy(),
        distances=matrix,
        alpha=alpha,
        prob_rows=prob.T.copy(),
    )
