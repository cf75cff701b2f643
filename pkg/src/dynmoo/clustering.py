"""Online k-means over a Pareto set/front, producing per-environment key points.

The cluster count is tied to the objective dimension: one center seeded at
the population mean (the overall drift of the set) plus one per objective,
seeded at that objective's minimizer (the boundary points that pin down the
front's extremes).  Centers are then refined by a fixed number of online
sweeps where the nearest center moves toward each point with step
1/(count+1).  Runs are deterministic: ties in nearest-center queries always
resolve to the lowest center index.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import ContractError

__all__ = [
    "ClusterModel",
    "seed_centers",
    "online_kmeans_step",
    "cluster_population",
    "align_centers",
]

DEFAULT_PASSES = 3


@dataclass
class ClusterModel:
    centers: np.ndarray    # (K, d)
    counts: np.ndarray     # (K,) points absorbed per center
    domain: str            # "decision" or "objective"
    duplicate_seeds: bool  # seeding had fewer distinct points than centers

    @property
    def k(self) -> int:
        return len(self.centers)


def seed_centers(points, objectives, k: int | None = None,
                 domain: str = "decision") -> ClusterModel:
    """Initial centers: population mean + per-objective boundary minimizers.

    ``points`` live in the clustered domain; ``objectives`` are the aligned
    objective vectors used to pick boundary points (in objective-space
    clustering the two coincide).  ``k`` defaults to m+1; k=1 keeps only the
    mean seed (used when clustering is bypassed).
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    objectives = np.atleast_2d(np.asarray(objectives, dtype=float))
    if len(points) == 0:
        raise ContractError("cannot seed centers from an empty set")
    if len(points) != len(objectives):
        raise ContractError("points and objectives must align")
    m = objectives.shape[1]
    if k is None:
        k = m + 1
    if k != 1 and k != m + 1:
        raise ContractError(f"cluster count must be 1 or m+1, got {k}")
    seeds = [points.mean(axis=0)]
    for j in range(k - 1):
        seeds.append(points[int(np.argmin(objectives[:, j]))])
    centers = np.array(seeds)
    dup = len(np.unique(centers, axis=0)) < k
    return ClusterModel(centers=centers, counts=np.zeros(k, dtype=int),
                        domain=domain, duplicate_seeds=dup)


def nearest_center(centers: np.ndarray, x: np.ndarray) -> int:
    """Index of the closest center; ties go to the lowest index."""
    d = np.linalg.norm(centers - x, axis=1)
    return int(np.argmin(d))


def online_kmeans_step(model: ClusterModel, x) -> ClusterModel:
    """Absorb one point: the nearest center moves toward it by 1/(count+1)."""
    x = np.asarray(x, dtype=float)
    if x.shape[0] != model.centers.shape[1]:
        raise ContractError("point dimension does not match the model")
    k = nearest_center(model.centers, x)
    model.centers[k] += (x - model.centers[k]) / (model.counts[k] + 1)
    model.counts[k] += 1
    return model


def cluster_population(points, objectives, passes: int = DEFAULT_PASSES,
                       k: int | None = None, domain: str = "decision") -> ClusterModel:
    """Seed, then sweep all points in order ``passes`` times."""
    if passes < 1:
        raise ContractError("passes must be >= 1")
    model = seed_centers(points, objectives, k=k, domain=domain)
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    for _ in range(passes):
        for x in pts:
            online_kmeans_step(model, x)
    return model


def align_centers(new_centers: np.ndarray, prev_centers: np.ndarray) -> np.ndarray:
    """Permute ``new_centers`` so row i continues previous center i.

    Greedy globally-nearest matching, each center matched once; ties break
    on (previous index, new index) so alignment is deterministic.
    """
    new_centers = np.asarray(new_centers, dtype=float)
    prev_centers = np.asarray(prev_centers, dtype=float)
    if new_centers.shape != prev_centers.shape:
        raise ContractError("center sets must have identical shape")
    k = len(new_centers)
    d = np.linalg.norm(prev_centers[:, None, :] - new_centers[None, :, :], axis=2)
    pairs = sorted(((d[i, j], i, j) for i in range(k) for j in range(k)))
    aligned = np.empty_like(new_centers)
    used_prev = np.zeros(k, dtype=bool)
    used_new = np.zeros(k, dtype=bool)
    for _, i, j in pairs:
        if used_prev[i] or used_new[j]:
            continue
        aligned[i] = new_centers[j]
        used_prev[i] = used_new[j] = True
    return aligned
