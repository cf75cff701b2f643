"""Second-order (acceleration-based) prediction of the next environment's
population from the last three environments' key points.

Each domain (decision space, objective space) keeps a short history: the
non-dominated snapshot of the last three environments, their cluster centers
aligned so index k tracks the same cluster over time, and the accelerations
computed at earlier changes.  Per cluster, the center's velocity is the last
displacement and its acceleration is the backward second difference of the
center track.  A sign test on consecutive accelerations decides whether a
change is mild (use the raw acceleration) or severe (use a decaying weighted
average of the last three accelerations).  Every population member is then
advanced by its cluster's velocity + acceleration term plus a small Gaussian
jitter scaled to how far the set moved between the last two environments.

With fewer than three snapshots the predictor falls back to a cold start:
keep the best 90% of the current members (by non-dominated rank, ties
random) and draw the remaining 10% at random.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .core import ContractError, nondominated_rank
from .clustering import align_centers, cluster_population

__all__ = [
    "InsufficientHistoryError",
    "Snapshot",
    "HistoryBuffer",
    "ClusterKinematics",
    "compute_kinematics",
    "severity_test",
    "predict_individual",
    "predict_population",
    "nearest_neighbor_scale",
    "SMOOTHING_WEIGHTS",
    "COLD_START_KEEP",
]

HISTORY_DEPTH = 3
SMOOTHING_WEIGHTS = (0.5, 0.3, 0.2)  # decaying influence of older accelerations
COLD_START_KEEP = 0.9
NOISE_CLIP_SIGMAS = 3.0


class InsufficientHistoryError(RuntimeError):
    """Fewer than three environment snapshots are available."""


@dataclass(frozen=True)
class Snapshot:
    points: np.ndarray      # non-dominated set in this domain
    objectives: np.ndarray  # aligned objective vectors
    centers: np.ndarray     # cluster centers, aligned to the previous snapshot
    env_index: int


@dataclass(frozen=True)
class ClusterKinematics:
    velocity: np.ndarray            # (K, d) last center displacement
    acceleration: np.ndarray        # (K, d) backward second difference
    acceleration_prev: np.ndarray | None
    acceleration_prev2: np.ndarray | None


class HistoryBuffer:
    """Ring of up to three per-environment snapshots for one domain."""

    def __init__(self, domain: str, n_clusters: int | None = None,
                 passes: int = 3):
        self.domain = domain
        self.n_clusters = n_clusters
        self.passes = passes
        self.snapshots: deque[Snapshot] = deque(maxlen=HISTORY_DEPTH)
        # accelerations computed at past pushes; only 3 snapshots are kept,
        # so older accelerations cannot be recomputed and are remembered here
        self._accelerations: deque[np.ndarray] = deque(maxlen=HISTORY_DEPTH)

    def snapshot_count(self) -> int:
        return len(self.snapshots)

    @property
    def latest(self) -> Snapshot:
        return self.snapshots[-1]

    def push(self, points, objectives, env_index: int) -> Snapshot:
        """Cluster and store one environment's final non-dominated set."""
        points = np.atleast_2d(np.asarray(points, dtype=float))
        objectives = np.atleast_2d(np.asarray(objectives, dtype=float))
        model = cluster_population(points, objectives, passes=self.passes,
                                   k=self.n_clusters, domain=self.domain)
        centers = model.centers
        if self.snapshots:
            centers = align_centers(centers, self.snapshots[-1].centers)
        snap = Snapshot(points=points, objectives=objectives,
                        centers=centers, env_index=env_index)
        self.snapshots.append(snap)
        if len(self.snapshots) >= 3:
            c0, c1, c2 = (s.centers for s in list(self.snapshots)[-3:])
            self._accelerations.append(c2 - 2 * c1 + c0)
        return snap

    def acceleration_history(self) -> list[np.ndarray]:
        return list(self._accelerations)


def compute_kinematics(history: HistoryBuffer) -> ClusterKinematics:
    """Velocity and acceleration per cluster from three aligned snapshots."""
    if history.snapshot_count() < 3:
        raise InsufficientHistoryError(
            f"need 3 snapshots, have {history.snapshot_count()}")
    snaps = list(history.snapshots)[-3:]
    accels = history.acceleration_history()
    return ClusterKinematics(
        velocity=snaps[2].centers - snaps[1].centers,
        acceleration=accels[-1],
        acceleration_prev=accels[-2] if len(accels) >= 2 else None,
        acceleration_prev2=accels[-3] if len(accels) >= 3 else None,
    )


def severity_test(kin: ClusterKinematics, k: int) -> str:
    """"mild" when consecutive accelerations point the same way, else "severe".

    The sign of <a_k(now), a_k(previous change)> realizes the same-direction /
    opposite-direction dichotomy; without a previous acceleration the change
    is treated as mild.
    """
    if kin.acceleration_prev is None:
        return "mild"
    s = float(np.dot(kin.acceleration[k], kin.acceleration_prev[k]))
    return "mild" if s >= 0 else "severe"


def predict_individual(x, k: int, kin: ClusterKinematics, severity: str,
                       rng=None, noise_sigma: float = 0.0) -> np.ndarray:
    """Advance one member by its cluster's velocity plus acceleration term."""
    x = np.asarray(x, dtype=float)
    if severity == "mild":
        accel = kin.acceleration[k]
    else:
        terms = [kin.acceleration[k]]
        weights = [SMOOTHING_WEIGHTS[0]]
        for w, older in ((SMOOTHING_WEIGHTS[1], kin.acceleration_prev),
                         (SMOOTHING_WEIGHTS[2], kin.acceleration_prev2)):
            if older is not None:
                terms.append(older[k])
                weights.append(w)
        accel = sum(w * a for w, a in zip(weights, terms)) / sum(weights)
    out = x + kin.velocity[k] + accel
    if noise_sigma > 0 and rng is not None:
        eps = rng.normal(0.0, noise_sigma, size=x.shape)
        np.clip(eps, -NOISE_CLIP_SIGMAS * noise_sigma,
                NOISE_CLIP_SIGMAS * noise_sigma, out=eps)
        out = out + eps
    return out


def nearest_neighbor_scale(history: HistoryBuffer) -> float:
    """Jitter scale: mean nearest-neighbor shift between the last two
    snapshots, divided by the domain dimensionality."""
    if history.snapshot_count() < 2:
        return 0.0
    cur = history.snapshots[-1].points
    prev = history.snapshots[-2].points
    d = np.linalg.norm(cur[:, None, :] - prev[None, :, :], axis=2)
    return float(d.min(axis=1).mean()) / cur.shape[1]


def predict_population(history: HistoryBuffer, points, objectives, n_out: int,
                       rng, *, bounds=None, random_sampler=None,
                       noise_sigma: float | None = None) -> np.ndarray:
    """Predicted point set for the next environment.

    With three snapshots: assign every row of ``points`` to its nearest
    current center and advance it by that cluster's kinematics (rows are the
    full population in this domain).  Otherwise cold start: keep the best
    floor(0.9*n_out) rows by non-dominated rank (ties random) and fill the
    rest with ``random_sampler(rng, k)`` draws (uniform within ``bounds``
    when no sampler is given).

    ``noise_sigma``: per-coordinate jitter scale; None derives it from the
    snapshot displacement, 0 disables noise.  Decision-space output is
    clamped to ``bounds``; objective-space output (bounds=None) is not.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    if history.snapshot_count() >= 3:
        kin = compute_kinematics(history)
        centers = history.latest.centers
        sigma = nearest_neighbor_scale(history) if noise_sigma is None else noise_sigma
        severities = [severity_test(kin, k) for k in range(len(centers))]
        dists = np.linalg.norm(points[:, None, :] - centers[None, :, :], axis=2)
        assign = np.argmin(dists, axis=1)
        out = np.array([
            predict_individual(points[i], assign[i], kin, severities[assign[i]],
                               rng, sigma)
            for i in range(len(points))
        ])
        if bounds is not None:
            out = np.clip(out, bounds[:, 0], bounds[:, 1])
        return out

    # cold start
    objectives = np.atleast_2d(np.asarray(objectives, dtype=float))
    n_keep = min(int(np.floor(COLD_START_KEEP * n_out)), len(points))
    ranks = nondominated_rank(objectives)
    order = np.lexsort((rng.random(len(points)), ranks))
    kept = points[order[:n_keep]]
    n_rand = n_out - n_keep
    if n_rand == 0:
        return kept
    if random_sampler is not None:
        fresh = np.atleast_2d(np.asarray(random_sampler(rng, n_rand), dtype=float))
    elif bounds is not None:
        fresh = rng.uniform(bounds[:, 0], bounds[:, 1], size=(n_rand, bounds.shape[0]))
    else:
        raise ContractError("cold start needs bounds or a random_sampler")
    return np.vstack([kept, fresh])
