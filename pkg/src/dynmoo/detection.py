"""Detector-based environment-change detection.

A fixed 10% slice of the population is re-evaluated at the start of every
generation; any discrepancy against the stored objective values beyond a
tight tolerance signals that the landscape moved.  Detectors keep their own
copies of (x, f), so later replacement of the underlying population members
does not disturb them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import ContractError, Population

__all__ = ["DetectorSet", "detector_count", "select_detectors", "detect_change"]

DISCREPANCY_TOL = 1e-12


def detector_count(population_size: int) -> int:
    """max(1, 10% of N), integer round-half-up."""
    if population_size < 1:
        raise ContractError("population must be non-empty")
    return max(1, (population_size + 5) // 10)


@dataclass(frozen=True)
class DetectorSet:
    indices: np.ndarray   # population indices at selection time
    stored_X: np.ndarray  # (k, n) decision vectors, frozen copies
    stored_F: np.ndarray  # (k, m) objective values at selection time

    def __len__(self) -> int:
        return len(self.indices)


def select_detectors(pop: Population, rng) -> DetectorSet:
    """Uniform sample without replacement; values copied from the members."""
    n = len(pop)
    k = detector_count(n)
    idx = np.sort(rng.choice(n, size=k, replace=False))
    return DetectorSet(
        indices=idx,
        stored_X=np.array([pop.members[i].x for i in idx]),
        stored_F=np.array([pop.members[i].f for i in idx]),
    )


def detect_change(detectors: DetectorSet, evaluate) -> bool:
    """Re-evaluate every detector now; True iff any objective moved > tol.

    All detectors are re-evaluated even after a hit, so detection consumes
    exactly len(detectors) evaluations per generation and the run's
    evaluation budget stays a closed-form quantity.
    """
    fresh = np.array([evaluate(x) for x in detectors.stored_X])
    return bool(np.any(np.abs(fresh - detectors.stored_F) > DISCREPANCY_TOL))
