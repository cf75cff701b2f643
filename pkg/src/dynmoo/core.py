"""Core value types, Pareto dominance operations, and reproducible RNG streams.

Everything downstream (benchmark problems, the decomposition optimizer, the
prediction machinery, the harness) builds on the small vocabulary defined
here: decision/objective vectors are plain float64 numpy arrays, populations
are lists of immutable ``Individual`` records, and randomness always flows
through counter-based ``RngStream`` objects so runs replay bit-for-bit.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "ContractError",
    "ConfigurationError",
    "Individual",
    "Population",
    "RngStream",
    "dominates",
    "nondominated_filter",
    "nondominated_rank",
    "crowding_distance",
    "clamp_to_bounds",
    "validate_bounds",
]


class ContractError(ValueError):
    """An operation was called with arguments violating its preconditions."""


class ConfigurationError(ValueError):
    """A configuration value is out of its legal range."""


def _as_vector(v) -> np.ndarray:
    a = np.asarray(v, dtype=float)
    if a.ndim != 1:
        raise ContractError(f"expected a 1-D vector, got shape {a.shape}")
    return a


def dominates(a, b) -> bool:
    """True iff objective vector ``a`` Pareto-dominates ``b`` (minimization).

    ``a`` dominates ``b`` when a_j <= b_j for every component and a_j < b_j
    for at least one.  Equal vectors never dominate each other.
    """
    a = _as_vector(a)
    b = _as_vector(b)
    if a.shape != b.shape:
        raise ContractError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return bool(np.all(a <= b) and np.any(a < b))


def _domination_matrix(F: np.ndarray) -> np.ndarray:
    """Boolean matrix D with D[i, j] = objectives i dominate objectives j."""
    le = np.all(F[:, None, :] <= F[None, :, :], axis=2)
    lt = np.any(F[:, None, :] < F[None, :, :], axis=2)
    return le & lt


def nondominated_filter(F) -> np.ndarray:
    """Indices of the non-dominated rows of the objective matrix ``F``.

    Duplicates of a non-dominated point are all retained.  An empty input
    yields an empty index array.
    """
    F = np.asarray(F, dtype=float)
    if F.size == 0:
        return np.empty(0, dtype=int)
    if F.ndim != 2:
        raise ContractError("expected an (N, m) objective matrix")
    dom = _domination_matrix(F)
    keep = ~dom.any(axis=0)
    return np.flatnonzero(keep)


def nondominated_rank(F) -> np.ndarray:
    """Pareto rank per row (0 = non-dominated front), by repeated peeling."""
    F = np.asarray(F, dtype=float)
    n = F.shape[0]
    ranks = np.full(n, -1, dtype=int)
    dom = _domination_matrix(F)
    remaining = np.ones(n, dtype=bool)
    level = 0
    while remaining.any():
        sub = dom[np.ix_(remaining, remaining)]
        front_local = ~sub.any(axis=0)
        idx = np.flatnonzero(remaining)[front_local]
        ranks[idx] = level
        remaining[idx] = False
        level += 1
    return ranks


def crowding_distance(F) -> np.ndarray:
    """NSGA-II crowding distance of each row of ``F`` (larger = less crowded)."""
    F = np.asarray(F, dtype=float)
    n, m = F.shape
    if n <= 2:
        return np.full(n, np.inf)
    dist = np.zeros(n)
    for j in range(m):
        order = np.argsort(F[:, j], kind="stable")
        fj = F[order, j]
        span = fj[-1] - fj[0]
        dist[order[0]] = dist[order[-1]] = np.inf
        if span > 0:
            dist[order[1:-1]] += (fj[2:] - fj[:-2]) / span
    return dist


def validate_bounds(bounds) -> np.ndarray:
    """Normalize ``bounds`` to an (n, 2) array and check a_i <= b_i."""
    b = np.asarray(bounds, dtype=float)
    if b.ndim != 2 or b.shape[1] != 2:
        raise ConfigurationError("bounds must be an (n, 2) array of [low, high] pairs")
    if np.any(b[:, 0] > b[:, 1]):
        raise ConfigurationError("lower bound exceeds upper bound")
    return b


def clamp_to_bounds(x, bounds) -> np.ndarray:
    """Project each coordinate of ``x`` onto its [a_i, b_i] interval."""
    x = _as_vector(x)
    b = validate_bounds(bounds)
    if x.shape[0] != b.shape[0]:
        raise ContractError(f"vector length {x.shape[0]} != bounds length {b.shape[0]}")
    return np.clip(x, b[:, 0], b[:, 1])


@dataclass(frozen=True)
class Individual:
    """An evaluated solution: decision vector, objective vector, evaluation time."""

    x: np.ndarray
    f: np.ndarray
    eval_time: float

    def __post_init__(self):
        object.__setattr__(self, "x", np.asarray(self.x, dtype=float))
        object.__setattr__(self, "f", np.asarray(self.f, dtype=float))


@dataclass
class Population:
    """A bag of individuals with a nominal capacity N."""

    members: list[Individual] = field(default_factory=list)
    capacity: int = 0

    def __len__(self) -> int:
        return len(self.members)

    @property
    def X(self) -> np.ndarray:
        return np.array([ind.x for ind in self.members])

    @property
    def F(self) -> np.ndarray:
        return np.array([ind.f for ind in self.members])

    def nondominated(self) -> list[Individual]:
        if not self.members:
            return []
        idx = nondominated_filter(self.F)
        return [self.members[i] for i in idx]


def _hash64(*parts) -> int:
    h = hashlib.sha256("|".join(str(p) for p in parts).encode()).digest()
    return int.from_bytes(h[:8], "little")


@dataclass(frozen=True)
class RngStream:
    """A named, reproducible random stream.

    Wraps a Philox counter-based bit generator keyed by (seed, stream id):
    the same pair yields the same draw sequence on every platform, and
    distinct stream ids are statistically independent.  Streams are cheap;
    derive one per logical task instead of sharing generators.
    """

    seed: int
    stream: int = 0

    def generator(self) -> np.random.Generator:
        key = np.array([self.seed & 0xFFFFFFFFFFFFFFFF, self.stream & 0xFFFFFFFFFFFFFFFF],
                       dtype=np.uint64)
        return np.random.Generator(np.random.Philox(key=key))

    def derive(self, label) -> "RngStream":
        """Child stream for a named purpose; stable under re-runs."""
        return RngStream(self.seed, _hash64(self.stream, label))
