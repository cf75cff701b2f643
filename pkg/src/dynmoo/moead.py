"""Decomposition-based multi-objective optimizer used as the per-environment
search engine.

Standard MOEA/D machinery: a simplex-lattice weight set with a nearest-
neighbor table, Tchebycheff scalarization against a maintained ideal point,
SBX crossover + polynomial mutation reproduction, and capped neighborhood
replacement.  One ``generation_step`` spends exactly N evaluations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb

import numpy as np

from .core import (ConfigurationError, ContractError, Individual,
                   clamp_to_bounds)

__all__ = [
    "MoeadParams",
    "WeightVectorSet",
    "MoeadState",
    "init_weights",
    "tchebycheff",
    "init_state",
    "reset_ideal",
    "generation_step",
]

_MIN_WEIGHT = 1e-6


@dataclass(frozen=True)
class MoeadParams:
    neighborhood_size: int = 20          # T
    neighbor_mating_prob: float = 0.9    # mate within neighborhood vs whole pop
    max_replacements: int = 2            # n_r, children replace at most this many
    sbx_eta: float = 20.0
    crossover_prob: float = 1.0
    mutation_eta: float = 20.0


@dataclass(frozen=True)
class WeightVectorSet:
    weights: np.ndarray    # (N, m), rows on the simplex
    neighbors: np.ndarray  # (N, T), self included

    @property
    def size(self) -> int:
        return self.weights.shape[0]


def _simplex_lattice(h: int, m: int) -> np.ndarray:
    rows = []
    for dividers in combinations(range(h + m - 1), m - 1):
        prev = -1
        parts = []
        for d in dividers:
            parts.append(d - prev - 1)
            prev = d
        parts.append(h + m - 2 - prev)
        rows.append(parts)
    return np.array(rows, dtype=float) / h


def lattice_size(n_target: int, m: int) -> int:
    """Nearest simplex-lattice-realizable population size (ties go larger)."""
    if m == 2:
        return max(n_target, 2)
    h = 1
    best = None
    while True:
        size = comb(h + m - 1, m - 1)
        if best is None or abs(size - n_target) <= abs(best - n_target):
            best = size
        if size >= n_target:
            return best
        h += 1


def init_weights(n_target: int, m: int, neighborhood_size: int) -> WeightVectorSet:
    """Simplex-lattice weights adjusted to the nearest realizable size.

    The returned set's ``size`` is the actual population size; callers must
    use it rather than ``n_target``.
    """
    if m < 2:
        raise ConfigurationError("need at least two objectives")
    if neighborhood_size < 2:
        raise ContractError("neighborhood size must be >= 2")
    if m == 2:
        h = max(n_target, 2) - 1
    else:
        size = lattice_size(n_target, m)
        h = 1
        while comb(h + m - 1, m - 1) != size:
            h += 1
    W = _simplex_lattice(h, m)
    t = min(neighborhood_size, len(W))
    d = np.linalg.norm(W[:, None, :] - W[None, :, :], axis=2)
    neighbors = np.argsort(d, axis=1, kind="stable")[:, :t]
    return WeightVectorSet(weights=W, neighbors=neighbors)


def tchebycheff(f, w, z) -> float:
    """max_j max(w_j, 1e-6) * |f_j - z_j|."""
    f = np.asarray(f, dtype=float)
    w = np.maximum(np.asarray(w, dtype=float), _MIN_WEIGHT)
    z = np.asarray(z, dtype=float)
    return float(np.max(w * np.abs(f - z)))


def _tchebycheff_rows(F: np.ndarray, W: np.ndarray, z: np.ndarray) -> np.ndarray:
    return np.max(np.maximum(W, _MIN_WEIGHT) * np.abs(F - z), axis=1)


def sbx_crossover(p1, p2, rng, eta: float, prob: float) -> np.ndarray:
    """Simulated binary crossover; returns one child."""
    p1 = np.asarray(p1, dtype=float)
    p2 = np.asarray(p2, dtype=float)
    child = p1.copy()
    if rng.random() > prob:
        return child
    n = p1.shape[0]
    active = rng.random(n) <= 0.5
    u = rng.random(n)
    swap = rng.random(n) <= 0.5
    beta = np.where(u <= 0.5,
                    (2 * u) ** (1 / (eta + 1)),
                    (2 * (1 - u)) ** (-1 / (eta + 1)))
    c1 = 0.5 * ((1 + beta) * p1 + (1 - beta) * p2)
    c2 = 0.5 * ((1 - beta) * p1 + (1 + beta) * p2)
    mixed = np.where(swap, c2, c1)
    distinct = np.abs(p1 - p2) > 1e-14
    child[active & distinct] = mixed[active & distinct]
    return child


def polynomial_mutation(x, bounds, rng, eta: float, prob: float) -> np.ndarray:
    """Bounded polynomial mutation with per-variable probability ``prob``.

    The input is projected into the box first; the bounded formulation is
    undefined outside it (crossover may overshoot).
    """
    lo, hi = bounds[:, 0], bounds[:, 1]
    x = np.clip(np.asarray(x, dtype=float), lo, hi)
    span = hi - lo
    n = x.shape[0]
    mask = (rng.random(n) < prob) & (span > 0)
    u = rng.random(n)
    if not mask.any():
        return x
    u = u[mask]
    xm, lom, him, spanm = x[mask], lo[mask], hi[mask], span[mask]
    d1 = (xm - lom) / spanm
    d2 = (him - xm) / spanm
    e = eta + 1
    dq = np.where(
        u < 0.5,
        (2 * u + (1 - 2 * u) * (1 - d1) ** e) ** (1 / e) - 1,
        1 - (2 * (1 - u) + 2 * (u - 0.5) * (1 - d2) ** e) ** (1 / e),
    )
    x[mask] = xm + dq * spanm
    return x


@dataclass
class MoeadState:
    """Search state: one individual per weight vector plus the ideal point."""

    population: list[Individual]
    z: np.ndarray
    generation: int = 0
    params: MoeadParams = field(default_factory=MoeadParams)


def init_state(wset: WeightVectorSet, evaluate, bounds, t: float, rng,
               params: MoeadParams | None = None) -> MoeadState:
    """Uniform random population, one member per weight vector."""
    n = wset.size
    lo, hi = bounds[:, 0], bounds[:, 1]
    members = []
    for _ in range(n):
        x = rng.uniform(lo, hi)
        members.append(Individual(x, evaluate(x), t))
    state = MoeadState(population=members,
                       z=np.min(np.array([m.f for m in members]), axis=0),
                       params=params or MoeadParams())
    return state


def reset_ideal(state: MoeadState) -> None:
    """Recompute z* from the current population (after an environment change)."""
    state.z = np.min(np.array([m.f for m in state.population]), axis=0)


def replace_population(state: MoeadState, members: list[Individual]) -> None:
    """Install a new population (same size) and rebuild the ideal point."""
    if len(members) != len(state.population):
        raise ContractError("replacement population size mismatch")
    state.population = list(members)
    reset_ideal(state)


def generation_step(state: MoeadState, wset: WeightVectorSet, evaluate,
                    bounds, t: float, rng) -> MoeadState:
    """One MOEA/D generation at fixed time ``t`` (N evaluations).

    Subproblems are visited in index order; each mates within its
    neighborhood with probability delta (otherwise the whole population),
    produces one SBX+mutation child, updates z*, and replaces at most n_r
    members of its mating scope whose Tchebycheff value is worse than the
    child's.
    """
    pop = state.population
    n = len(pop)
    p = state.params
    W = wset.weights
    pm = 1.0 / bounds.shape[0]
    all_idx = np.arange(n)
    for i in range(n):
        pool = wset.neighbors[i] if rng.random() < p.neighbor_mating_prob else all_idx
        pa, pb = rng.choice(len(pool), size=2, replace=False)
        child = sbx_crossover(pop[pool[pa]].x, pop[pool[pb]].x, rng,
                              p.sbx_eta, p.crossover_prob)
        child = polynomial_mutation(child, bounds, rng, p.mutation_eta, pm)
        child = clamp_to_bounds(child, bounds)
        f = evaluate(child)
        state.z = np.minimum(state.z, f)
        scan = rng.permutation(pool)
        F_scan = np.array([pop[j].f for j in scan])
        g_old = _tchebycheff_rows(F_scan, W[scan], state.z)
        g_new = _tchebycheff_rows(np.broadcast_to(f, F_scan.shape), W[scan], state.z)
        replaced = 0
        for k, j in enumerate(scan):
            if replaced >= p.max_replacements:
                break
            if g_new[k] < g_old[k]:
                pop[j] = Individual(child, f, t)
                replaced += 1
    state.generation += 1
    return state
