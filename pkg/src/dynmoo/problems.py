"""The DF dynamic benchmark suite (DF1-DF14) and its time controller.

The fourteen problems follow the public CEC2018 competition definitions for
dynamic multi-objective optimization: bi-objective DF1-DF9 and tri-objective
DF10-DF14, each a pure function of a decision vector ``x`` and a time
parameter ``t``.  Time itself is piecewise constant in the generation
counter: after an initial static phase, ``t`` advances by ``1/n_t`` every
``tau_t`` generations.

Every problem exposes closed-form samplers for its analytic Pareto set and
front.  Both are produced from the same parameterization of the optimal
manifold, so evaluating a sampled Pareto set lands exactly on the sampled
front; disconnected fronts are handled by oversampling the parameter grid
and discarding dominated pieces.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import ContractError, ConfigurationError, nondominated_filter

__all__ = [
    "DynamicConfig",
    "DfProblem",
    "UnsupportedProblemError",
    "time_of_generation",
    "environment_of_generation",
    "get_problem",
    "PROBLEM_IDS",
    "default_front_size",
]

PI = np.pi


class UnsupportedProblemError(ValueError):
    """Requested problem id is not part of the implemented suite."""


@dataclass(frozen=True)
class DynamicConfig:
    """Schedule of environmental change.

    n_t: change severity (larger = milder steps, t moves in 1/n_t increments).
    tau_t: generations per environment window.
    n_environments: environment windows recorded per run.
    warmup: static generations at t=0 before the schedule starts.
    """

    n_t: int
    tau_t: int
    n_environments: int = 30
    warmup: int = 50

    def __post_init__(self):
        if self.n_t < 1 or self.tau_t < 1:
            raise ConfigurationError("n_t and tau_t must be >= 1")
        if self.n_environments < 1 or self.warmup < 0:
            raise ConfigurationError("bad environment/warmup counts")

    @property
    def total_generations(self) -> int:
        return self.warmup + self.n_environments * self.tau_t


def environment_of_generation(tau: int, cfg: DynamicConfig) -> int:
    """Environment index of generation ``tau`` (0 during warmup)."""
    if tau < 0:
        raise ContractError("generation counter must be >= 0")
    return max(0, tau - cfg.warmup) // cfg.tau_t


def time_of_generation(tau: int, cfg: DynamicConfig) -> float:
    """Time parameter of generation ``tau``: environment index / n_t."""
    return environment_of_generation(tau, cfg) / cfg.n_t


def default_front_size(m: int) -> int:
    """Reference-front sample size used by the metrics (1000 bi / 1500 tri)."""
    return 1000 if m == 2 else 1500


def _thin_rows(F: np.ndarray, extras: list[np.ndarray], count: int):
    """Deterministically thin rows to ``count``, spread along the sorted order."""
    order = np.lexsort(F.T[::-1])
    if len(order) > count:
        pick = np.linspace(0, len(order) - 1, count).round().astype(int)
        order = order[pick]
    return [F[order]] + [e[order] for e in extras]


class DfProblem:
    """Base class: a time-varying box-constrained minimization problem."""

    problem_id: str = ""
    m: int = 2
    n_position: int = 1  # leading decision variables that parameterize the front

    def __init__(self, n: int = 10):
        if n <= self.n_position:
            raise ConfigurationError(f"{self.problem_id} needs n > {self.n_position}")
        self.n = n
        self.bounds = self._make_bounds()

    def __repr__(self):
        return f"{self.problem_id}(n={self.n}, m={self.m})"

    def _make_bounds(self) -> np.ndarray:
        raise NotImplementedError

    def _objectives(self, X: np.ndarray, t: float) -> np.ndarray:
        raise NotImplementedError

    def evaluate(self, x, t: float) -> np.ndarray:
        """Objective vector of a single decision vector at time ``t``."""
        x = np.asarray(x, dtype=float)
        f = self._objectives(x[None, :], float(t))[0]
        if not np.all(np.isfinite(f)):
            raise ContractError(f"{self.problem_id} produced non-finite objectives")
        return f

    def evaluate_batch(self, X, t: float) -> np.ndarray:
        X = np.asarray(X, dtype=float)
        F = self._objectives(X, float(t))
        if not np.all(np.isfinite(F)):
            raise ContractError(f"{self.problem_id} produced non-finite objectives")
        return F

    # -- analytic optimum sampling ------------------------------------------

    def _pareto_params(self, t: float, k: int, feasible: bool) -> np.ndarray:
        """Grid over the front parameterization, shape (>=k, n_position).

        ``feasible`` restricts the grid to the decision box (only DF4's
        reference front extends past it, following the benchmark convention).
        """
        if self.n_position == 1:
            return np.linspace(0.0, 1.0, k)[:, None]
        side = int(np.ceil(np.sqrt(k)))
        u = np.linspace(0.0, 1.0, side)
        a, b = np.meshgrid(u, u, indexing="ij")
        return np.column_stack([a.ravel(), b.ravel()])

    def _pareto_set(self, t: float, params: np.ndarray) -> np.ndarray:
        """Decision vectors on the optimal manifold for the given parameters."""
        raise NotImplementedError

    def _sample_optimum(self, t: float, count: int, feasible: bool):
        k = count
        for _ in range(12):
            params = self._pareto_params(float(t), k, feasible)
            X = self._pareto_set(float(t), params)
            F = self.evaluate_batch(X, t)
            keep = nondominated_filter(F)
            if len(keep) >= count:
                return _thin_rows(F[keep], [X[keep]], count)
            k *= 2
        raise RuntimeError(f"{self.problem_id}: could not collect {count} front points")

    def true_front(self, t: float, count: int) -> np.ndarray:
        """Near-uniform sample of the analytic Pareto front at time ``t``."""
        if count < 2:
            raise ContractError("front sample needs count >= 2")
        F, _ = self._sample_optimum(t, count, feasible=False)
        return F

    def true_set(self, t: float, count: int) -> np.ndarray:
        """Sample of the analytic Pareto set at time ``t`` (box-feasible)."""
        if count == 0:
            return np.empty((0, self.n))
        if count < 0:
            raise ContractError("count must be >= 0")
        _, X = self._sample_optimum(t, max(count, 2), feasible=True)
        return X[:count] if count < 2 else X


def _box(n, first, rest, n_first=1):
    b = np.empty((n, 2))
    b[:n_first] = first
    b[n_first:] = rest
    return b


def _nonneg(u):
    # formulas below are >= 0 analytically; clip float dust before fractional powers
    return np.maximum(u, 0.0)


class DF1(DfProblem):
    problem_id = "DF1"

    def _make_bounds(self):
        return _box(self.n, (0, 1), (0, 1))

    def _objectives(self, X, t):
        G = abs(np.sin(0.5 * PI * t))
        H = 0.75 * np.sin(0.5 * PI * t) + 1.25
        g = 1 + np.sum((X[:, 1:] - G) ** 2, axis=1)
        f1 = X[:, 0]
        f2 = g * (1 - (f1 / g) ** H)
        return np.column_stack([f1, f2])

    def _pareto_set(self, t, params):
        G = abs(np.sin(0.5 * PI * t))
        X = np.full((len(params), self.n), G)
        X[:, 0] = params[:, 0]
        return X


class DF2(DfProblem):
    problem_id = "DF2"

    def _make_bounds(self):
        return _box(self.n, (0, 1), (0, 1))

    def _position_index(self, t):
        G = abs(np.sin(0.5 * PI * t))
        return min(int(np.floor((self.n - 1) * G)), self.n - 1)

    def _objectives(self, X, t):
        G = abs(np.sin(0.5 * PI * t))
        r = self._position_index(t)
        rest = np.delete(X, r, axis=1)
        g = 1 + np.sum((rest - G) ** 2, axis=1)
        f1 = X[:, r]
        f2 = g * (1 - (f1 / g) ** 0.5)
        return np.column_stack([f1, f2])

    def _pareto_set(self, t, params):
        G = abs(np.sin(0.5 * PI * t))
        X = np.full((len(params), self.n), G)
        X[:, self._position_index(t)] = params[:, 0]
        return X


class DF3(DfProblem):
    problem_id = "DF3"

    def _make_bounds(self):
        return _box(self.n, (0, 1), (-1, 2))

    def _objectives(self, X, t):
        G = np.sin(0.5 * PI * t)
        H = G + 1.5
        g = 1 + np.sum((X[:, 1:] - G - X[:, :1] ** H) ** 2, axis=1)
        f1 = X[:, 0]
        f2 = g * (1 - (f1 / g) ** H)
        return np.column_stack([f1, f2])

    def _pareto_set(self, t, params):
        G = np.sin(0.5 * PI * t)
        H = G + 1.5
        x1 = params[:, 0]
        X = np.empty((len(params), self.n))
        X[:, 0] = x1
        X[:, 1:] = (G + x1**H)[:, None]
        return X


class DF4(DfProblem):
    problem_id = "DF4"

    def _make_bounds(self):
        return _box(self.n, (-2, 2), (-2, 2))

    def _objectives(self, X, t):
        a = np.sin(0.5 * PI * t)
        b = 1 + abs(np.cos(0.5 * PI * t))
        H = 1.5 + a
        i = np.arange(2, self.n + 1)
        g = 1 + np.sum((X[:, 1:] - a * X[:, :1] ** 2 / i) ** 2, axis=1)
        f1 = g * np.abs(X[:, 0] - a) ** H
        f2 = g * np.abs(X[:, 0] - a - b) ** H
        return np.column_stack([f1, f2])

    def _pareto_params(self, t, k, feasible):
        # front spans x1 in [a, a+b]; the benchmark's reference front keeps
        # that full range even where it leaves the box, the set sample does not
        a = np.sin(0.5 * PI * t)
        b = 1 + abs(np.cos(0.5 * PI * t))
        lo, hi = (max(a, -2.0), min(a + b, 2.0)) if feasible else (a, a + b)
        return np.linspace(lo, hi, k)[:, None]

    def _pareto_set(self, t, params):
        a = np.sin(0.5 * PI * t)
        x1 = params[:, 0]
        i = np.arange(2, self.n + 1)
        X = np.empty((len(params), self.n))
        X[:, 0] = x1
        X[:, 1:] = a * x1[:, None] ** 2 / i
        return X


class DF5(DfProblem):
    problem_id = "DF5"

    def _make_bounds(self):
        return _box(self.n, (0, 1), (-1, 1))

    def _objectives(self, X, t):
        G = np.sin(0.5 * PI * t)
        w = np.floor(10 * G)
        g = 1 + np.sum((X[:, 1:] - G) ** 2, axis=1)
        x1 = X[:, 0]
        ripple = 0.02 * np.sin(w * PI * x1)
        return np.column_stack([g * (x1 + ripple), g * (1 - x1 + ripple)])

    def _pareto_set(self, t, params):
        G = np.sin(0.5 * PI * t)
        X = np.full((len(params), self.n), G)
        X[:, 0] = params[:, 0]
        return X


class DF6(DfProblem):
    problem_id = "DF6"

    def _make_bounds(self):
        return _box(self.n, (0, 1), (-1, 1))

    def _objectives(self, X, t):
        G = np.sin(0.5 * PI * t)
        a = 0.2 + 2.8 * abs(G)
        y = X[:, 1:] - G
        g = 1 + np.sum(abs(G) * y**2 - 10 * np.cos(2 * PI * y) + 10, axis=1)
        x1 = X[:, 0]
        ripple = 0.1 * np.sin(3 * PI * x1)
        f1 = g * _nonneg(x1 + ripple) ** a
        f2 = g * _nonneg(1 - x1 + ripple) ** a
        return np.column_stack([f1, f2])

    def _pareto_set(self, t, params):
        G = np.sin(0.5 * PI * t)
        X = np.full((len(params), self.n), G)
        X[:, 0] = params[:, 0]
        return X


class DF7(DfProblem):
    problem_id = "DF7"

    def _make_bounds(self):
        return _box(self.n, (1, 4), (0, 1))

    def _objectives(self, X, t):
        a = 5 * np.cos(0.5 * PI * t)
        x1 = X[:, 0]
        anchor = 1 / (1 + np.exp(a * (x1 - 2.5)))
        g = 1 + np.sum((X[:, 1:] - anchor[:, None]) ** 2, axis=1)
        return np.column_stack([g * (1 + t) / x1, g * x1 / (1 + t)])

    def _pareto_params(self, t, k, feasible):
        return np.linspace(1.0, 4.0, k)[:, None]

    def _pareto_set(self, t, params):
        a = 5 * np.cos(0.5 * PI * t)
        x1 = params[:, 0]
        X = np.empty((len(params), self.n))
        X[:, 0] = x1
        X[:, 1:] = (1 / (1 + np.exp(a * (x1 - 2.5))))[:, None]
        return X


class DF8(DfProblem):
    problem_id = "DF8"

    def _make_bounds(self):
        return _box(self.n, (0, 1), (-1, 1))

    def _objectives(self, X, t):
        G = np.sin(0.5 * PI * t)
        a = 2.25 + 2 * np.cos(2 * PI * t)
        b = 100 * G**2
        x1 = X[:, 0]
        anchor = G * np.sin(4 * PI * x1**b) / (1 + abs(G))
        g = 1 + np.sum((X[:, 1:] - anchor[:, None]) ** 2, axis=1)
        ripple = 0.1 * np.sin(3 * PI * x1)
        f1 = g * (x1 + ripple)
        f2 = g * _nonneg(1 - x1 + ripple) ** a
        return np.column_stack([f1, f2])

    def _pareto_set(self, t, params):
        G = np.sin(0.5 * PI * t)
        b = 100 * G**2
        x1 = params[:, 0]
        X = np.empty((len(params), self.n))
        X[:, 0] = x1
        X[:, 1:] = (G * np.sin(4 * PI * x1**b) / (1 + abs(G)))[:, None]
        return X


class DF9(DfProblem):
    problem_id = "DF9"

    def _make_bounds(self):
        return _box(self.n, (0, 1), (-1, 1))

    def _objectives(self, X, t):
        npeaks = 1 + int(np.floor(10 * abs(np.sin(0.5 * PI * t))))
        # chained distance term: each variable tracks a cosine of its predecessor
        g = np.ones(len(X))
        for i in range(1, self.n):
            g += (X[:, i] - np.cos(4 * t + X[:, 0] + X[:, i - 1])) ** 2
        x1 = X[:, 0]
        bump = np.maximum(0.0, (0.1 + 0.5 / npeaks) * np.sin(2 * npeaks * PI * x1))
        return np.column_stack([g * (x1 + bump), g * (1 - x1 + bump)])

    def _pareto_set(self, t, params):
        X = np.empty((len(params), self.n))
        X[:, 0] = params[:, 0]
        for i in range(1, self.n):
            X[:, i] = np.cos(4 * t + X[:, 0] + X[:, i - 1])
        return X


class DF10(DfProblem):
    problem_id = "DF10"
    m = 3
    n_position = 2

    def _make_bounds(self):
        return _box(self.n, (0, 1), (-1, 1), n_first=2)

    def _objectives(self, X, t):
        G = np.sin(0.5 * PI * t)
        H = 2.25 + 2 * np.cos(0.5 * PI * t)
        x1, x2 = X[:, 0], X[:, 1]
        anchor = np.sin(2 * PI * (x1 + x2)) / (1 + abs(G))
        g = 1 + np.sum((X[:, 2:] - anchor[:, None]) ** 2, axis=1)
        s1, c1 = np.sin(0.5 * PI * x1), np.cos(0.5 * PI * x1)
        s2, c2 = np.sin(0.5 * PI * x2), np.cos(0.5 * PI * x2)
        f1 = g * _nonneg(s1) ** H
        f2 = g * _nonneg(s2) ** H * _nonneg(c1) ** H
        f3 = g * _nonneg(c2) ** H * _nonneg(c1) ** H
        return np.column_stack([f1, f2, f3])

    def _pareto_set(self, t, params):
        G = np.sin(0.5 * PI * t)
        x1, x2 = params[:, 0], params[:, 1]
        X = np.empty((len(params), self.n))
        X[:, 0], X[:, 1] = x1, x2
        X[:, 2:] = (np.sin(2 * PI * (x1 + x2)) / (1 + abs(G)))[:, None]
        return X


class DF11(DfProblem):
    problem_id = "DF11"
    m = 3
    n_position = 2

    def _make_bounds(self):
        return _box(self.n, (0, 1), (-1, 1), n_first=2)

    def _objectives(self, X, t):
        G = abs(np.sin(0.5 * PI * t))
        x1, x2 = X[:, 0], X[:, 1]
        g = 1 + G + np.sum((X[:, 2:] - 0.5 * G * x1[:, None]) ** 2, axis=1)
        y1 = PI * G / 6 + (PI / 2 - PI * G / 3) * x1
        y2 = PI * G / 6 + (PI / 2 - PI * G / 3) * x2
        f1 = g * np.sin(y1)
        f2 = g * np.sin(y2) * np.cos(y1)
        f3 = g * np.cos(y2) * np.cos(y1)
        return np.column_stack([f1, f2, f3])

    def _pareto_set(self, t, params):
        G = abs(np.sin(0.5 * PI * t))
        x1, x2 = params[:, 0], params[:, 1]
        X = np.empty((len(params), self.n))
        X[:, 0], X[:, 1] = x1, x2
        X[:, 2:] = (0.5 * G * x1)[:, None]
        return X


class DF12(DfProblem):
    problem_id = "DF12"
    m = 3
    n_position = 2

    def _make_bounds(self):
        return _box(self.n, (0, 1), (-1, 1), n_first=2)

    def _objectives(self, X, t):
        k = 10 * np.sin(PI * t)
        x1, x2 = X[:, 0], X[:, 1]
        ridge = np.abs(np.sin(np.floor(k * (2 * x1 - 1)) * PI / 2)
                       * np.sin(np.floor(k * (2 * x2 - 1)) * PI / 2))
        g = 1 + ridge + np.sum((X[:, 2:] - np.sin(t * x1)[:, None]) ** 2, axis=1)
        f1 = g * np.cos(0.5 * PI * x2) * np.cos(0.5 * PI * x1)
        f2 = g * np.sin(0.5 * PI * x2) * np.cos(0.5 * PI * x1)
        f3 = g * np.sin(0.5 * PI * x1)
        return np.column_stack([f1, f2, f3])

    def _pareto_set(self, t, params):
        x1, x2 = params[:, 0], params[:, 1]
        X = np.empty((len(params), self.n))
        X[:, 0], X[:, 1] = x1, x2
        X[:, 2:] = np.sin(t * x1)[:, None]
        return X


class DF13(DfProblem):
    problem_id = "DF13"
    m = 3
    n_position = 2

    def _make_bounds(self):
        return _box(self.n, (0, 1), (-1, 1), n_first=2)

    def _objectives(self, X, t):
        G = np.sin(0.5 * PI * t)
        p = int(np.floor(6 * G))
        x1, x2 = X[:, 0], X[:, 1]
        g = 1 + np.sum((X[:, 2:] - G) ** 2, axis=1)
        f1 = g * np.cos(0.5 * PI * x1) ** 2
        f2 = g * np.cos(0.5 * PI * x2) ** 2
        f3 = g * (np.sin(0.5 * PI * x1) ** 2
                  + np.sin(0.5 * PI * x1) * np.cos(p * PI * x1) ** 2
                  + np.sin(0.5 * PI * x2) ** 2
                  + np.sin(0.5 * PI * x2) * np.cos(p * PI * x2) ** 2)
        return np.column_stack([f1, f2, f3])

    def _pareto_set(self, t, params):
        G = np.sin(0.5 * PI * t)
        X = np.full((len(params), self.n), G)
        X[:, 0], X[:, 1] = params[:, 0], params[:, 1]
        return X


class DF14(DfProblem):
    problem_id = "DF14"
    m = 3
    n_position = 2

    def _make_bounds(self):
        return _box(self.n, (0, 1), (-1, 1), n_first=2)

    def _objectives(self, X, t):
        G = np.sin(0.5 * PI * t)
        x1, x2 = X[:, 0], X[:, 1]
        g = 1 + np.sum((X[:, 2:] - G) ** 2, axis=1)
        y = 0.5 + G * (x1 - 0.5)
        wy = y + 0.05 * np.sin(6 * PI * y)
        f1 = g * (1 - y + 0.05 * np.sin(6 * PI * y))
        f2 = g * (1 - x2 + 0.05 * np.sin(6 * PI * x2)) * wy
        f3 = g * (x2 + 0.05 * np.sin(6 * PI * x2)) * wy
        return np.column_stack([f1, f2, f3])

    def _pareto_set(self, t, params):
        G = np.sin(0.5 * PI * t)
        X = np.full((len(params), self.n), G)
        X[:, 0], X[:, 1] = params[:, 0], params[:, 1]
        return X


_PROBLEM_CLASSES = [DF1, DF2, DF3, DF4, DF5, DF6, DF7, DF8, DF9,
                    DF10, DF11, DF12, DF13, DF14]
PROBLEM_IDS = [cls.problem_id for cls in _PROBLEM_CLASSES]
_REGISTRY = {cls.problem_id: cls for cls in _PROBLEM_CLASSES}


def get_problem(problem_id: str, n: int = 10) -> DfProblem:
    """Instantiate a suite problem by string id ("DF1".."DF14")."""
    cls = _REGISTRY.get(str(problem_id).upper())
    if cls is None:
        raise UnsupportedProblemError(
            f"unknown problem {problem_id!r}; available: {', '.join(PROBLEM_IDS)}")
    return cls(n=n)
