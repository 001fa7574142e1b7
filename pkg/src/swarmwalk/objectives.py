"""Benchmark objective functions, their search domains, and swarm initialization.

Five benchmarks are provided: sphere, rosenbrock and rastrigin (single
objective) plus binh4 and schaffer_n1 (two objectives each, collapsed to one
fitness value by weighted-sum scalarization).  Each comes with an asymmetric
initialization sub-range: particles start in a corner of the search box that
does not contain the optimum, so an optimizer has to travel, not just refine.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = [
    "SearchDomain",
    "ObjectiveSpec",
    "FUNCTION_NAMES",
    "eval_sphere",
    "eval_rosenbrock",
    "eval_rastrigin",
    "eval_binh4",
    "eval_schaffer_n1",
    "scalarize",
    "init_positions",
    "make_objective",
]


@dataclass(frozen=True)
class SearchDomain:
    """Box-bounded search region with a nested initialization sub-range.

    The init range may be degenerate (init_lower == init_upper) which pins
    every particle to a single starting point; the outer box may not.
    """

    lower: np.ndarray
    upper: np.ndarray
    init_lower: np.ndarray
    init_upper: np.ndarray

    def __post_init__(self):
        for name in ("lower", "upper", "init_lower", "init_upper"):
            value = np.atleast_1d(np.asarray(getattr(self, name), dtype=float))
            object.__setattr__(self, name, value)
        dim = self.lower.shape[0]
        for name in ("upper", "init_lower", "init_upper"):
            if getattr(self, name).shape != (dim,):
                raise ValueError("domain bound vectors must share one length")
        if not np.all(self.lower < self.upper):
            raise ValueError("lower bound must be strictly below upper bound")
        nested = (
            np.all(self.lower <= self.init_lower)
            and np.all(self.init_lower <= self.init_upper)
            and np.all(self.init_upper <= self.upper)
        )
        if not nested:
            raise ValueError("init range must nest inside the domain bounds")

    @property
    def dim(self) -> int:
        return self.lower.shape[0]

    @property
    def width(self) -> np.ndarray:
        return self.upper - self.lower

    def clamp(self, x: np.ndarray) -> np.ndarray:
        return np.clip(x, self.lower, self.upper)

    @classmethod
    def uniform(cls, dim: int, lower: float, upper: float,
                init_lower: float, init_upper: float) -> "SearchDomain":
        """Build a domain with the same scalar bounds in every coordinate."""
        return cls(
            np.full(dim, float(lower)),
            np.full(dim, float(upper)),
            np.full(dim, float(init_lower)),
            np.full(dim, float(init_upper)),
        )


def _check_finite(x) -> np.ndarray:
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if not np.all(np.isfinite(x)):
        raise ValueError("objective input must be finite")
    return x


def eval_sphere(x) -> float:
    """f(x) = sum(x_i^2); minimum f(0, ..., 0) = 0."""
    x = _check_finite(x)
    return float(np.sum(x * x))


def eval_rosenbrock(x) -> float:
    """f(x) = sum_i 100 (x_{i+1} - x_i^2)^2 + (x_i - 1)^2; minimum f(1, ..., 1) = 0.

    Needs at least two coordinates.
    """
    x = _check_finite(x)
    if x.shape[0] < 2:
        raise ValueError("rosenbrock needs at least 2 dimensions")
    head, tail = x[:-1], x[1:]
    return float(np.sum(100.0 * (tail - head * head) ** 2 + (head - 1.0) ** 2))


def eval_rastrigin(x, amplitude: float = 10.0) -> float:
    """f(x) = A n + sum_i (x_i^2 - A cos(2 pi x_i)); minimum f(0, ..., 0) = 0."""
    x = _check_finite(x)
    n = x.shape[0]
    return float(amplitude * n + np.sum(x * x - amplitude * np.cos(2.0 * np.pi * x)))


def eval_binh4(x: float, y: float) -> tuple[float, float]:
    """Two-objective Binh test function 4: (x^2 - y, -0.5 x - y - 1).

    Arguments must lie in the closed box [-7, 4]^2; the closed check keeps
    positions clamped onto the boundary evaluable.
    """
    if not (np.isfinite(x) and np.isfinite(y)):
        raise ValueError("objective input must be finite")
    if not (-7.0 <= x <= 4.0 and -7.0 <= y <= 4.0):
        raise ValueError(f"binh4 input ({x}, {y}) outside [-7, 4]^2")
    return (x * x - y, -0.5 * x - y - 1.0)


def eval_schaffer_n1(x: float, bound: float = 100.0) -> tuple[float, float]:
    """Two-objective Schaffer N.1: (x^2, (x - 2)^2) on [-bound, bound]."""
    if not np.isfinite(x):
        raise ValueError("objective input must be finite")
    if not -bound <= x <= bound:
        raise ValueError(f"schaffer_n1 input {x} outside [-{bound}, {bound}]")
    return (x * x, (x - 2.0) * (x - 2.0))


def scalarize(objectives, weights) -> float:
    """Weighted sum collapsing an objective vector to a single fitness value."""
    obj = np.atleast_1d(np.asarray(objectives, dtype=float))
    w = np.atleast_1d(np.asarray(weights, dtype=float))
    if obj.shape != w.shape:
        raise ValueError(
            f"{obj.shape[0]} objectives do not match {w.shape[0]} weights"
        )
    return float(np.dot(obj, w))


def init_positions(domain: SearchDomain, n_particles: int, rng: np.random.Generator) -> np.ndarray:
    """Draw an (N, dim) array of starting positions, uniform over the init range."""
    if n_particles < 2:
        raise ValueError("a swarm needs at least 2 particles")
    return rng.uniform(domain.init_lower, domain.init_upper,
                       size=(n_particles, domain.dim))


@dataclass(frozen=True)
class ObjectiveSpec:
    """A benchmark problem: component evaluator plus protocol metadata.

    `components` maps a position to the tuple of raw objective values
    (length 1 for single-objective functions); `evaluate` scalarizes them
    with `scalarization_weights`.  Evaluators are pure and deterministic.
    """

    name: str
    domain: SearchDomain
    components: Callable[[np.ndarray], tuple[float, ...]]
    sense: str = "minimize"
    known_optimum_value: float | None = None
    scalarization_weights: tuple[float, ...] = (1.0,)

    def __post_init__(self):
        if self.sense not in ("minimize", "maximize"):
            raise ValueError(f"unknown sense {self.sense!r}")
        w = np.asarray(self.scalarization_weights, dtype=float)
        if np.any(w < 0.0) or abs(float(w.sum()) - 1.0) > 1e-9:
            raise ValueError("scalarization weights must be >= 0 and sum to 1")

    @property
    def dim(self) -> int:
        return self.domain.dim

    def evaluate(self, x) -> float:
        return scalarize(self.components(np.asarray(x, dtype=float)),
                         self.scalarization_weights)

    def is_better(self, a: float, b: float) -> bool:
        """True when fitness a beats fitness b under this objective's sense."""
        return a < b if self.sense == "minimize" else a > b

    def meets_threshold(self, value: float, threshold: float | None) -> bool:
        if threshold is None:
            return False
        if self.sense == "minimize":
            return value <= threshold
        return value >= threshold


# (lower, upper, init_lower, init_upper) per coordinate for the box domains.
_DOMAIN_DEFAULTS = {
    "sphere": (-100.0, 100.0, 50.0, 100.0),
    "rosenbrock": (-30.0, 30.0, 15.0, 30.0),
    "rastrigin": (-5.12, 5.12, 2.56, 5.12),
    "binh4": (-7.0, 4.0, 0.0, 4.0),
}

FUNCTION_NAMES = ("sphere", "rosenbrock", "rastrigin", "binh4", "schaffer_n1")

# binh4 is intrinsically 2-D and schaffer_n1 1-D; the benchmark protocol may
# still sweep a nominal dimension over them, which these functions ignore.
_FIXED_DIMS = {"binh4": 2, "schaffer_n1": 1}

EQUAL_WEIGHTS = (0.5, 0.5)


def make_objective(
    name: str,
    dim: int | None = None,
    *,
    lower=None,
    upper=None,
    init_lower=None,
    init_upper=None,
    weights=None,
    bound: float = 100.0,
    amplitude: float = 10.0,
) -> ObjectiveSpec:
    """Build one of the five benchmark objectives with its default domain.

    Parameters
    ----------
    name : one of FUNCTION_NAMES.
    dim : search-space dimension; required for the three scalable functions,
        ignored by binh4 (always 2-D) and schaffer_n1 (always 1-D).
    lower, upper, init_lower, init_upper : optional per-coordinate overrides
        for the domain; scalars broadcast across coordinates.
    weights : scalarization weights for the two-objective functions
        (default equal weights).
    bound : half-width of the schaffer_n1 domain (its init range is the
        upper half [bound/2, bound]).
    amplitude : rastrigin's A constant.
    """
    if name not in FUNCTION_NAMES:
        raise ValueError(f"unknown objective {name!r}; choose one of {FUNCTION_NAMES}")

    if name in _FIXED_DIMS:
        dim = _FIXED_DIMS[name]
    elif dim is None:
        raise ValueError(f"{name} needs an explicit dimension")
    elif dim < 1 or (name == "rosenbrock" and dim < 2):
        raise ValueError(f"invalid dimension {dim} for {name}")

    if name == "schaffer_n1":
        if not 10.0 <= bound <= 1e5:
            raise ValueError("schaffer_n1 bound must be in [10, 1e5]")
        defaults = (-bound, bound, bound / 2.0, bound)
    else:
        defaults = _DOMAIN_DEFAULTS[name]

    chosen = [
        defaults[i] if value is None else value
        for i, value in enumerate((lower, upper, init_lower, init_upper))
    ]
    bounds = [np.broadcast_to(np.asarray(b, dtype=float), (dim,)).copy() for b in chosen]
    domain = SearchDomain(*bounds)

    if name == "sphere":
        components = lambda x: (eval_sphere(x),)
    elif name == "rosenbrock":
        components = lambda x: (eval_rosenbrock(x),)
    elif name == "rastrigin":
        components = lambda x: (eval_rastrigin(x, amplitude),)
    elif name == "binh4":
        components = lambda x: eval_binh4(float(x[0]), float(x[1]))
    else:
        components = lambda x: eval_schaffer_n1(float(x[0]), bound)

    n_objectives = 2 if name in ("binh4", "schaffer_n1") else 1
    if weights is None:
        weights = EQUAL_WEIGHTS if n_objectives == 2 else (1.0,)
    weights = tuple(float(w) for w in np.atleast_1d(weights))
    if len(weights) != n_objectives:
        raise ValueError(f"{name} needs {n_objectives} scalarization weights")

    known = 0.0 if name in ("sphere", "rosenbrock", "rastrigin") else None
    return ObjectiveSpec(
        name=name,
        domain=domain,
        components=components,
        sense="minimize",
        known_optimum_value=known,
        scalarization_weights=weights,
    )
