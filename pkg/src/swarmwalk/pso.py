"""Inertia-weight particle swarm optimizer (the comparison baseline).

Classic formulation: each particle keeps a velocity, its own best position,
and the swarm shares a global best.  The inertia weight decays linearly from
w_start to w_end across the run.  R1/R2 are drawn per particle per dimension
by default; the historical scalar-per-particle convention is available
behind a flag but collapses the swarm onto a line on corner-initialized
problems.  Positions clamp to the box; the velocity component of a clamped
coordinate is reflected and damped so the swarm cannot wedge on a boundary
with every attraction term zeroed out.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from swarmwalk.objectives import ObjectiveSpec, SearchDomain, init_positions
from swarmwalk.results import RunResult, mean_best_fitness

__all__ = [
    "PsoConfig",
    "PsoState",
    "inertia_weight",
    "pso_update_velocity",
    "pso_update_position",
    "init_state",
    "pso_step",
    "pso_run",
]


@dataclass(frozen=True)
class PsoConfig:
    """Tunables for one baseline run.

    `v_max`, when set, clamps each velocity component to that fraction of the
    domain width in its dimension.  `bounce_damping` scales the reflected
    velocity when a coordinate hits the box (0 absorbs, 1 bounces losslessly).
    """

    swarm_size: int
    dim: int
    max_iterations: int
    seed: int = 0
    c1: float = 2.0
    c2: float = 2.0
    w_start: float = 0.9
    w_end: float = 0.4
    v_max: float | None = None
    fitness_threshold: float | None = None
    r_per_dimension: bool = True
    bounce_damping: float = 0.5

    def __post_init__(self):
        if self.swarm_size < 2:
            raise ValueError("swarm_size must be >= 2")
        if self.dim < 1:
            raise ValueError("dim must be >= 1")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if self.c1 < 0.0 or self.c2 < 0.0:
            raise ValueError("learning rates c1 and c2 must be >= 0")
        if not self.w_start >= self.w_end >= 0.0:
            raise ValueError("need w_start >= w_end >= 0")
        if self.v_max is not None and self.v_max <= 0.0:
            raise ValueError("v_max must be > 0 when set")
        if not 0.0 <= self.bounce_damping <= 1.0:
            raise ValueError("bounce_damping must be in [0, 1]")


def inertia_weight(config: PsoConfig, iteration: int) -> float:
    """Linear schedule hitting w_start at iteration 0 and w_end at the last one."""
    span = config.max_iterations - 1
    if span <= 0:
        return config.w_start
    fraction = min(max(iteration / span, 0.0), 1.0)
    return config.w_start + (config.w_end - config.w_start) * fraction


def _velocity_limit(config: PsoConfig, domain: SearchDomain) -> np.ndarray | None:
    if config.v_max is None:
        return None
    return config.v_max * domain.width


def pso_update_velocity(
    velocity,
    position,
    personal_best,
    global_best,
    w: float,
    config: PsoConfig,
    rng: np.random.Generator,
    domain: SearchDomain | None = None,
) -> np.ndarray:
    """One particle's new velocity: w*v + c1*R1*(pbest - x) + c2*R2*(gbest - x)."""
    v = np.asarray(velocity, dtype=float)
    x = np.asarray(position, dtype=float)
    if config.r_per_dimension:
        r1, r2 = rng.random((2, x.shape[0]))
    else:
        r1, r2 = rng.random(2)
    new_v = (
        w * v
        + config.c1 * r1 * (np.asarray(personal_best, dtype=float) - x)
        + config.c2 * r2 * (np.asarray(global_best, dtype=float) - x)
    )
    if config.v_max is not None:
        if domain is None:
            raise ValueError("v_max clamping needs the search domain")
        limit = _velocity_limit(config, domain)
        new_v = np.clip(new_v, -limit, limit)
    return new_v


def pso_update_position(position, velocity, domain: SearchDomain) -> np.ndarray:
    """New position = x + v, clamped to the box."""
    return domain.clamp(np.asarray(position, dtype=float) + velocity)


@dataclass
class PsoState:
    positions: np.ndarray
    velocities: np.ndarray
    fitnesses: np.ndarray
    personal_best_positions: np.ndarray
    personal_best_fitnesses: np.ndarray
    global_best_position: np.ndarray
    global_best_fitness: float
    iteration: int
    best_fitness_trace: list[float] = field(default_factory=list)


def init_state(objective: ObjectiveSpec, config: PsoConfig,
               rng: np.random.Generator) -> PsoState:
    """Asymmetric-init positions, zero velocities, bests seeded from the start."""
    positions = init_positions(objective.domain, config.swarm_size, rng)
    fitnesses = np.array([objective.evaluate(p) for p in positions])
    best = int(np.argmin(fitnesses) if objective.sense == "minimize"
               else np.argmax(fitnesses))
    return PsoState(
        positions=positions,
        velocities=np.zeros_like(positions),
        fitnesses=fitnesses,
        personal_best_positions=positions.copy(),
        personal_best_fitnesses=fitnesses.copy(),
        global_best_position=positions[best].copy(),
        global_best_fitness=float(fitnesses[best]),
        iteration=0,
    )


def pso_step(state: PsoState, objective: ObjectiveSpec, config: PsoConfig,
             rng: np.random.Generator) -> PsoState:
    """Advance the swarm one iteration (batched R1 draws, then batched R2)."""
    n = config.swarm_size
    w = inertia_weight(config, state.iteration)
    if config.r_per_dimension:
        r1 = rng.random((n, config.dim))
        r2 = rng.random((n, config.dim))
    else:
        r1 = rng.random((n, 1))
        r2 = rng.random((n, 1))

    velocities = (
        w * state.velocities
        + config.c1 * r1 * (state.personal_best_positions - state.positions)
        + config.c2 * r2 * (state.global_best_position - state.positions)
    )
    limit = _velocity_limit(config, objective.domain)
    if limit is not None:
        velocities = np.clip(velocities, -limit, limit)
    raw = state.positions + velocities
    positions = objective.domain.clamp(raw)
    hit = (raw < objective.domain.lower) | (raw > objective.domain.upper)
    velocities = np.where(hit, -config.bounce_damping * velocities, velocities)
    fitnesses = np.array([objective.evaluate(p) for p in positions])

    if objective.sense == "minimize":
        improved = fitnesses < state.personal_best_fitnesses
    else:
        improved = fitnesses > state.personal_best_fitnesses
    personal_best_positions = np.where(improved[:, None], positions,
                                       state.personal_best_positions)
    personal_best_fitnesses = np.where(improved, fitnesses,
                                       state.personal_best_fitnesses)

    best = int(np.argmin(personal_best_fitnesses) if objective.sense == "minimize"
               else np.argmax(personal_best_fitnesses))
    global_best_fitness = state.global_best_fitness
    global_best_position = state.global_best_position
    if objective.is_better(float(personal_best_fitnesses[best]), global_best_fitness):
        global_best_fitness = float(personal_best_fitnesses[best])
        global_best_position = personal_best_positions[best].copy()

    return PsoState(
        positions=positions,
        velocities=velocities,
        fitnesses=fitnesses,
        personal_best_positions=personal_best_positions,
        personal_best_fitnesses=personal_best_fitnesses,
        global_best_position=global_best_position,
        global_best_fitness=global_best_fitness,
        iteration=state.iteration + 1,
        best_fitness_trace=state.best_fitness_trace + [global_best_fitness],
    )


def pso_run(objective: ObjectiveSpec, config: PsoConfig,
            best_fraction: float = 0.8) -> RunResult:
    """Full seeded baseline run with the same result contract as rwpso_run."""
    if config.dim != objective.domain.dim:
        raise ValueError(
            f"config dim {config.dim} does not match objective dim {objective.domain.dim}"
        )
    rng = np.random.default_rng(config.seed)
    state = init_state(objective, config, rng)
    while (
        state.iteration < config.max_iterations
        and not objective.meets_threshold(state.global_best_fitness,
                                          config.fitness_threshold)
    ):
        state = pso_step(state, objective, config, rng)
    return RunResult(
        algorithm="pso",
        function=objective.name,
        population=config.swarm_size,
        dimension=config.dim,
        seed=config.seed,
        iterations_used=state.iteration,
        best_fitness=state.global_best_fitness,
        best_position=state.global_best_position,
        trace=np.asarray(state.best_fitness_trace),
        mean_best_80=mean_best_fitness(state.fitnesses, best_fraction, objective.sense),
    )
