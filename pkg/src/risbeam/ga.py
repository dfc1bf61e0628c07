"""Continuous genetic algorithm maximizing the minimum grid PDAF.

The optimizer evolves real-valued phase vectors with fitness-
proportional selection, per-gene blend crossover, clamped Gaussian
mutation, and (by default) single-individual elitism.  Fitness is the
minimum PDAF over a D+1-point angular grid, evaluated in linear scale
so selection probabilities stay nonnegative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import _kernels
from ._kernels import TWO_PI
from .model import AngularGrid, ArrayGeometry, InvalidInputError, PhaseCode


@dataclass(frozen=True)
class GaConfig:
    """Hyperparameters; every field is echoed into results for replay.

    The crossover blend weight is drawn per gene from U(0, 1)
    ("uniform" is the only supported crossover_weight_dist).  Mutation
    adds N(0, mutation_scale^2) to each gene with probability
    mutation_prob, then clamps into [0, 2*pi].  The mutation defaults
    are tuned so that modest population sizes reach the bundled
    reference fitness levels; they are deliberately more aggressive
    than textbook values because fitness-proportional selection exerts
    weak pressure on flat max-min landscapes.
    """

    population_size: int = 2000
    generations: int = 300
    grid_d: int = 1000
    crossover_weight_dist: str = "uniform"
    mutation_scale: float = 0.2
    mutation_prob: float = 0.6
    elitism_count: int = 1
    seed: int = 0

    def __post_init__(self):
        n = self.population_size
        if not isinstance(n, (int, np.integer)) or n < 2 or n % 2 != 0:
            raise InvalidInputError("population_size must be an even integer >= 2")
        if not isinstance(self.generations, (int, np.integer)) or self.generations < 1:
            raise InvalidInputError("generations must be a positive integer")
        if not isinstance(self.grid_d, (int, np.integer)) or self.grid_d < 1:
            raise InvalidInputError("grid_d must be a positive integer")
        if self.crossover_weight_dist != "uniform":
            raise InvalidInputError("only the 'uniform' crossover weight distribution is supported")
        if not (math.isfinite(self.mutation_scale) and self.mutation_scale > 0):
            raise InvalidInputError("mutation_scale must be positive")
        if not (0.0 <= self.mutation_prob <= 1.0):
            raise InvalidInputError("mutation_prob must lie in [0, 1]")
        if not isinstance(self.elitism_count, (int, np.integer)) or not (
            0 <= self.elitism_count < n
        ):
            raise InvalidInputError("elitism_count must satisfy 0 <= count < population_size")
        if not isinstance(self.seed, (int, np.integer)) or self.seed < 0:
            raise InvalidInputError("seed must be a nonnegative integer")


@dataclass(frozen=True, eq=False)
class GaRun:
    """Result of one optimizer run.

    trace holds (generation index, best-so-far fitness) pairs from the
    in-loop bulk evaluator; best_fitness is re-evaluated through the
    public fitness() path on the returned code.
    uniform_fallback_generations lists generations whose total fitness
    was zero, where selection fell back to uniform.
    """

    best_code: PhaseCode
    best_fitness: float
    trace: tuple[tuple[int, float], ...]
    config: GaConfig
    uniform_fallback_generations: tuple[int, ...] = ()

    @property
    def best_fitness_db(self) -> float:
        return 10.0 * math.log10(self.best_fitness)


def fitness(
    code: PhaseCode, geom: ArrayGeometry, grid: AngularGrid, backend: str | None = None
) -> float:
    """Minimum PDAF over the grid: the quantity the optimizer maximizes."""
    from .model import pdaf_values

    return float(pdaf_values(code, geom, grid.points, backend).min())


def mutate_clamped(phase: float, perturbation: float) -> float:
    """One mutated gene: phase + perturbation clamped into [0, 2*pi]."""
    if not (0.0 <= phase <= TWO_PI):
        raise InvalidInputError("phase must lie in [0, 2*pi]")
    if not math.isfinite(perturbation):
        raise InvalidInputError("perturbation must be finite")
    return min(max(phase + perturbation, 0.0), TWO_PI)


def selection_probabilities(fits: np.ndarray) -> tuple[np.ndarray, bool]:
    """Fitness-proportional selection PMF, with a uniform fallback.

    Returns (probabilities, degenerate) where degenerate means the total
    fitness was zero or non-finite and a uniform PMF was substituted.
    """
    fits = np.asarray(fits, dtype=np.float64)
    total = float(fits.sum())
    if total <= 0.0 or not math.isfinite(total):
        n = fits.size
        return np.full(n, 1.0 / n), True
    return fits / total, False


def lipschitz_constant(geom: ArrayGeometry) -> float:
    """Bound L with |A(theta2) - A(theta1)| <= L |theta2 - theta1|.

    L = (M-1) * M^2 * pi * spacing_ratio.
    """
    m = geom.m
    return (m - 1) * m * m * math.pi * geom.spacing_ratio


def discretization_error_bound(geom: ArrayGeometry, d: int) -> float:
    """Upper bound on (true min PDAF) - (grid min PDAF) for a D+1 grid.

    Bound = (M-1) * M^2 * pi^2 * spacing_ratio / D: the Lipschitz
    constant times half the grid step.
    """
    if not isinstance(d, (int, np.integer)) or d < 1:
        raise InvalidInputError("d must be a positive integer")
    return lipschitz_constant(geom) * math.pi / d


def run_cga(config: GaConfig, geom: ArrayGeometry, backend: str | None = None) -> GaRun:
    """Execute the genetic algorithm; deterministic for a fixed seed.

    Per generation: bulk fitness evaluation, best-so-far bookkeeping,
    fitness-proportional sampling of population_size parents, pairing of
    consecutive samples, per-gene blend crossover (children w*a+(1-w)*b
    and the mirror), masked Gaussian mutation with clamping, and elitist
    reinsertion of the top elitism_count individuals.  Offspring of the
    final generation are never evaluated, so with generations=1 the
    result is simply the best of the initial population.
    """
    n = int(config.population_size)
    m = geom.m
    grid = AngularGrid(int(config.grid_d))
    st_re, st_im = _kernels.steering_tables(
        m, geom.spacing_ratio, geom.theta_h, grid.points
    )
    rng = np.random.Generator(np.random.PCG64(int(config.seed)))
    pop = rng.uniform(0.0, TWO_PI, size=(n, m))

    best_phases: np.ndarray | None = None
    best_fit = -np.inf
    trace: list[tuple[int, float]] = []
    fallback: list[int] = []

    for gen in range(int(config.generations)):
        fits = _kernels.min_pdaf_many(pop, st_re, st_im, backend)
        top = int(np.argmax(fits))
        if fits[top] > best_fit:
            best_fit = float(fits[top])
            best_phases = pop[top].copy()
        trace.append((gen, best_fit))
        if gen == config.generations - 1:
            break

        probs, degenerate = selection_probabilities(fits)
        if degenerate:
            fallback.append(gen)
        parents = rng.choice(n, size=n, p=probs)
        a = pop[parents[0::2]]
        b = pop[parents[1::2]]
        w = rng.random((n // 2, m))
        kids = np.empty_like(pop)
        kids[0::2] = w * a + (1.0 - w) * b
        kids[1::2] = (1.0 - w) * a + w * b

        mask = rng.random((n, m)) < config.mutation_prob
        pert = rng.normal(0.0, config.mutation_scale, size=(n, m))
        kids = np.clip(kids + np.where(mask, pert, 0.0), 0.0, TWO_PI)

        e = int(config.elitism_count)
        if e:
            elite = np.argsort(-fits, kind="stable")[:e]
            kids[:e] = pop[elite]
        pop = kids

    assert best_phases is not None
    best_code = PhaseCode(best_phases)
    best = fitness(best_code, geom, grid, backend)
    return GaRun(
        best_code=best_code,
        best_fitness=best,
        trace=tuple(trace),
        config=config,
        uniform_fallback_generations=tuple(fallback),
    )


def derive_seed(base_seed: int, index: int) -> int:
    """Deterministic per-run seed for restart index `index`."""
    return int(np.random.SeedSequence([int(base_seed), int(index)]).generate_state(1)[0])


def run_multistart(
    config: GaConfig, geom: ArrayGeometry, runs: int, backend: str | None = None
) -> list[GaRun]:
    """Independent restarts with per-run seeds derived from config.seed."""
    if not isinstance(runs, (int, np.integer)) or runs < 1:
        raise InvalidInputError("runs must be a positive integer")
    return [
        run_cga(replace(config, seed=derive_seed(config.seed, i)), geom, backend)
        for i in range(int(runs))
    ]


def best_run(runs: list[GaRun]) -> GaRun:
    """The run with the highest re-evaluated best fitness."""
    if not runs:
        raise InvalidInputError("need at least one run")
    return max(runs, key=lambda r: r.best_fitness)
