"""Engine scaffolding shared by the GA, PSO, and ACO families.

An engine owns a population of permutation codes, advances one generation
per `step` call using the hyperparameters supplied to that call (so a
controller can swap them between any two generations), and exposes an
immutable population snapshot for feature extraction.
"""

from __future__ import annotations

import math

import numpy as np

from ..ela import EncodedPopulation, FitnessSample
from ..problems import (
    ProblemInstance,
    ProblemKind,
    Solution,
    distance_rows,
    evaluate,
)
from ..rng import Rng
from .params import HyperParams, _Params

IMPROVE_EPS = 1e-9
LOCAL_SEARCH_FRACTION = 0.10


def order_crossover(p1: np.ndarray, p2: np.ndarray, cut: tuple[int, int]) -> np.ndarray:
    """Order crossover (OX): the child keeps p1's segment [lo, hi); the
    remaining positions, starting at hi and wrapping, are filled with p2's
    entries in p2 order starting at hi, skipping values already present."""
    lo, hi = cut
    length = len(p1)
    if not (0 <= lo < hi <= length):
        raise ValueError(f"invalid cut ({lo}, {hi}) for length {length}")
    child = np.empty(length, dtype=p1.dtype)
    child[lo:hi] = p1[lo:hi]
    used = set(int(v) for v in p1[lo:hi])
    fill = (v for k in range(length) if (v := int(p2[(hi + k) % length])) not in used)
    for offset in range(length - (hi - lo)):
        child[(hi + offset) % length] = next(fill)
    return child


def two_opt_pass_tour(code: np.ndarray, dist: list[list[float]]) -> np.ndarray:
    """One first-improvement 2-opt sweep over a closed tour.

    Each improving segment reversal is applied as soon as it is found and the
    sweep continues from the next pair; the budget is exactly one full sweep.
    """
    tour = [int(c) for c in code]
    n = len(tour)
    for i in range(n - 1):
        for j in range(i + 1, n):
            if i == 0 and j == n - 1:
                continue  # would remove and re-add the same closing edge
            a, b = tour[i - 1], tour[i]
            c, d = tour[j], tour[(j + 1) % n]
            delta = dist[a][c] + dist[b][d] - dist[a][b] - dist[c][d]
            if delta < -IMPROVE_EPS:
                tour[i:j + 1] = tour[i:j + 1][::-1]
    return np.asarray(tour, dtype=code.dtype)


def two_opt_pass_generic(code: np.ndarray, objective) -> np.ndarray:
    """One first-improvement 2-opt sweep with full objective re-evaluation
    per candidate reversal (for problems without an edge-delta shortcut)."""
    current = np.array(code)
    value = objective(current)
    n = len(current)
    for i in range(n - 1):
        for j in range(i + 1, n):
            candidate = current.copy()
            candidate[i:j + 1] = candidate[i:j + 1][::-1]
            cand_value = objective(candidate)
            if cand_value < value - IMPROVE_EPS:
                current, value = candidate, cand_value
    return current


class Engine:
    """Base for the stepwise engines.

    Population size and the iteration budget are fixed by the params given
    at construction; each `step` reads the tunable fields of the params it
    receives, which take effect immediately.
    """

    ALGORITHM = ""
    PARAMS_TYPE: type[_Params] = _Params
    local_search = False

    def __init__(self, instance: ProblemInstance, params: HyperParams, seed: int):
        self._check_params(params)
        self.instance = instance
        self.population_size = params.population_size
        self.rng = Rng.for_stream(seed, f"engine-{self.ALGORITHM}")
        self.generation = 0
        codes = [self.rng.permutation(instance.dimension)
                 for _ in range(self.population_size)]
        self.codes = np.asarray(codes, dtype=np.int64)
        self.fitness = np.array(
            [evaluate(instance, code, validate=False) for code in self.codes]
        )
        best = int(np.argmin(self.fitness))
        self.best_code = self.codes[best].copy()
        self.best_fitness = float(self.fitness[best])
        self._init_extras()

    def _init_extras(self) -> None:
        pass

    def _check_params(self, params: HyperParams) -> None:
        if not isinstance(params, self.PARAMS_TYPE):
            raise ValueError(
                f"{self.ALGORITHM} engine needs {self.PARAMS_TYPE.__name__}, "
                f"got {type(params).__name__}"
            )

    @property
    def best_solution(self) -> Solution:
        return Solution(code=tuple(int(c) for c in self.best_code),
                        fitness=self.best_fitness)

    def step(self, params: HyperParams) -> None:
        """Advance exactly one generation with the supplied hyperparameters."""
        self._check_params(params)
        self._advance(params)
        if self.local_search:
            self._local_search_pass()
        self._update_best()
        self.generation += 1

    def _advance(self, params: HyperParams) -> None:
        raise NotImplementedError

    def _update_best(self) -> None:
        idx = int(np.argmin(self.fitness))
        if self.fitness[idx] < self.best_fitness:
            self.best_fitness = float(self.fitness[idx])
            self.best_code = self.codes[idx].copy()

    def _local_search_pass(self) -> None:
        """First-improvement 2-opt, one sweep, on the top decile by fitness."""
        k = max(1, math.ceil(LOCAL_SEARCH_FRACTION * self.population_size))
        order = np.argsort(self.fitness, kind="stable")[:k]
        tour_like = self.instance.kind in (ProblemKind.TSP, ProblemKind.UAV)
        dist = distance_rows(self.instance) if tour_like else None
        for idx in order:
            idx = int(idx)
            if tour_like:
                improved = two_opt_pass_tour(self.codes[idx], dist)
            else:
                improved = two_opt_pass_generic(
                    self.codes[idx],
                    lambda c: evaluate(self.instance, c, validate=False),
                )
            self.codes[idx] = improved
            self.fitness[idx] = evaluate(self.instance, improved, validate=False)

    def snapshot(self) -> EncodedPopulation:
        """Immutable copy of the current codes and fitness values; does not
        touch the engine's RNG."""
        return EncodedPopulation(
            solutions=self.codes.copy(),
            fitness=FitnessSample(values=tuple(float(f) for f in self.fitness),
                                  generation=self.generation),
        )

    def _evaluate(self, code: np.ndarray) -> float:
        return evaluate(self.instance, code, validate=False)
