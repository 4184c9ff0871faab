"""Genetic algorithm over permutation codes.

One generation: tournament selection (size 3), order crossover with
probability `crossover_prob`, one random swap per offspring with
probability `mutation_prob`, elitism of one (the best-so-far individual
replaces the worst offspring when better). The 2-opt variant additionally
runs one first-improvement sweep on the top decile.
"""

from __future__ import annotations

import numpy as np

from .base import Engine, order_crossover
from .params import GaParams

TOURNAMENT_SIZE = 3


class GaEngine(Engine):
    ALGORITHM = "ga"
    PARAMS_TYPE = GaParams

    def _tournament(self) -> int:
        contenders = self.rng.sample_indices(self.population_size, TOURNAMENT_SIZE)
        best = contenders[0]
        for idx in contenders[1:]:
            if self.fitness[idx] < self.fitness[best]:
                best = idx
        return best

    def _draw_cut(self, length: int) -> tuple[int, int]:
        lo = self.rng.randrange(length)
        hi = lo + 1 + self.rng.randrange(length - lo)
        return lo, hi

    def _advance(self, params: GaParams) -> None:
        length = self.instance.dimension
        offspring = np.empty_like(self.codes)
        off_fitness = np.empty_like(self.fitness)
        for i in range(self.population_size):
            a = self._tournament()
            b = self._tournament()
            if self.rng.random() < params.crossover_prob:
                child = order_crossover(self.codes[a], self.codes[b],
                                        self._draw_cut(length))
            else:
                child = self.codes[a].copy()
            if self.rng.random() < params.mutation_prob:
                p, q = self.rng.randint_pair(length)
                child[p], child[q] = child[q], child[p]
            offspring[i] = child
            off_fitness[i] = self._evaluate(child)
        worst = int(np.argmax(off_fitness))
        if self.best_fitness < off_fitness[worst]:
            offspring[worst] = self.best_code
            off_fitness[worst] = self.best_fitness
        self.codes = offspring
        self.fitness = off_fitness


class Ga2OptEngine(GaEngine):
    local_search = True
