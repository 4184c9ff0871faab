"""Discrete particle swarm over permutation codes (swap-sequence velocities).

A velocity is a list of transpositions. Per particle and generation the new
velocity keeps each old swap with probability `inertia_w`, then appends the
swaps that transform the position into its personal best (each kept with
probability min(1, c1*r1)) and into the global best (min(1, c2*r2)), with
r1, r2 drawn once per particle. The velocity is capped at the code length
and applied as a sequence of transpositions.
"""

from __future__ import annotations

import numpy as np

from .base import Engine
from .params import PsoParams

Swap = tuple[int, int]


def swap_sequence(current: np.ndarray, target: np.ndarray) -> list[Swap]:
    """Transpositions that turn `current` into `target`, greedily by position."""
    work = [int(v) for v in current]
    position = {v: i for i, v in enumerate(work)}
    swaps: list[Swap] = []
    for i, want in enumerate(int(v) for v in target):
        have = work[i]
        if have == want:
            continue
        j = position[want]
        swaps.append((i, j))
        work[i], work[j] = work[j], work[i]
        position[have], position[want] = j, i
    return swaps


def apply_swaps(code: np.ndarray, swaps: list[Swap]) -> np.ndarray:
    out = code.copy()
    for i, j in swaps:
        out[i], out[j] = out[j], out[i]
    return out


class Pso2OptEngine(Engine):
    ALGORITHM = "pso"
    PARAMS_TYPE = PsoParams
    local_search = True

    def _init_extras(self) -> None:
        self.velocities: list[list[Swap]] = [[] for _ in range(self.population_size)]
        self.pbest_codes = self.codes.copy()
        self.pbest_fitness = self.fitness.copy()

    def _advance(self, params: PsoParams) -> None:
        length = self.instance.dimension
        for i in range(self.population_size):
            velocity = [s for s in self.velocities[i]
                        if self.rng.random() < params.inertia_w]
            pull_pbest = min(1.0, params.cognitive_c1 * self.rng.random())
            velocity += [s for s in swap_sequence(self.codes[i], self.pbest_codes[i])
                         if self.rng.random() < pull_pbest]
            pull_gbest = min(1.0, params.social_c2 * self.rng.random())
            velocity += [s for s in swap_sequence(self.codes[i], self.best_code)
                         if self.rng.random() < pull_gbest]
            velocity = velocity[:length]
            self.velocities[i] = velocity
            self.codes[i] = apply_swaps(self.codes[i], velocity)
            self.fitness[i] = self._evaluate(self.codes[i])
            if self.fitness[i] < self.pbest_fitness[i]:
                self.pbest_fitness[i] = self.fitness[i]
                self.pbest_codes[i] = self.codes[i].copy()

    def _local_search_pass(self) -> None:
        super()._local_search_pass()
        improved = self.fitness < self.pbest_fitness
        for idx in np.flatnonzero(improved):
            self.pbest_fitness[idx] = self.fitness[idx]
            self.pbest_codes[idx] = self.codes[idx].copy()
