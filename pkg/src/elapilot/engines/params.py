"""Hyperparameter records for the three engine families.

Values are clamped to their bounds on construction; clamping is logged,
never silent. `population_size` and `max_iterations` are structural and
fixed at engine creation; the remaining fields are the tunables a
controller may move between generations.
"""

from __future__ import annotations

import dataclasses
import logging
from dataclasses import dataclass
from typing import ClassVar, Union

logger = logging.getLogger(__name__)

RHO_MIN = 1e-3  # evaporation lives in the open interval (0, 1)


def _clamp(value: float, lo: float, hi: float) -> float:
    return min(hi, max(lo, value))


@dataclass(frozen=True)
class _Params:
    ALGORITHM: ClassVar[str] = ""
    TUNABLE_BOUNDS: ClassVar[dict[str, tuple[float, float]]] = {}

    population_size: int = 500
    max_iterations: int = 500

    def __post_init__(self):
        for name, (lo, hi) in self.TUNABLE_BOUNDS.items():
            value = float(getattr(self, name))
            clamped = _clamp(value, lo, hi)
            if clamped != value:
                logger.warning(
                    "%s.%s=%g outside [%g, %g]; clamped to %g",
                    self.ALGORITHM, name, value, lo, hi, clamped,
                )
            object.__setattr__(self, name, clamped)
        object.__setattr__(self, "population_size", max(1, int(self.population_size)))
        object.__setattr__(self, "max_iterations", max(1, int(self.max_iterations)))

    def tunables(self) -> dict[str, float]:
        return {name: getattr(self, name) for name in self.TUNABLE_BOUNDS}

    def bounds(self) -> dict[str, tuple[float, float]]:
        return dict(self.TUNABLE_BOUNDS)

    def replace_tunables(self, **values: float) -> "_Params":
        unknown = set(values) - set(self.TUNABLE_BOUNDS)
        if unknown:
            raise ValueError(f"unknown tunables for {self.ALGORITHM}: {sorted(unknown)}")
        return dataclasses.replace(self, **values)

    def to_dict(self) -> dict:
        record = {"algorithm": self.ALGORITHM}
        for f in dataclasses.fields(self):
            record[f.name] = getattr(self, f.name)
        return record


@dataclass(frozen=True)
class GaParams(_Params):
    ALGORITHM: ClassVar[str] = "ga"
    TUNABLE_BOUNDS: ClassVar[dict[str, tuple[float, float]]] = {
        "crossover_prob": (0.0, 1.0),
        "mutation_prob": (0.0, 1.0),
    }

    crossover_prob: float = 0.6
    mutation_prob: float = 0.1


@dataclass(frozen=True)
class PsoParams(_Params):
    ALGORITHM: ClassVar[str] = "pso"
    TUNABLE_BOUNDS: ClassVar[dict[str, tuple[float, float]]] = {
        "inertia_w": (0.0, 1.0),
        "cognitive_c1": (0.0, 4.0),
        "social_c2": (0.0, 4.0),
    }

    inertia_w: float = 0.3
    cognitive_c1: float = 1.5
    social_c2: float = 1.5


@dataclass(frozen=True)
class AcoParams(_Params):
    ALGORITHM: ClassVar[str] = "aco"
    TUNABLE_BOUNDS: ClassVar[dict[str, tuple[float, float]]] = {
        "pheromone_alpha": (0.1, 10.0),
        "heuristic_beta": (0.1, 10.0),
        "evaporation_rho": (RHO_MIN, 1.0 - RHO_MIN),
    }

    pheromone_alpha: float = 2.0
    heuristic_beta: float = 2.0
    evaporation_rho: float = 0.3


HyperParams = Union[GaParams, PsoParams, AcoParams]

PARAMS_BY_ALGORITHM: dict[str, type[_Params]] = {
    cls.ALGORITHM: cls for cls in (GaParams, PsoParams, AcoParams)
}


def params_from_dict(record: dict) -> HyperParams:
    record = dict(record)
    algorithm = record.pop("algorithm")
    cls = PARAMS_BY_ALGORITHM[algorithm]
    names = {f.name for f in dataclasses.fields(cls)}
    return cls(**{k: v for k, v in record.items() if k in names})
