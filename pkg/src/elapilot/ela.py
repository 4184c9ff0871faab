"""Online landscape features computed from a live population snapshot.

Five scalars summarize the search state of a running metaheuristic:

* skewness and excess kurtosis of the population fitness distribution
  (population moments, 1/n),
* goodness-of-fit (R^2) of a one-dimensional quadratic model of fitness
  against distance-to-population-best, a funnel-structure probe,
* dispersion ratio: average pairwise distance within the elite quantile
  over that within the worst quantile,
* variability: historical mean fitness over current mean fitness, a
  progress rate for minimization.

Every degenerate case substitutes a documented neutral value and raises an
explicit flag instead of emitting NaN/inf, so a downstream reasoner can see
that a signal carries no evidence.
"""

from __future__ import annotations

import enum
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Sequence

import numpy as np

EPS = 1e-12

DistanceMetric = Callable[[np.ndarray, np.ndarray], float]


class DegeneracyFlag(enum.Enum):
    ZERO_VARIANCE = "ZeroVariance"
    SHORT_HISTORY = "ShortHistory"
    EMPTY_QUANTILE = "EmptyQuantile"
    FLAT_LANDSCAPE = "FlatLandscape"


class FeatureResult(NamedTuple):
    value: float
    flag: DegeneracyFlag | None


def hamming_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Count of positions where two equal-length code vectors differ."""
    return float(np.count_nonzero(np.asarray(a) != np.asarray(b)))


@dataclass(frozen=True)
class FitnessSample:
    """Fitness values of one generation (minimization objective units)."""

    values: tuple[float, ...]
    generation: int = 0

    def __post_init__(self):
        values = tuple(float(v) for v in self.values)
        if len(values) < 1:
            raise ValueError("FitnessSample requires at least one value")
        if not all(math.isfinite(v) for v in values):
            raise ValueError("FitnessSample values must be finite")
        if self.generation < 0:
            raise ValueError("generation must be non-negative")
        object.__setattr__(self, "values", values)

    @property
    def n(self) -> int:
        return len(self.values)

    def mean(self) -> float:
        return sum(self.values) / len(self.values)


@dataclass(frozen=True)
class EncodedPopulation:
    """Solution codes of one generation paired with their fitness values."""

    solutions: np.ndarray  # (n, L) integer codes
    fitness: FitnessSample

    def __post_init__(self):
        sols = np.asarray(self.solutions)
        if sols.ndim != 2:
            raise ValueError("solutions must be a 2-D array (n, L)")
        if sols.shape[0] != self.fitness.n:
            raise ValueError("solutions and fitness must have equal length")
        if sols.shape[1] < 2:
            raise ValueError("solution vectors must have length >= 2")
        object.__setattr__(self, "solutions", sols)

    @property
    def n(self) -> int:
        return self.solutions.shape[0]


class HistoryWindow:
    """Ring buffer of (generation, mean fitness) pairs, newest last.

    Single-writer: the owning run appends once per feature computation.
    """

    def __init__(self, capacity: int = 5):
        if capacity < 1:
            raise ValueError("window capacity must be positive")
        self.capacity = capacity
        self._entries: deque[tuple[int, float]] = deque(maxlen=capacity)

    def append(self, generation: int, mean_fitness: float) -> None:
        if self._entries and generation <= self._entries[-1][0]:
            raise ValueError(
                f"generation {generation} not after last stored "
                f"{self._entries[-1][0]}"
            )
        self._entries.append((generation, float(mean_fitness)))

    def means(self) -> list[float]:
        return [m for _, m in self._entries]

    def __len__(self) -> int:
        return len(self._entries)


@dataclass(frozen=True)
class ElaFeatures:
    """The five landscape scalars plus the degeneracy flags raised while
    computing them. All fields are finite after substitution."""

    skewness: float
    kurtosis: float
    r_squared: float
    dispersion_ratio: float
    variability: float
    flags: frozenset[DegeneracyFlag] = field(default_factory=frozenset)

    def __post_init__(self):
        for name in ("skewness", "kurtosis", "r_squared",
                     "dispersion_ratio", "variability"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if not 0.0 <= self.r_squared <= 1.0:
            raise ValueError("r_squared must lie in [0, 1]")
        if self.dispersion_ratio < 0.0:
            raise ValueError("dispersion_ratio must be non-negative")
        if self.variability <= 0.0:
            raise ValueError("variability must be positive")

    def to_record(self) -> dict:
        """Flat key-value form used in prompts and logs."""
        return {
            "skewness": self.skewness,
            "kurtosis": self.kurtosis,
            "r_squared": self.r_squared,
            "dispersion_ratio": self.dispersion_ratio,
            "variability": self.variability,
            "flags": sorted(f.value for f in self.flags),
        }

    @classmethod
    def from_record(cls, record: dict) -> "ElaFeatures":
        flags = frozenset(DegeneracyFlag(name) for name in record.get("flags", []))
        return cls(
            skewness=float(record["skewness"]),
            kurtosis=float(record["kurtosis"]),
            r_squared=float(record["r_squared"]),
            dispersion_ratio=float(record["dispersion_ratio"]),
            variability=float(record["variability"]),
            flags=flags,
        )

    def vector(self) -> tuple[float, float, float, float, float]:
        return (self.skewness, self.kurtosis, self.r_squared,
                self.dispersion_ratio, self.variability)


def _central_moments(values: Sequence[float]) -> tuple[float, float, float, float]:
    arr = np.asarray(values, dtype=float)
    mean = float(arr.mean())
    dev = arr - mean
    m2 = float(np.mean(dev ** 2))
    m3 = float(np.mean(dev ** 3))
    m4 = float(np.mean(dev ** 4))
    return mean, m2, m3, m4


def skewness(sample: FitnessSample) -> FeatureResult:
    """Asymmetry of the fitness distribution (population moments).

    Returns 0.0 with a ZeroVariance flag when the population standard
    deviation is below EPS.
    """
    _, m2, m3, _ = _central_moments(sample.values)
    if math.sqrt(m2) < EPS:
        return FeatureResult(0.0, DegeneracyFlag.ZERO_VARIANCE)
    return FeatureResult(m3 / m2 ** 1.5, None)


def kurtosis(sample: FitnessSample) -> FeatureResult:
    """Excess kurtosis of the fitness distribution (population moments,
    includes the -3 shift). 0.0 with ZeroVariance on degenerate variance."""
    _, m2, _, m4 = _central_moments(sample.values)
    if math.sqrt(m2) < EPS:
        return FeatureResult(0.0, DegeneracyFlag.ZERO_VARIANCE)
    return FeatureResult(m4 / m2 ** 2 - 3.0, None)


def _fit_least_squares(x: list[float], y: list[float], degree: int) -> list[float]:
    """Least-squares polynomial fit via normal equations (pivoted solve).

    The degree is reduced by the caller when the predictor has too few
    distinct values for the requested degree to be identifiable.
    """
    cols = degree + 1
    ata = [[0.0] * cols for _ in range(cols)]
    aty = [0.0] * cols
    for xi, yi in zip(x, y):
        powers = [xi ** p for p in range(cols)]
        for r in range(cols):
            aty[r] += powers[r] * yi
            for c in range(cols):
                ata[r][c] += powers[r] * powers[c]
    a = np.asarray(ata)
    b = np.asarray(aty)
    coeffs, *_ = np.linalg.lstsq(a, b, rcond=None)
    return [float(c) for c in coeffs]


def quadratic_fit_r2(x: Sequence[float], y: Sequence[float]) -> FeatureResult:
    """R^2 of the least-squares quadratic y = a + b*x + c*x^2, clamped to
    [0, 1].

    When x has fewer than three distinct values the model degree drops to
    what the data can identify (line, then constant); the fitted values, and
    hence R^2, stay well defined. Total sum of squares below EPS means a
    flat landscape: returns 0.0 with FlatLandscape.
    """
    xs = [float(v) for v in x]
    ys = [float(v) for v in y]
    if len(xs) != len(ys) or len(xs) < 3:
        raise ValueError("quadratic fit requires n >= 3 paired points")
    mean_y = sum(ys) / len(ys)
    ss_tot = sum((v - mean_y) ** 2 for v in ys)
    if ss_tot < EPS:
        return FeatureResult(0.0, DegeneracyFlag.FLAT_LANDSCAPE)
    degree = min(2, len(set(xs)) - 1)
    if degree == 0:
        return FeatureResult(0.0, None)
    coeffs = _fit_least_squares(xs, ys, degree)
    ss_res = 0.0
    for xi, yi in zip(xs, ys):
        pred = sum(c * xi ** p for p, c in enumerate(coeffs))
        ss_res += (yi - pred) ** 2
    r2 = 1.0 - ss_res / ss_tot
    return FeatureResult(min(1.0, max(0.0, r2)), None)


def _best_index(fitness: Sequence[float]) -> int:
    """Index of the lowest fitness; ties broken by lower index."""
    best = 0
    for i, v in enumerate(fitness):
        if v < fitness[best]:
            best = i
    return best


def meta_model_r2(pop: EncodedPopulation,
                  metric: DistanceMetric = hamming_distance) -> FeatureResult:
    """Structural predictability of the landscape around the current elite.

    The scalar predictor of each individual is its distance to the
    population-best solution; fitness is regressed on it with a quadratic
    least-squares model and the R^2 is returned, clamped to [0, 1].
    """
    if pop.n < 3:
        raise ValueError("meta_model_r2 requires a population of at least 3")
    best = _best_index(pop.fitness.values)
    best_code = pop.solutions[best]
    x = [metric(pop.solutions[i], best_code) for i in range(pop.n)]
    return quadratic_fit_r2(x, pop.fitness.values)


def _mean_pairwise_distance(codes: np.ndarray, metric: DistanceMetric) -> float:
    k = codes.shape[0]
    total = 0.0
    for i in range(k):
        for j in range(i + 1, k):
            total += metric(codes[i], codes[j])
    return 2.0 * total / (k * (k - 1))


def quantile_sets(fitness: Sequence[float], quantile: float) -> tuple[list[int], list[int]]:
    """Indices of the best and worst fitness quantiles.

    Set size is ceil(quantile * n) with a floor of 2; fitness ties are broken
    by lower population index (stable, reproducible).
    """
    n = len(fitness)
    k = max(2, math.ceil(quantile * n))
    by_best = sorted(range(n), key=lambda i: (fitness[i], i))
    by_worst = sorted(range(n), key=lambda i: (-fitness[i], i))
    return by_best[:k], by_worst[:k]


def dispersion_ratio(pop: EncodedPopulation,
                     metric: DistanceMetric = hamming_distance,
                     quantile: float = 0.10) -> FeatureResult:
    """Spatial spread of the elite quantile relative to the worst quantile.

    Values well below 1 indicate the best solutions cluster in one basin;
    near 1 indicates elites scattered as widely as the stragglers. When the
    worst set has no dispersion there is no diversity signal: returns 1.0
    with EmptyQuantile.
    """
    if not 0.0 < quantile <= 0.5:
        raise ValueError("quantile must lie in (0, 0.5]")
    if pop.n < 4:
        raise ValueError("dispersion_ratio requires a population of at least 4")
    best_idx, worst_idx = quantile_sets(pop.fitness.values, quantile)
    d_best = _mean_pairwise_distance(pop.solutions[best_idx], metric)
    d_worst = _mean_pairwise_distance(pop.solutions[worst_idx], metric)
    if d_worst < EPS:
        return FeatureResult(1.0, DegeneracyFlag.EMPTY_QUANTILE)
    return FeatureResult(d_best / d_worst, None)


def variability(window: HistoryWindow, current_mean: float) -> FeatureResult:
    """Historical mean fitness over current mean fitness.

    Above 1 the population is improving (minimization); at or below 1 it is
    stagnating or regressing. With fewer than the window capacity of stored
    generations the average runs over what exists and ShortHistory is set;
    an empty window yields the neutral 1.0.
    """
    if current_mean <= 0.0:
        raise ValueError("variability requires a positive current mean")
    means = window.means()
    if not means:
        return FeatureResult(1.0, DegeneracyFlag.SHORT_HISTORY)
    value = (sum(means) / len(means)) / current_mean
    flag = DegeneracyFlag.SHORT_HISTORY if len(means) < window.capacity else None
    return FeatureResult(value, flag)


def compute_all(pop: EncodedPopulation,
                window: HistoryWindow,
                metric: DistanceMetric = hamming_distance,
                quantile: float = 0.10) -> ElaFeatures:
    """Compute the full feature bundle for one generation.

    The current generation mean is appended to the history window only after
    the variability ratio is taken, so the ratio always compares against
    strictly earlier generations.
    """
    sample = pop.fitness
    s = skewness(sample)
    k = kurtosis(sample)
    r2 = meta_model_r2(pop, metric)
    d = dispersion_ratio(pop, metric, quantile)
    v = variability(window, sample.mean())
    window.append(sample.generation, sample.mean())
    flags = frozenset(f.flag for f in (s, k, r2, d, v) if f.flag is not None)
    return ElaFeatures(
        skewness=s.value,
        kurtosis=k.value,
        r_squared=r2.value,
        dispersion_ratio=d.value,
        variability=v.value,
        flags=flags,
    )
