"""Problem instances, objective functions, and the optimality-gap metric.

Four combinatorial problem kinds are supported, all encoded as permutations:

* TSP — closed tour over 2-D points, TSPLIB EUC_2D rounding honored so
  results are comparable with published optima,
* CVRP — giant-tour customer permutation split greedily into
  capacity-feasible routes from the depot,
* FSSP — permutation flow shop, makespan via the completion-time
  recurrence,
* UAV — seeded random point-visit trajectory (closed tour, exact Euclidean
  lengths).
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from ..rng import Rng

logger = logging.getLogger(__name__)


class ProblemKind(enum.Enum):
    TSP = "tsp"
    CVRP = "cvrp"
    FSSP = "fssp"
    UAV = "uav"


@dataclass(frozen=True)
class TspPayload:
    coords: tuple[tuple[float, float], ...]
    rounded: bool = True  # TSPLIB EUC_2D nearest-integer convention


@dataclass(frozen=True)
class CvrpPayload:
    coords: tuple[tuple[float, float], ...]  # all nodes, depot included
    demands: tuple[int, ...]
    capacity: int
    depot_index: int
    rounded: bool = True


@dataclass(frozen=True)
class FsspPayload:
    processing: tuple[tuple[int, ...], ...]  # jobs x machines


@dataclass(frozen=True)
class UavPayload:
    coords: tuple[tuple[float, float], ...]
    rounded: bool = False  # generated instances use exact lengths


@dataclass
class ProblemInstance:
    kind: ProblemKind
    name: str
    dimension: int
    payload: TspPayload | CvrpPayload | FsspPayload | UavPayload
    best_known: float | None = None
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError("dimension must be positive")
        if self.kind in (ProblemKind.TSP, ProblemKind.UAV):
            if len(self.payload.coords) != self.dimension:
                raise ValueError("dimension must equal the number of coordinates")
        elif self.kind is ProblemKind.CVRP:
            payload = self.payload
            n = len(payload.coords)
            if len(payload.demands) != n:
                raise ValueError("demands and coordinates must align")
            if not 0 <= payload.depot_index < n:
                raise ValueError("depot index out of range")
            if self.dimension != n - 1:
                raise ValueError("dimension must equal the number of customers")
            if payload.demands[payload.depot_index] != 0:
                raise ValueError("depot demand must be zero")
            if any(d > payload.capacity for d in payload.demands):
                raise ValueError("every demand must fit the vehicle capacity")
        elif self.kind is ProblemKind.FSSP:
            processing = self.payload.processing
            if len(processing) != self.dimension:
                raise ValueError("dimension must equal the number of jobs")
            machines = len(processing[0])
            if machines < 1 or any(len(row) != machines for row in processing):
                raise ValueError("processing matrix must be jobs x machines")
            if any(t < 0 for row in processing for t in row):
                raise ValueError("processing times must be non-negative")
        for x, y in getattr(self.payload, "coords", ()):
            if not (math.isfinite(x) and math.isfinite(y)):
                raise ValueError("coordinates must be finite")

    @property
    def has_coordinates(self) -> bool:
        return self.kind is not ProblemKind.FSSP

    def summary(self) -> str:
        if self.kind is ProblemKind.FSSP:
            machines = len(self.payload.processing[0])
            detail = f"{self.dimension} jobs x {machines} machines, minimize makespan"
        elif self.kind is ProblemKind.CVRP:
            detail = (
                f"{self.dimension} customers, capacity {self.payload.capacity}, "
                "minimize total route length"
            )
        else:
            detail = f"{self.dimension} points, minimize closed tour length"
        return f"{self.kind.value.upper()} instance '{self.name}': {detail}"


@dataclass(frozen=True)
class Solution:
    """A permutation code with its (verified) objective value."""

    code: tuple[int, ...]
    fitness: float | None = None

    @classmethod
    def evaluated(cls, instance: ProblemInstance, code) -> "Solution":
        return cls(code=tuple(int(c) for c in code),
                   fitness=evaluate(instance, code))


def require_permutation(code, n: int) -> np.ndarray:
    arr = np.asarray(code, dtype=np.int64)
    if arr.shape != (n,):
        raise ValueError(f"code must have length {n}, got shape {arr.shape}")
    seen = np.zeros(n, dtype=bool)
    if arr.min(initial=0) < 0 or arr.max(initial=0) >= n:
        raise ValueError("code entries out of range")
    seen[arr] = True
    if not seen.all():
        raise ValueError("code is not a permutation of its index set")
    return arr


def distance_matrix(instance: ProblemInstance) -> np.ndarray:
    """Full node-node distance matrix (rounded already applied if the
    instance uses the nearest-integer convention). Cached per instance."""
    cached = instance._cache.get("dist")
    if cached is not None:
        return cached
    coords = np.asarray(instance.payload.coords, dtype=float)
    diff = coords[:, None, :] - coords[None, :, :]
    dist = np.sqrt((diff ** 2).sum(axis=2))
    if instance.payload.rounded:
        dist = np.floor(dist + 0.5)
    instance._cache["dist"] = dist
    return dist


def distance_rows(instance: ProblemInstance) -> list[list[float]]:
    """Distance matrix as nested lists (fast scalar lookup in tight loops)."""
    cached = instance._cache.get("dist_rows")
    if cached is None:
        cached = distance_matrix(instance).tolist()
        instance._cache["dist_rows"] = cached
    return cached


def tour_length(instance: ProblemInstance, code: np.ndarray) -> float:
    dist = distance_matrix(instance)
    return float(dist[code, np.roll(code, -1)].sum())


def split_routes(instance: ProblemInstance, code: np.ndarray) -> list[list[int]]:
    """Greedy capacity split of a giant tour into depot-based routes.

    A new route opens whenever the next customer would exceed the vehicle
    capacity. Returns routes as lists of node indices (depot excluded).
    """
    payload = instance.payload
    customers = [i for i in range(len(payload.coords)) if i != payload.depot_index]
    routes: list[list[int]] = []
    current: list[int] = []
    load = 0
    for pos in code:
        node = customers[int(pos)]
        demand = payload.demands[node]
        if current and load + demand > payload.capacity:
            routes.append(current)
            current = []
            load = 0
        current.append(node)
        load += demand
    if current:
        routes.append(current)
    return routes


def _cvrp_length(instance: ProblemInstance, code: np.ndarray) -> float:
    dist = distance_matrix(instance)
    depot = instance.payload.depot_index
    total = 0.0
    for route in split_routes(instance, code):
        prev = depot
        for node in route:
            total += dist[prev, node]
            prev = node
        total += dist[prev, depot]
    return float(total)


def makespan(processing, order) -> float:
    """Permutation flow-shop makespan via the completion-time recurrence."""
    machines = len(processing[0])
    completion = [0.0] * machines
    for job in order:
        row = processing[job]
        completion[0] += row[0]
        for m in range(1, machines):
            completion[m] = max(completion[m], completion[m - 1]) + row[m]
    return float(completion[-1])


def evaluate(instance: ProblemInstance, code, validate: bool = True) -> float:
    """Objective value of a permutation code for the given instance."""
    if validate:
        arr = require_permutation(code, instance.dimension)
    else:
        arr = np.asarray(code, dtype=np.int64)
    if instance.kind in (ProblemKind.TSP, ProblemKind.UAV):
        return tour_length(instance, arr)
    if instance.kind is ProblemKind.CVRP:
        return _cvrp_length(instance, arr)
    return makespan(instance.payload.processing, arr)


def opt_gap(result: float, best_known: float) -> float:
    """Percentage gap of a result against the best-known objective."""
    if best_known is None or best_known <= 0:
        raise ValueError("opt_gap requires a positive best-known value")
    gap = 100.0 * (result - best_known) / best_known
    if gap < 0:
        logger.warning(
            "result %.6g beats best-known %.6g; best-known table may be stale",
            result, best_known,
        )
    return gap


def generate_uav_instance(node_count: int, seed: int) -> ProblemInstance:
    """Seeded random data-collection trajectory instance.

    Sensor nodes are sampled uniformly in a 100x100 area from a dedicated
    deterministic stream, so identical (node_count, seed) pairs reproduce
    identical instances. The objective is the closed trajectory length over
    all nodes, in exact Euclidean units.
    """
    if node_count < 2:
        raise ValueError("node_count must be at least 2")
    rng = Rng.for_stream(seed, "uav-instance")
    coords = tuple(
        (rng.uniform(0.0, 100.0), rng.uniform(0.0, 100.0))
        for _ in range(node_count)
    )
    return ProblemInstance(
        kind=ProblemKind.UAV,
        name=f"uav{node_count}-s{seed}",
        dimension=node_count,
        payload=UavPayload(coords=coords),
    )
