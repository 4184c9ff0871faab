"""Benchmark problems: parsing, objectives, best-known values, opt gap."""

from __future__ import annotations

import importlib.resources
from pathlib import Path

from .model import (
    CvrpPayload,
    FsspPayload,
    ProblemInstance,
    ProblemKind,
    Solution,
    TspPayload,
    UavPayload,
    distance_matrix,
    distance_rows,
    evaluate,
    generate_uav_instance,
    makespan,
    opt_gap,
    require_permutation,
    split_routes,
    tour_length,
)
from .parsers import (
    ParseError,
    parse_taillard,
    parse_tsplib,
    parse_vrplib,
    serialize_taillard,
    serialize_tsplib,
    serialize_vrplib,
)

__all__ = [
    "CvrpPayload", "FsspPayload", "ProblemInstance", "ProblemKind",
    "Solution", "TspPayload", "UavPayload", "ParseError",
    "bundled_data_dir", "distance_matrix", "distance_rows", "evaluate",
    "generate_uav_instance", "load_best_known", "load_instance", "makespan",
    "opt_gap", "parse_taillard", "parse_tsplib", "parse_vrplib",
    "require_permutation", "serialize_instance", "serialize_taillard",
    "serialize_tsplib", "serialize_vrplib", "split_routes", "tour_length",
]


def bundled_data_dir() -> Path:
    """Directory of the instance files and best-known table shipped with the
    package."""
    return Path(importlib.resources.files(__package__) / "data")


def load_best_known(path: str | Path | None = None) -> dict[str, float]:
    """Best-known objective values keyed by instance name.

    The table is a two-column text file (name, value); '#' starts a comment.
    """
    if path is None:
        path = bundled_data_dir() / "best_known.txt"
    table: dict[str, float] = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"best-known table line not 'name value': {raw!r}")
        table[parts[0]] = float(parts[1])
    return table


def serialize_instance(instance: ProblemInstance) -> str:
    """Serialize an instance back to its source text format."""
    if instance.kind is ProblemKind.TSP:
        return serialize_tsplib(instance)
    if instance.kind is ProblemKind.CVRP:
        return serialize_vrplib(instance)
    if instance.kind is ProblemKind.FSSP:
        return serialize_taillard(instance)
    raise ValueError(f"{instance.kind.value} instances have no file format")


def load_instance(path: str | Path,
                  best_known: dict[str, float] | None = None) -> ProblemInstance:
    """Load an instance file, dispatching on its suffix (.tsp, .vrp, else
    Taillard flow-shop text), and attach a best-known value when the table
    has one under the instance name or the file stem."""
    path = Path(path)
    text = path.read_text()
    suffix = path.suffix.lower()
    if suffix == ".tsp":
        instance = parse_tsplib(text)
    elif suffix == ".vrp":
        instance = parse_vrplib(text)
    else:
        instance = parse_taillard(text, name=path.stem)
    if best_known is None:
        best_known = load_best_known()
    value = best_known.get(instance.name) or best_known.get(path.stem)
    if value is not None:
        instance.best_known = value
    return instance
