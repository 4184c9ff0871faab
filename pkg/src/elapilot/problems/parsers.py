"""Text parsers and serializers for the supported benchmark file formats.

Supported formats:

* TSPLIB ``.tsp`` files with EUC_2D edge weights and a NODE_COORD_SECTION,
* VRPLIB ``.vrp`` files (TSPLIB-style, plus CAPACITY, DEMAND_SECTION and
  DEPOT_SECTION),
* Taillard-style flow-shop text (header line, one line of instance numbers,
  then a machines x jobs processing-time block).

Parsers fail with a `ParseError` naming the offending line. Serializers
emit text that parses back to an equal instance.
"""

from __future__ import annotations

from .model import CvrpPayload, FsspPayload, ProblemInstance, ProblemKind, TspPayload


class ParseError(ValueError):
    """Malformed instance text; `line` is the 1-based offending line."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def _split_header(line: str) -> tuple[str, str] | None:
    if ":" not in line:
        return None
    key, _, value = line.partition(":")
    return key.strip().upper(), value.strip()


def _parse_coord_line(line: str, lineno: int) -> tuple[int, float, float]:
    parts = line.split()
    if len(parts) != 3:
        raise ParseError(f"expected 'id x y', got {line.strip()!r}", lineno)
    try:
        return int(parts[0]), float(parts[1]), float(parts[2])
    except ValueError:
        raise ParseError(f"non-numeric coordinate entry {line.strip()!r}", lineno)


def _read_coord_section(lines: list[str], start: int, dimension: int
                        ) -> tuple[list[tuple[float, float]], int]:
    coords: list[tuple[float, float] | None] = [None] * dimension
    lineno = start
    for k in range(dimension):
        if lineno >= len(lines):
            raise ParseError(
                f"coordinate section truncated after {k} of {dimension} entries",
                lineno,
            )
        node_id, x, y = _parse_coord_line(lines[lineno], lineno + 1)
        if not 1 <= node_id <= dimension:
            raise ParseError(f"node id {node_id} outside 1..{dimension}", lineno + 1)
        if coords[node_id - 1] is not None:
            raise ParseError(f"duplicate node id {node_id}", lineno + 1)
        coords[node_id - 1] = (x, y)
        lineno += 1
    return [c for c in coords if c is not None], lineno


def parse_tsplib(text: str) -> ProblemInstance:
    """Parse a TSPLIB-format TSP instance with EUC_2D edge weights."""
    lines = text.splitlines()
    name = "unnamed"
    dimension: int | None = None
    edge_type: str | None = None
    coords: list[tuple[float, float]] | None = None

    i = 0
    while i < len(lines):
        stripped = lines[i].strip()
        if not stripped or stripped == "EOF":
            i += 1
            continue
        if stripped.upper().startswith("NODE_COORD_SECTION"):
            if dimension is None:
                raise ParseError("NODE_COORD_SECTION before DIMENSION", i + 1)
            coords, i = _read_coord_section(lines, i + 1, dimension)
            continue
        header = _split_header(stripped)
        if header is None:
            raise ParseError(f"unrecognized line {stripped!r}", i + 1)
        key, value = header
        if key == "NAME":
            name = value
        elif key == "DIMENSION":
            try:
                dimension = int(value)
            except ValueError:
                raise ParseError(f"non-integer DIMENSION {value!r}", i + 1)
        elif key == "EDGE_WEIGHT_TYPE":
            edge_type = value.upper()
        i += 1

    if dimension is None:
        raise ParseError("missing DIMENSION header")
    if edge_type != "EUC_2D":
        raise ParseError(f"unsupported EDGE_WEIGHT_TYPE {edge_type!r} (need EUC_2D)")
    if coords is None:
        raise ParseError("missing NODE_COORD_SECTION")
    return ProblemInstance(
        kind=ProblemKind.TSP,
        name=name,
        dimension=dimension,
        payload=TspPayload(coords=tuple(coords)),
    )


def serialize_tsplib(instance: ProblemInstance) -> str:
    if instance.kind is not ProblemKind.TSP:
        raise ValueError("serialize_tsplib expects a TSP instance")
    out = [
        f"NAME : {instance.name}",
        "TYPE : TSP",
        f"DIMENSION : {instance.dimension}",
        "EDGE_WEIGHT_TYPE : EUC_2D",
        "NODE_COORD_SECTION",
    ]
    for idx, (x, y) in enumerate(instance.payload.coords, start=1):
        out.append(f"{idx} {_fmt(x)} {_fmt(y)}")
    out.append("EOF")
    return "\n".join(out) + "\n"


def parse_vrplib(text: str) -> ProblemInstance:
    """Parse a VRPLIB-format CVRP instance (EUC_2D, explicit demands/depot)."""
    lines = text.splitlines()
    name = "unnamed"
    dimension: int | None = None
    capacity: int | None = None
    edge_type: str | None = None
    coords: list[tuple[float, float]] | None = None
    demands: list[int] | None = None
    depot: int | None = None

    i = 0
    while i < len(lines):
        stripped = lines[i].strip()
        if not stripped or stripped == "EOF":
            i += 1
            continue
        upper = stripped.upper()
        if upper.startswith("NODE_COORD_SECTION"):
            if dimension is None:
                raise ParseError("NODE_COORD_SECTION before DIMENSION", i + 1)
            coords, i = _read_coord_section(lines, i + 1, dimension)
            continue
        if upper.startswith("DEMAND_SECTION"):
            if dimension is None:
                raise ParseError("DEMAND_SECTION before DIMENSION", i + 1)
            demands = [0] * dimension
            i += 1
            for k in range(dimension):
                if i >= len(lines):
                    raise ParseError("demand section truncated", i)
                parts = lines[i].split()
                if len(parts) != 2:
                    raise ParseError(f"expected 'id demand', got {lines[i].strip()!r}", i + 1)
                try:
                    node_id, demand = int(parts[0]), int(parts[1])
                except ValueError:
                    raise ParseError(f"non-integer demand entry {lines[i].strip()!r}", i + 1)
                if not 1 <= node_id <= dimension:
                    raise ParseError(f"node id {node_id} outside 1..{dimension}", i + 1)
                demands[node_id - 1] = demand
                i += 1
            continue
        if upper.startswith("DEPOT_SECTION"):
            i += 1
            while i < len(lines) and lines[i].strip() not in ("-1", ""):
                if depot is not None:
                    raise ParseError("multiple depots not supported", i + 1)
                try:
                    depot = int(lines[i].strip())
                except ValueError:
                    raise ParseError(f"non-integer depot id {lines[i].strip()!r}", i + 1)
                i += 1
            i += 1
            continue
        header = _split_header(stripped)
        if header is None:
            raise ParseError(f"unrecognized line {stripped!r}", i + 1)
        key, value = header
        if key == "NAME":
            name = value
        elif key == "DIMENSION":
            dimension = int(value)
        elif key == "CAPACITY":
            capacity = int(value)
        elif key == "EDGE_WEIGHT_TYPE":
            edge_type = value.upper()
        i += 1

    if dimension is None:
        raise ParseError("missing DIMENSION header")
    if capacity is None:
        raise ParseError("missing CAPACITY header")
    if edge_type != "EUC_2D":
        raise ParseError(f"unsupported EDGE_WEIGHT_TYPE {edge_type!r} (need EUC_2D)")
    if coords is None:
        raise ParseError("missing NODE_COORD_SECTION")
    if demands is None:
        raise ParseError("missing DEMAND_SECTION")
    if depot is None:
        raise ParseError("missing DEPOT_SECTION")
    return ProblemInstance(
        kind=ProblemKind.CVRP,
        name=name,
        dimension=dimension - 1,  # customers, excluding the depot
        payload=CvrpPayload(
            coords=tuple(coords),
            demands=tuple(demands),
            capacity=capacity,
            depot_index=depot - 1,
        ),
    )


def serialize_vrplib(instance: ProblemInstance) -> str:
    if instance.kind is not ProblemKind.CVRP:
        raise ValueError("serialize_vrplib expects a CVRP instance")
    payload = instance.payload
    n = len(payload.coords)
    out = [
        f"NAME : {instance.name}",
        "TYPE : CVRP",
        f"DIMENSION : {n}",
        "EDGE_WEIGHT_TYPE : EUC_2D",
        f"CAPACITY : {payload.capacity}",
        "NODE_COORD_SECTION",
    ]
    for idx, (x, y) in enumerate(payload.coords, start=1):
        out.append(f"{idx} {_fmt(x)} {_fmt(y)}")
    out.append("DEMAND_SECTION")
    for idx, demand in enumerate(payload.demands, start=1):
        out.append(f"{idx} {demand}")
    out.extend(["DEPOT_SECTION", str(payload.depot_index + 1), "-1", "EOF"])
    return "\n".join(out) + "\n"


def parse_taillard(text: str, name: str | None = None) -> ProblemInstance:
    """Parse the first instance of a Taillard-style flow-shop file.

    Expected layout: a descriptive header line, a line of integers starting
    with the job and machine counts (optionally followed by seed and bounds),
    a ``processing times`` marker, then one line per machine with one
    integer per job. The upper bound, when present and positive, is kept as
    the instance's best-known makespan.
    """
    lines = text.splitlines()
    i = 0
    while i < len(lines) and "number of jobs" not in lines[i].lower():
        i += 1
    if i >= len(lines):
        raise ParseError("missing 'number of jobs ...' header")
    i += 1
    if i >= len(lines):
        raise ParseError("file ends before the instance counts line", i)
    counts = lines[i].split()
    if len(counts) < 2:
        raise ParseError(f"expected at least jobs and machines, got {lines[i].strip()!r}", i + 1)
    try:
        jobs, machines = int(counts[0]), int(counts[1])
        upper_bound = int(counts[3]) if len(counts) >= 4 else 0
    except ValueError:
        raise ParseError(f"non-integer counts line {lines[i].strip()!r}", i + 1)
    if jobs < 1 or machines < 1:
        raise ParseError(f"invalid sizes jobs={jobs} machines={machines}", i + 1)
    i += 1
    while i < len(lines) and "processing times" not in lines[i].lower():
        i += 1
    if i >= len(lines):
        raise ParseError("missing 'processing times :' marker")
    i += 1
    rows: list[list[int]] = []
    for m in range(machines):
        if i >= len(lines):
            raise ParseError(f"processing block truncated after machine {m}", i)
        parts = lines[i].split()
        if len(parts) != jobs:
            raise ParseError(
                f"machine row has {len(parts)} entries, expected {jobs}", i + 1
            )
        try:
            rows.append([int(p) for p in parts])
        except ValueError:
            raise ParseError(f"non-integer processing time in {lines[i].strip()!r}", i + 1)
        i += 1
    # stored as jobs x machines
    processing = tuple(
        tuple(rows[m][j] for m in range(machines)) for j in range(jobs)
    )
    return ProblemInstance(
        kind=ProblemKind.FSSP,
        name=name or f"fssp{jobs}x{machines}",
        dimension=jobs,
        payload=FsspPayload(processing=processing),
        best_known=float(upper_bound) if upper_bound > 0 else None,
    )


def serialize_taillard(instance: ProblemInstance) -> str:
    if instance.kind is not ProblemKind.FSSP:
        raise ValueError("serialize_taillard expects an FSSP instance")
    processing = instance.payload.processing
    jobs = len(processing)
    machines = len(processing[0])
    upper = int(instance.best_known) if instance.best_known else 0
    out = [
        "number of jobs, number of machines, initial seed, upper bound and lower bound :",
        f"{jobs:>12}{machines:>12}{0:>12}{upper:>12}{0:>12}",
        "processing times :",
    ]
    for m in range(machines):
        out.append(" ".join(f"{processing[j][m]:>3}" for j in range(jobs)))
    return "\n".join(out) + "\n"


def _fmt(value: float) -> str:
    return str(int(value)) if float(value).is_integer() else repr(float(value))
