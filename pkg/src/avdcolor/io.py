"""Edge-list text and colouring JSON.

Edge lists are a header ``n m`` followed by ``m`` lines ``u v`` with
0-based endpoints; blank lines and lines starting with ``#`` are skipped.
Parallel edges are repeated lines.
"""

from __future__ import annotations

import json
from pathlib import Path

from .coloring import PartialEdgeColoring
from .errors import IndexOutOfRange, ParseError
from .graph import MultiGraph


def _ints(line: str, lineno: int, expected: int) -> list[int]:
    parts = line.split()
    if len(parts) != expected:
        raise ParseError(lineno, f"expected {expected} integers, got {len(parts)} field(s)")
    try:
        values = [int(p) for p in parts]
    except ValueError:
        raise ParseError(lineno, f"non-integer field in {line.strip()!r}") from None
    if any(v < 0 for v in values):
        raise ParseError(lineno, "negative value")
    return values


def parse_edge_list(text: str, cap: int = 1) -> MultiGraph:
    header = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if header is None:
            header = _ints(line, lineno, 2)
            continue
        u, v = _ints(line, lineno, 2)
        if u >= header[0] or v >= header[0]:
            raise IndexOutOfRange(f"line {lineno}: endpoint outside 0..{header[0] - 1}")
        edges.append((u, v))
    if header is None:
        raise ParseError(0, "missing 'n m' header")
    n, m = header
    if len(edges) != m:
        raise ParseError(lineno if text else 0, f"header announces {m} edges, found {len(edges)}")
    return MultiGraph(n, edges, cap=cap)


def serialize_edge_list(g: MultiGraph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def read_graph(path: str | Path, cap: int = 1) -> MultiGraph:
    return parse_edge_list(Path(path).read_text(), cap=cap)


def write_graph(g: MultiGraph, path: str | Path) -> None:
    Path(path).write_text(serialize_edge_list(g))


def read_coloring(g: MultiGraph, path: str | Path) -> PartialEdgeColoring:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(exc.lineno, exc.msg) from None
    if isinstance(data, dict) and "coloring" in data:
        data = data["coloring"]
    if not isinstance(data, dict) or "colors" not in data:
        raise ParseError(1, "expected an object with 'k' and 'colors'")
    if "k" not in data:
        data = {"k": max(data["colors"], default=0), "colors": data["colors"]}
    return PartialEdgeColoring.from_json(g, data)


def write_coloring(c: PartialEdgeColoring, path: str | Path) -> None:
    Path(path).write_text(json.dumps(c.to_json()) + "\n")
