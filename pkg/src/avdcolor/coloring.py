"""Partial edge colourings, colour-set queries and verification.

Colours are the integers ``1..k``; ``0`` marks an unused (uncoloured) edge.
Vertex colour sets are exposed as frozensets; hot loops use int bitmasks
(bit ``c`` set when colour ``c`` meets the vertex).
"""

from __future__ import annotations

from collections import defaultdict
from typing import Iterable, Sequence

from .errors import EdgeAlreadyColored, NotProper, NotTotal, PaletteTooSmall
from .graph import MultiGraph

ColorSet = frozenset


class PartialEdgeColoring:
    """Map from edge ids to colours in ``1..k`` (``0`` = unused)."""

    __slots__ = ("graph", "k", "colors")

    def __init__(self, graph: MultiGraph, k: int, colors: Sequence[int] | None = None):
        if k < 0:
            raise ValueError("palette size must be non-negative")
        if colors is None:
            colors = [0] * graph.m
        elif len(colors) != graph.m:
            raise ValueError(f"expected {graph.m} colours, got {len(colors)}")
        for e, c in enumerate(colors):
            if not 0 <= c <= k:
                raise ValueError(f"colour {c} of edge {e} outside 0..{k}")
        self.graph = graph
        self.k = k
        self.colors = [int(c) for c in colors]

    def __getitem__(self, e: int) -> int:
        return self.colors[e]

    def assign(self, e: int, color: int) -> None:
        if not 1 <= color <= self.k:
            raise ValueError(f"colour {color} outside 1..{self.k}")
        self.colors[e] = color

    def unassign(self, e: int) -> None:
        self.colors[e] = 0

    def copy(self) -> PartialEdgeColoring:
        return PartialEdgeColoring(self.graph, self.k, list(self.colors))

    def with_palette(self, k: int) -> PartialEdgeColoring:
        return PartialEdgeColoring(self.graph, k, list(self.colors))

    def is_total(self) -> bool:
        return all(self.colors)

    def unused_edges(self) -> list[int]:
        return [e for e, c in enumerate(self.colors) if c == 0]

    def used_colors(self) -> set[int]:
        return {c for c in self.colors if c}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PartialEdgeColoring):
            return NotImplemented
        return self.graph == other.graph and self.k == other.k and self.colors == other.colors

    def __repr__(self) -> str:
        return f"PartialEdgeColoring(k={self.k}, m={len(self.colors)}, unused={self.colors.count(0)})"

    def to_json(self) -> dict:
        return {"k": self.k, "colors": list(self.colors)}

    @classmethod
    def from_json(cls, graph: MultiGraph, data: dict) -> PartialEdgeColoring:
        return cls(graph, int(data["k"]), [int(c) for c in data["colors"]])


def color_mask(c: PartialEdgeColoring, v: int) -> int:
    mask = 0
    for e in c.graph.incidence[v]:
        col = c.colors[e]
        if col:
            mask |= 1 << col
    return mask


def color_masks(c: PartialEdgeColoring) -> list[int]:
    masks = [0] * c.graph.n
    for e, (u, v) in enumerate(c.graph.edges):
        col = c.colors[e]
        if col:
            bit = 1 << col
            masks[u] |= bit
            masks[v] |= bit
    return masks


def mask_to_set(mask: int) -> frozenset[int]:
    out = []
    c = 0
    while mask:
        if mask & 1:
            out.append(c)
        mask >>= 1
        c += 1
    return frozenset(out)


def color_set(c: PartialEdgeColoring, v: int) -> frozenset[int]:
    """Colours on assigned edges incident to ``v``."""
    return frozenset(c.colors[e] for e in c.graph.incidence[v] if c.colors[e])


def verify_proper(c: PartialEdgeColoring) -> list[tuple[int, int]]:
    """Pairs of edges that share an endpoint and a colour (sorted, deduplicated)."""
    conflicts: set[tuple[int, int]] = set()
    for v in range(c.graph.n):
        by_color: dict[int, list[int]] = defaultdict(list)
        for e in c.graph.incidence[v]:
            col = c.colors[e]
            if col:
                by_color[col].append(e)
        for group in by_color.values():
            if len(group) > 1:
                group.sort()
                for i in range(len(group)):
                    for j in range(i + 1, len(group)):
                        conflicts.add((group[i], group[j]))
    return sorted(conflicts)


def indistinguishable_pairs(
    c: PartialEdgeColoring, pairs: Iterable[tuple[int, int]] | None = None
) -> list[tuple[int, int]]:
    """Adjacent pairs with equal colour sets; no totality or properness checks."""
    masks = color_masks(c)
    if pairs is None:
        pairs = c.graph.adjacent_pairs()
    return [(u, v) for u, v in pairs if masks[u] == masks[v]]


def bad_vertices(c: PartialEdgeColoring) -> set[int]:
    """Vertices that are not distinguishable from some neighbour."""
    out: set[int] = set()
    for u, v in indistinguishable_pairs(c):
        out.add(u)
        out.add(v)
    return out


def verify_avd(c: PartialEdgeColoring) -> list[tuple[int, int]]:
    """Adjacent vertex pairs meeting the same colour set.

    Empty exactly when ``c`` is an adjacent-vertex-distinguishing colouring.
    """
    missing = c.colors.count(0)
    if missing:
        raise NotTotal(f"{missing} edge(s) are unused")
    if verify_proper(c):
        raise NotProper("colouring has conflicting incident edges")
    return indistinguishable_pairs(c)


def available_colors(c: PartialEdgeColoring, e: int) -> frozenset[int]:
    if c.colors[e]:
        raise EdgeAlreadyColored(f"edge {e} already has colour {c.colors[e]}")
    u, v = c.graph.edges[e]
    taken = color_mask(c, u) | color_mask(c, v)
    return frozenset(x for x in range(1, c.k + 1) if not taken >> x & 1)


def unused_graph(c: PartialEdgeColoring) -> tuple[MultiGraph, tuple[int, ...]]:
    """Subgraph of unused edges on the full vertex set, plus its edge-id map."""
    return c.graph.edge_subgraph(c.unused_edges())


def proper_edge_coloring(g: MultiGraph, k: int) -> PartialEdgeColoring:
    """Total proper colouring of ``g`` from ``1..k`` using at most Δ+μ colours."""
    need = g.max_degree + g.max_multiplicity
    if k < need:
        raise PaletteTooSmall(f"palette {k} < Δ+μ = {need}")
    return PartialEdgeColoring(g, k, _VizingColorer(g, need).run())


class _VizingColorer:
    """Fan recolouring for multigraphs with K >= Δ+μ colours.

    A fan anchored at ``x`` is a list of distinct edges e0..en at ``x`` with
    e0 uncoloured and, for j >= 1, the colour of ej missing at the far end
    of some earlier ei. Every step either folds the fan (shifts colours back
    towards e0) or swaps one Kempe chain and then folds.
    """

    def __init__(self, g: MultiGraph, K: int):
        self.g = g
        self.K = K
        self.color = [0] * g.m
        self.at: list[dict[int, int]] = [{} for _ in range(g.n)]

    def missing(self, v: int) -> set[int]:
        at = self.at[v]
        return {c for c in range(1, self.K + 1) if c not in at}

    def set_color(self, e: int, c: int) -> None:
        u, v = self.g.edges[e]
        old = self.color[e]
        if old:
            del self.at[u][old]
            del self.at[v][old]
        self.color[e] = c
        if c:
            self.at[u][c] = e
            self.at[v][c] = e

    def run(self) -> list[int]:
        g = self.g
        for e in range(g.m):
            u, v = g.edges[e]
            common = self.missing(u) & self.missing(v)
            if common:
                self.set_color(e, min(common))
            else:
                x = u if g.degree(u) <= g.degree(v) else v
                self._color_with_fan(e, x)
        return self.color

    def _color_with_fan(self, e0: int, x: int) -> None:
        g = self.g
        fan = [e0]
        rim = [g.other(e0, x)]
        fan_missing = self.missing(rim[0])
        candidates = [f for f in g.incidence[x] if self.color[f]]
        while True:
            f = next((f for f in candidates if self.color[f] in fan_missing), None)
            if f is None:
                raise RuntimeError("fan cannot grow; palette below Vizing bound")
            candidates.remove(f)
            y = g.other(f, x)
            fan.append(f)
            rim.append(y)
            miss_y = self.missing(y)
            fan_missing |= miss_y
            if self.missing(x) & miss_y:
                self._fold(fan, rim, x, len(fan) - 1)
                return
            for i in range(len(rim) - 1):
                if rim[i] != y and self.missing(rim[i]) & miss_y:
                    self._reduce(fan, rim, x, i)
                    return

    def _fold(self, fan: list[int], rim: list[int], x: int, j: int) -> None:
        while True:
            new = min(self.missing(x) & self.missing(rim[j]))
            old = self.color[fan[j]]
            self.set_color(fan[j], new)
            if j == 0:
                return
            j = next(i for i in range(j) if old not in self.at[rim[i]])

    def _reduce(self, fan: list[int], rim: list[int], x: int, i: int) -> None:
        yi, yn = rim[i], rim[-1]
        a = min(self.missing(yi) & self.missing(yn))
        b = min(self.missing(x))
        if self._swap_chain(yi, a, b, x):
            self._fold(fan, rim, x, i)
        else:
            self._swap_chain(yn, a, b, x)
            self._fold(fan, rim, x, len(fan) - 1)

    def _swap_chain(self, start: int, a: int, b: int, x: int) -> bool:
        """Swap the a/b chain leaving ``start`` via colour ``b`` unless it ends at ``x``."""
        chain = []
        z, cur = start, b
        while cur in self.at[z]:
            e = self.at[z][cur]
            chain.append(e)
            z = self.g.other(e, z)
            cur = a if cur == b else b
        if z == x:
            return False
        swapped = [(e, a if self.color[e] == b else b) for e in chain]
        for e, _ in swapped:
            self.set_color(e, 0)
        for e, c in swapped:
            self.set_color(e, c)
        return True
