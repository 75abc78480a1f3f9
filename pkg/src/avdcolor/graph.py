"""Loopless multigraphs with dense integer ids.

Vertices are ``0..n-1``. Edges are identified by their position in the
edge list, so parallel copies of the same pair get distinct ids. Graphs
are immutable once built; every derived graph (induced subgraphs, unused
graphs, contractions) is a new value carrying a map back to its parent.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import IndexOutOfRange, LoopRejected, MultiplicityExceeded

Edge = tuple[int, int]


class MultiGraph:
    __slots__ = ("n", "edges", "incidence", "cap", "_mult")

    def __init__(self, n: int, edges: Iterable[Sequence[int]], cap: int = 1):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        pairs: list[Edge] = []
        incidence: list[list[int]] = [[] for _ in range(n)]
        mult: Counter[Edge] = Counter()
        for eid, (u, v) in enumerate(edges):
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise IndexOutOfRange(f"edge {eid} = ({u}, {v}) outside 0..{n - 1}")
            if u == v:
                raise LoopRejected(f"edge {eid} is a loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            mult[key] += 1
            if mult[key] > cap:
                raise MultiplicityExceeded(
                    f"pair {key} has more than {cap} parallel edge(s)"
                )
            pairs.append((u, v))
            incidence[u].append(eid)
            incidence[v].append(eid)
        self.n = n
        self.cap = cap
        self.edges: tuple[Edge, ...] = tuple(pairs)
        self.incidence: tuple[tuple[int, ...], ...] = tuple(tuple(x) for x in incidence)
        self._mult = mult

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.incidence[v])

    def degrees(self) -> list[int]:
        return [len(inc) for inc in self.incidence]

    @property
    def max_degree(self) -> int:
        return max((len(inc) for inc in self.incidence), default=0)

    def multiplicity(self, u: int, v: int) -> int:
        key = (u, v) if u < v else (v, u)
        return self._mult.get(key, 0)

    @property
    def max_multiplicity(self) -> int:
        return max(self._mult.values(), default=0)

    def other(self, e: int, v: int) -> int:
        a, b = self.edges[e]
        return b if a == v else a

    def neighbors(self, v: int) -> Iterator[int]:
        """Yield neighbours of ``v`` once per connecting edge."""
        for e in self.incidence[v]:
            yield self.other(e, v)

    def adjacent_pairs(self) -> list[Edge]:
        """Distinct adjacent vertex pairs ``(u, v)`` with ``u < v``."""
        return sorted(self._mult)

    def is_simple(self) -> bool:
        return self.max_multiplicity <= 1

    def edge_subgraph(self, edge_ids: Iterable[int], cap: int | None = None) -> tuple[MultiGraph, tuple[int, ...]]:
        """Subgraph on the same vertex set keeping ``edge_ids``.

        Returns the subgraph and a tuple mapping its edge ids to ours.
        """
        ids = tuple(sorted(set(edge_ids)))
        sub = MultiGraph(self.n, (self.edges[e] for e in ids), cap=self.cap if cap is None else cap)
        return sub, ids

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiGraph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def same_multiset(self, other: MultiGraph) -> bool:
        """Equal vertex count and equal multiset of unordered edges."""
        return self.n == other.n and self._mult == other._mult

    def __repr__(self) -> str:
        return f"MultiGraph(n={self.n}, m={self.m}, cap={self.cap})"


def build_graph(n: int, edges: Iterable[Sequence[int]], cap: int = 1) -> MultiGraph:
    """Build a graph; edge ids follow input order."""
    return MultiGraph(n, edges, cap=cap)


@dataclass(frozen=True)
class DegreeClassification:
    threshold: Fraction
    low: frozenset[int]
    H: MultiGraph
    # H edge id -> parent edge id
    h_edges: tuple[int, ...]
    h_edge_set: frozenset[int]

    @property
    def high(self) -> frozenset[int]:
        return frozenset(range(self.H.n)) - self.low


def classify_by_degree(g: MultiGraph, threshold: Fraction | int | float | str) -> DegreeClassification:
    """Split vertices at ``deg(v) < threshold`` and build the induced low graph.

    ``H`` keeps the full vertex set of ``g`` (high vertices are simply
    isolated in it), so vertex ids never need translating.
    """
    t = Fraction(threshold)
    if t <= 0:
        raise ValueError("threshold must be positive")
    low = frozenset(v for v in range(g.n) if g.degree(v) < t)
    keep = [e for e, (u, v) in enumerate(g.edges) if u in low and v in low]
    H, ids = g.edge_subgraph(keep)
    return DegreeClassification(threshold=t, low=low, H=H, h_edges=ids, h_edge_set=frozenset(ids))


def isolated_edges(g: MultiGraph) -> set[int]:
    """Edges whose two endpoints both have degree one."""
    return {e for e, (u, v) in enumerate(g.edges) if g.degree(u) == 1 and g.degree(v) == 1}
