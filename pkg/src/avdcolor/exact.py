"""Exact avd-chromatic number by depth-first branch and bound.

Edges are coloured in an order that finishes vertices early. Two pruning
rules apply: colour ``j + 1`` is offered only once ``1..j`` are in use
(palette symmetry), and as soon as two adjacent vertices of equal degree
are both fully coloured their sets must differ. Vertices of different
degree can never collide under a proper total colouring, so only
equal-degree pairs are ever compared.

``brute_force_oracle`` shares none of this machinery and exists to check it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .coloring import PartialEdgeColoring
from .errors import BudgetExhausted, IsolatedEdgePresent, TooLarge
from .graph import MultiGraph, isolated_edges


@dataclass(frozen=True)
class SearchConfig:
    max_palette: Optional[int] = None  # None: |E|, which always suffices
    node_budget: int = 0  # 0 = unlimited
    deterministic: bool = True
    seed: int = 0


def _check_input(g: MultiGraph) -> None:
    if not g.is_simple():
        raise ValueError("exact search expects a simple graph")
    iso = isolated_edges(g)
    if iso:
        raise IsolatedEdgePresent(f"isolated edge(s) {sorted(iso)} admit no avd-colouring")


def _edge_order(g: MultiGraph, cfg: SearchConfig) -> list[int]:
    """Order edges so that vertices are completed one after another."""
    rng = None if cfg.deterministic else random.Random(cfg.seed)
    placed = [0] * g.n
    ordered: list[int] = []
    seen: set[int] = set()
    remaining = {v for v in range(g.n) if g.degree(v)}
    while remaining:
        if rng is None:
            v = max(remaining, key=lambda w: (placed[w], g.degree(w), -w))
        else:
            best = max((placed[w], g.degree(w)) for w in remaining)
            v = rng.choice(sorted(w for w in remaining if (placed[w], g.degree(w)) == best))
        remaining.discard(v)
        inc = [e for e in g.incidence[v] if e not in seen]
        if rng is not None:
            rng.shuffle(inc)
        for e in inc:
            seen.add(e)
            ordered.append(e)
            placed[g.other(e, v)] += 1
    return ordered


class _Search:
    def __init__(self, g: MultiGraph, k: int, cfg: SearchConfig):
        self.g = g
        self.k = k
        self.budget = cfg.node_budget
        self.nodes = 0
        self.order = _edge_order(g, cfg)
        finish = [-1] * g.n
        for i, e in enumerate(self.order):
            for v in g.edges[e]:
                finish[v] = i
        # checks[i]: equal-degree adjacent pairs whose later vertex completes at step i
        self.checks: list[list[tuple[int, int]]] = [[] for _ in self.order]
        for u, v in g.adjacent_pairs():
            if g.degree(u) == g.degree(v):
                self.checks[max(finish[u], finish[v])].append((u, v))
        self.mask = [0] * g.n
        self.color = [0] * g.m

    def run(self) -> Optional[list[int]]:
        return list(self.color) if self._dfs(0, 0) else None

    def _dfs(self, i: int, used: int) -> bool:
        if i == len(self.order):
            return True
        e = self.order[i]
        u, v = self.g.edges[e]
        taken = self.mask[u] | self.mask[v]
        top = min(self.k, used + 1)
        mask = self.mask
        for c in range(1, top + 1):
            bit = 1 << c
            if taken & bit:
                continue
            self.nodes += 1
            if self.budget and self.nodes > self.budget:
                raise BudgetExhausted(f"node budget {self.budget} exhausted at k={self.k}")
            mask[u] |= bit
            mask[v] |= bit
            self.color[e] = c
            if all(mask[a] != mask[b] for a, b in self.checks[i]):
                if self._dfs(i + 1, max(used, c)):
                    return True
            mask[u] ^= bit
            mask[v] ^= bit
            self.color[e] = 0
        return False


def exists_avd_coloring(
    g: MultiGraph, k: int, cfg: SearchConfig = SearchConfig()
) -> Optional[PartialEdgeColoring]:
    """A total avd-colouring from ``1..k``, or ``None`` if none exists.

    Raises ``BudgetExhausted`` when the node budget runs out, which is
    never reported as infeasibility.
    """
    _check_input(g)
    if g.m == 0:
        return PartialEdgeColoring(g, k)
    if k < g.max_degree:
        return None
    # two adjacent vertices of degree k both see the whole palette
    for u, v in g.adjacent_pairs():
        if g.degree(u) == g.degree(v) == k:
            return None
    colors = _Search(g, k, cfg).run()
    return None if colors is None else PartialEdgeColoring(g, k, colors)


def solve_avd(g: MultiGraph, cfg: SearchConfig = SearchConfig()) -> tuple[int, PartialEdgeColoring]:
    """Least palette size admitting an avd-colouring, with a witness."""
    _check_input(g)
    if g.m == 0:
        return 0, PartialEdgeColoring(g, 0)
    top = cfg.max_palette if cfg.max_palette is not None else max(g.m, g.max_degree)
    for k in range(g.max_degree, top + 1):
        found = exists_avd_coloring(g, k, cfg)
        if found is not None:
            return k, found
    raise BudgetExhausted(f"no avd-colouring with at most {top} colours (max_palette too small)")


def avd_chromatic_number(g: MultiGraph, cfg: SearchConfig = SearchConfig()) -> int:
    return solve_avd(g, cfg)[0]


def _oracle_feasible_size(m: int, k: int) -> bool:
    return m <= 10 or (k <= 6 and m <= 12)


def brute_force_oracle(g: MultiGraph, k: int) -> Optional[PartialEdgeColoring]:
    """Exhaustive enumeration of proper colourings from ``1..k``, filtered for avd.

    Edges are tried in id order with every colour and no symmetry
    breaking; only improper partial assignments are cut.
    """
    m = g.m
    if not _oracle_feasible_size(m, k):
        raise TooLarge(f"|E|={m}, k={k} is beyond the enumeration guard")
    edges = g.edges
    # incident earlier edges, for the properness test
    earlier = [[f for f in range(e) if set(edges[f]) & set(edges[e])] for e in range(m)]
    adjacent = sorted({(min(u, v), max(u, v)) for u, v in edges})
    assignment = [0] * m

    def sets_distinct() -> bool:
        sets = [set() for _ in range(g.n)]
        for e, (u, v) in enumerate(edges):
            sets[u].add(assignment[e])
            sets[v].add(assignment[e])
        return all(sets[u] != sets[v] for u, v in adjacent)

    def rec(e: int) -> bool:
        if e == m:
            return sets_distinct()
        for c in range(1, k + 1):
            if any(assignment[f] == c for f in earlier[e]):
                continue
            assignment[e] = c
            if rec(e + 1):
                return True
        assignment[e] = 0
        return False

    if rec(0):
        return PartialEdgeColoring(g, k, assignment)
    return None
