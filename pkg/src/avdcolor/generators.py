"""Graph families used by the CLI and the test-suite."""

from __future__ import annotations

import itertools
from collections import Counter
from typing import Iterator

import numpy as np

from .errors import InfeasibleFamily
from .graph import MultiGraph, build_graph


def path(n: int) -> MultiGraph:
    if n < 1:
        raise InfeasibleFamily("path needs n >= 1")
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> MultiGraph:
    if n < 3:
        raise InfeasibleFamily("cycle needs n >= 3")
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> MultiGraph:
    if n < 1:
        raise InfeasibleFamily("complete graph needs n >= 1")
    return build_graph(n, itertools.combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> MultiGraph:
    if a < 1 or b < 1:
        raise InfeasibleFamily("complete bipartite graph needs a, b >= 1")
    return build_graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def star(leaves: int) -> MultiGraph:
    return complete_bipartite(1, leaves)


def gnp(n: int, p: float, seed: int) -> MultiGraph:
    if n < 0 or not 0.0 <= p <= 1.0:
        raise InfeasibleFamily("gnp needs n >= 0 and p in [0, 1]")
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, k=1)
    keep = rng.random(iu.size) < p
    return build_graph(n, zip(iu[keep].tolist(), ju[keep].tolist()))


def bipartite_gnp(a: int, b: int, p: float, seed: int) -> MultiGraph:
    """Random bipartite graph with parts ``0..a-1`` and ``a..a+b-1``."""
    if a < 1 or b < 1 or not 0.0 <= p <= 1.0:
        raise InfeasibleFamily("bipartite_gnp needs a, b >= 1 and p in [0, 1]")
    rng = np.random.default_rng(seed)
    keep = rng.random((a, b)) < p
    return build_graph(a + b, [(i, a + j) for i, j in zip(*np.nonzero(keep))])


def regular(n: int, d: int, seed: int, max_tries: int = 1000) -> MultiGraph:
    """Random simple ``d``-regular graph from the pairing model.

    Each round pairs the remaining stubs at random and keeps every pair
    that is neither a loop nor a repeat; rejected stubs go back into the
    pool. If the pool gets stuck the whole attempt restarts.
    """
    if (n * d) % 2 or not 0 <= d < n:
        raise InfeasibleFamily("regular graph needs n*d even and 0 <= d < n")
    rng = np.random.default_rng(seed)
    for _ in range(max_tries):
        edges = _try_pairing(n, d, rng)
        if edges is not None:
            return build_graph(n, sorted(edges))
    raise InfeasibleFamily(f"no simple {d}-regular graph on {n} vertices after {max_tries} tries")


def _try_pairing(n: int, d: int, rng: np.random.Generator) -> set[tuple[int, int]] | None:
    edges: set[tuple[int, int]] = set()
    stubs = np.repeat(np.arange(n), d)
    while stubs.size:
        rng.shuffle(stubs)
        leftover: Counter[int] = Counter()
        for s, t in zip(stubs[0::2].tolist(), stubs[1::2].tolist()):
            key = (s, t) if s < t else (t, s)
            if s != t and key not in edges:
                edges.add(key)
            else:
                leftover[s] += 1
                leftover[t] += 1
        if not leftover:
            break
        pool = sorted(leftover)
        if not any(
            (a, b) not in edges for a, b in itertools.combinations(pool, 2)
        ):
            return None
        stubs = np.array([v for v in pool for _ in range(leftover[v])])
    return edges


def small_connected_graphs(max_n: int) -> Iterator[MultiGraph]:
    """Every connected simple graph on 1..max_n vertices, one per isomorphism class."""
    for n in range(1, max_n + 1):
        slots = list(itertools.combinations(range(n), 2))
        perms = list(itertools.permutations(range(n)))
        seen: set[tuple[tuple[int, int], ...]] = set()
        for bits in range(1 << len(slots)):
            edges = [slots[i] for i in range(len(slots)) if bits >> i & 1]
            if not _connected(n, edges):
                continue
            canon = min(
                tuple(sorted((min(p[u], p[v]), max(p[u], p[v])) for u, v in edges))
                for p in perms
            )
            if canon in seen:
                continue
            seen.add(canon)
            yield build_graph(n, canon)


def _connected(n: int, edges: list[tuple[int, int]]) -> bool:
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = {0}
    stack = [0]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == n


def generate(family: str, *args) -> MultiGraph:
    """Dispatch by family name: ``generate("regular", 10, 3, seed)``."""
    table = {
        "path": (path, (int,)),
        "cycle": (cycle, (int,)),
        "complete": (complete, (int,)),
        "complete_bipartite": (complete_bipartite, (int, int)),
        "star": (star, (int,)),
        "gnp": (gnp, (int, float, int)),
        "bipartite_gnp": (bipartite_gnp, (int, int, float, int)),
        "regular": (regular, (int, int, int)),
    }
    if family not in table:
        raise InfeasibleFamily(f"unknown family {family!r}")
    fn, types = table[family]
    if len(args) != len(types):
        raise InfeasibleFamily(f"{family} takes {len(types)} argument(s), got {len(args)}")
    return fn(*(t(a) for t, a in zip(types, args)))
