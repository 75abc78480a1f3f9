"""Constructive avd-colouring: contract, randomise, complete, repair, lift.

The run is:

1. contract every edge whose endpoints are both low-degree and have no
   other low-degree neighbour, giving a multigraph ``G'`` of multiplicity
   at most two;
2. start from a proper (Δ+2)-colouring of ``G'``, randomly uncolour edges
   outside the low graph ``H`` (phase 1), uncolour a few more edges around
   the vertices left with small unused degree (phase 2), and colour the
   unused graph with fresh colours;
3. recolour edges of ``H`` around one pivot at a time until every vertex is
   distinguishable, then lift the colouring back to the input graph.

The probabilistic phases only have a positive success probability, so each
is realised by full resampling under an attempt budget. When a budget runs
out, or a step meets a situation that only the asymptotic regime rules
out, the run finishes with a local-search repair and says so in its report.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field, fields, replace
from fractions import Fraction
from typing import Any, Optional

import numpy as np

from . import rng as rngmod
from .coloring import (
    PartialEdgeColoring,
    bad_vertices,
    color_masks,
    indistinguishable_pairs,
    proper_edge_coloring,
    unused_graph,
    verify_avd,
    verify_proper,
)
from .errors import (
    AvdError,
    BudgetExhausted,
    InsufficientEligibleEdges,
    IsolatedEdgePresent,
    ListInfeasible,
    NoAvailableColor,
    PaletteTooSmall,
    RepairStalled,
    ResampleBudgetExceeded,
)
from .graph import DegreeClassification, MultiGraph, classify_by_degree, isolated_edges


@dataclass(frozen=True)
class PipelineParams:
    uncolor_numerator: float = 180.0
    recovery_threshold: int = 290
    small_uc_threshold: int = 20
    low_unused_threshold: int = 20
    phase2_uncolor: int = 5
    symdiff_target: int = 10
    neighbourhood_cap: Fraction = Fraction(1, 100)
    degree_split: Fraction = Fraction(1, 3)
    repair_slack: int = 300
    fresh_palette: int = 296
    palette_size: Optional[int] = None  # None: Δ + repair_slack
    max_attempts: int = 100
    repair_attempts: int = 200

    def __post_init__(self):
        object.__setattr__(self, "neighbourhood_cap", Fraction(self.neighbourhood_cap))
        object.__setattr__(self, "degree_split", Fraction(self.degree_split))
        if self.uncolor_numerator < 0:
            raise ValueError("uncolor_numerator must be non-negative")
        if not (0 <= self.low_unused_threshold <= self.small_uc_threshold <= self.recovery_threshold):
            raise ValueError("need low_unused <= small_uc <= recovery thresholds")
        if self.phase2_uncolor < 1:
            raise ValueError("phase2_uncolor must be at least 1")
        if self.repair_slack < 1 or self.fresh_palette < 0:
            raise ValueError("repair_slack must be >= 1 and fresh_palette >= 0")
        if self.max_attempts < 1 or self.repair_attempts < 1:
            raise ValueError("attempt budgets must be positive")
        if not 0 < self.degree_split <= 1:
            raise ValueError("degree_split must lie in (0, 1]")

    @classmethod
    def asymptotic(cls) -> PipelineParams:
        """The constants of the large-degree analysis (degree beyond about 10^20)."""
        return cls()

    @classmethod
    def desk(cls, delta: int) -> PipelineParams:
        """Constants rescaled for maximum degree ``delta`` in the tens.

        The expected number of uncoloured edges at a maximum-degree vertex
        is held at 10 (half the degree for small graphs) and the recovery
        threshold keeps its 1.6 ratio to it; the phase-2 count, the
        symmetric-difference target and the colour slack shrink to what
        such degrees can carry.
        """
        delta = max(int(delta), 1)
        a = min(10.0, delta / 2)
        rho = max(2, math.ceil(1.6 * a))
        q = 2 if a >= 4 else 1
        s = 2 if delta >= 6 else 1
        fresh = rho + s + 2
        return cls(
            uncolor_numerator=a,
            recovery_threshold=rho,
            small_uc_threshold=q,
            low_unused_threshold=q,
            phase2_uncolor=s,
            symdiff_target=max(1, 2 * s - 1),
            neighbourhood_cap=Fraction(1, 10),
            degree_split=Fraction(1, 3),
            repair_slack=fresh + 4,
            fresh_palette=fresh,
        )

    def with_overrides(self, **overrides: Any) -> PipelineParams:
        known = {f.name: f for f in fields(self)}
        conv: dict[str, Any] = {}
        for name, value in overrides.items():
            if name not in known:
                raise KeyError(f"unknown parameter {name!r}")
            current = getattr(self, name)
            if isinstance(value, str):
                if name == "palette_size":
                    value = None if value.lower() in ("none", "") else int(value)
                elif isinstance(current, Fraction):
                    value = Fraction(value)
                elif isinstance(current, float):
                    value = float(value)
                else:
                    value = int(value)
            conv[name] = value
        return replace(self, **conv)

    def to_json(self) -> dict:
        out = asdict(self)
        for k, v in out.items():
            if isinstance(v, Fraction):
                out[k] = str(v)
        return out


# ---------------------------------------------------------------- step 1


@dataclass(frozen=True)
class ContractionRecord:
    # (edge of G, merged vertex of G', original endpoints u, v)
    contractions: tuple[tuple[int, int, int, int], ...]
    # edge of G' -> edge of G
    edge_map: tuple[int, ...]
    # vertex of G -> vertex of G'
    vertex_map: tuple[int, ...]


def _threshold(delta: int, params: PipelineParams) -> Fraction:
    return Fraction(delta) * params.degree_split


def step1_contract(g: MultiGraph, params: PipelineParams) -> tuple[MultiGraph, ContractionRecord]:
    """Contract low-low edges whose endpoints have no other low neighbour."""
    t = _threshold(g.max_degree, params)
    low = [g.degree(v) < t for v in range(g.n)]
    low_nbrs = [sum(1 for w in set(g.neighbors(v)) if low[w]) for v in range(g.n)]
    contracted = [
        e
        for e, (u, v) in enumerate(g.edges)
        if low[u] and low[v] and low_nbrs[u] == 1 and low_nbrs[v] == 1
    ]
    partner = {}
    for e in contracted:
        u, v = g.edges[e]
        partner[max(u, v)] = min(u, v)
    vertex_map = [0] * g.n
    nxt = 0
    for v in range(g.n):
        if v in partner:
            continue
        vertex_map[v] = nxt
        nxt += 1
    for v, u in partner.items():
        vertex_map[v] = vertex_map[u]
    dropped = set(contracted)
    kept = [e for e in range(g.m) if e not in dropped]
    g2 = MultiGraph(nxt, [(vertex_map[g.edges[e][0]], vertex_map[g.edges[e][1]]) for e in kept], cap=2)
    rec = ContractionRecord(
        contractions=tuple((e, vertex_map[g.edges[e][0]], *g.edges[e]) for e in contracted),
        edge_map=tuple(kept),
        vertex_map=tuple(vertex_map),
    )
    return g2, rec


def lift_coloring(g: MultiGraph, rec: ContractionRecord, c2: PartialEdgeColoring) -> PartialEdgeColoring:
    """Copy colours back through the edge map and colour contracted edges."""
    colors = [0] * g.m
    for e2, e in enumerate(rec.edge_map):
        colors[e] = c2.colors[e2]
    out = PartialEdgeColoring(g, c2.k, colors)
    masks = color_masks(out)
    for e, _, u, v in rec.contractions:
        taken = masks[u] | masks[v]
        col = next((x for x in range(1, c2.k + 1) if not taken >> x & 1), None)
        if col is None:
            raise NoAvailableColor(f"contracted edge {e} has no free colour in 1..{c2.k}")
        out.colors[e] = col
        masks[u] |= 1 << col
        masks[v] |= 1 << col
    return out


# ---------------------------------------------------------------- step 2


@dataclass
class PhaseOutcome:
    coloring: PartialEdgeColoring
    base: PartialEdgeColoring
    classification: DegreeClassification
    uc: tuple[tuple[int, ...], ...]
    R: frozenset[int]
    Q: frozenset[int]
    T: frozenset[int]
    L: frozenset[int]
    uc2: Optional[tuple[tuple[int, ...], ...]] = None
    seed: Optional[int] = None
    attempts: int = 1

    @property
    def graph(self) -> MultiGraph:
        return self.coloring.graph

    def unused_degrees(self) -> list[int]:
        deg = [0] * self.graph.n
        for e in self.coloring.unused_edges():
            u, v = self.graph.edges[e]
            deg[u] += 1
            deg[v] += 1
        return deg


def phase1(
    c0: PartialEdgeColoring,
    params: PipelineParams,
    rng: np.random.Generator,
    classification: DegreeClassification | None = None,
) -> PhaseOutcome:
    """Uncolour each non-``H`` edge with probability a/Δ, then recover overloaded vertices."""
    g = c0.graph
    delta = g.max_degree
    cls = classification or classify_by_degree(g, max(_threshold(delta, params), Fraction(1, 2)))
    p = min(1.0, params.uncolor_numerator / delta) if delta else 0.0
    draws = rng.random(g.m)
    uncolored = [e for e in range(g.m) if e not in cls.h_edge_set and draws[e] < p]
    uc: list[list[int]] = [[] for _ in range(g.n)]
    for e in uncolored:
        u, v = g.edges[e]
        uc[u].append(e)
        uc[v].append(e)
    rho = params.recovery_threshold
    R = frozenset(v for v in range(g.n) if len(uc[v]) > rho)
    sigma1 = c0.copy()
    for e in uncolored:
        u, v = g.edges[e]
        if u not in R and v not in R:
            sigma1.unassign(e)
    high = cls.high
    Q = frozenset(v for v in range(g.n) if len(uc[v]) < params.small_uc_threshold)
    T = frozenset(v for v in high if any(g.other(e, v) in R for e in uc[v]))
    unused = [0] * g.n
    for e in sigma1.unused_edges():
        u, v = g.edges[e]
        unused[u] += 1
        unused[v] += 1
    L = frozenset(v for v in high if unused[v] < params.low_unused_threshold)
    return PhaseOutcome(
        coloring=sigma1,
        base=c0,
        classification=cls,
        uc=tuple(tuple(x) for x in uc),
        R=R,
        Q=Q,
        T=T,
        L=L,
    )


def phase1_properties_hold(out: PhaseOutcome, params: PipelineParams) -> list[tuple]:
    """Violations of the two phase-1 targets.

    ``("neighbourhood", v, count)``: a high vertex with more than
    ``cap * Δ`` neighbours in ``L``. ``("symdiff", u, v, size)``: adjacent
    equal-degree high vertices, ``u`` outside ``L``, whose colour sets
    differ in fewer than ``symdiff_target`` colours.
    """
    g = out.graph
    high = out.classification.high
    cap = Fraction(g.max_degree) * params.neighbourhood_cap
    violations: list[tuple] = []
    for v in sorted(high):
        count = sum(1 for w in set(g.neighbors(v)) if w in out.L)
        if count > cap:
            violations.append(("neighbourhood", v, count))
    masks = color_masks(out.coloring)
    d = params.symdiff_target
    for x, y in g.adjacent_pairs():
        if x in high and y in high and g.degree(x) == g.degree(y):
            size = (masks[x] ^ masks[y]).bit_count()
            if size < d:
                for u, v in ((x, y), (y, x)):
                    if u not in out.L:
                        violations.append(("symdiff", u, v, size))
    return violations


def phase2(out: PhaseOutcome, params: PipelineParams, rng: np.random.Generator) -> PhaseOutcome:
    """Every vertex of ``L`` uncolours ``s`` random coloured edges to vertices outside ``L``."""
    g = out.graph
    s = params.phase2_uncolor
    sigma2 = out.coloring.copy()
    uc2: list[list[int]] = [[] for _ in range(g.n)]
    for u in sorted(out.L):
        eligible = [
            e for e in g.incidence[u] if out.coloring.colors[e] and g.other(e, u) not in out.L
        ]
        if len(eligible) < s:
            raise InsufficientEligibleEdges(f"vertex {u} has {len(eligible)} eligible edges, needs {s}")
        for i in rng.choice(len(eligible), size=s, replace=False):
            e = eligible[int(i)]
            sigma2.unassign(e)
            uc2[u].append(e)
            uc2[g.other(e, u)].append(e)
    return replace(out, coloring=sigma2, uc2=tuple(tuple(sorted(x)) for x in uc2))


def phase2_properties_hold(out: PhaseOutcome, params: PipelineParams) -> list[tuple]:
    """``("overload", v, count)`` for ``v`` outside ``L`` that lost ``s`` or
    more edges; ``("equal", u, v)`` for adjacent equal-degree high vertices
    with equal colour sets.

    The overload check covers low vertices too, so the unused degree stays
    within ``recovery_threshold + phase2_uncolor`` everywhere.
    """
    g = out.graph
    high = out.classification.high
    violations: list[tuple] = []
    uc2 = out.uc2 or tuple(() for _ in range(g.n))
    for v in (v for v in range(g.n) if v not in out.L):
        if len(uc2[v]) > params.phase2_uncolor - 1:
            violations.append(("overload", v, len(uc2[v])))
    pairs = [
        (x, y)
        for x, y in g.adjacent_pairs()
        if x in high and y in high and g.degree(x) == g.degree(y)
    ]
    violations.extend(("equal", u, v) for u, v in indistinguishable_pairs(out.coloring, pairs))
    return violations


def finish_base_coloring(sigma2: PartialEdgeColoring, fresh: int, params: PipelineParams | None = None) -> PartialEdgeColoring:
    """Colour the unused graph with colours ``k+1 .. k+fresh`` (``k`` = palette of ``sigma2``)."""
    U, ids = unused_graph(sigma2)
    need = U.max_degree + U.max_multiplicity
    if need > fresh:
        raise PaletteTooSmall(f"unused graph needs {need} fresh colours, only {fresh} allowed")
    out = sigma2.with_palette(sigma2.k + fresh)
    if U.m:
        sub = proper_edge_coloring(U, need)
        for i, e in enumerate(ids):
            out.colors[e] = sigma2.k + sub.colors[i]
    return out


# ---------------------------------------------------------------- step 3


def h_incident_edges(cls: DegreeClassification, u: int) -> list[int]:
    """Edges of the parent graph at ``u`` that belong to ``H``."""
    return [cls.h_edges[e] for e in cls.H.incidence[u]]


def build_repair_lists(
    c: PartialEdgeColoring, u: int, edges: list[int], slack: int
) -> dict[int, list[int]]:
    """Lists of ``r + slack`` colours for the uncoloured edges ``edges`` at ``u``.

    A colour qualifies for ``u v_i`` when it is free at both ends and is not
    the single colour by which some other neighbour of ``v_i`` exceeds it.
    """
    g = c.graph
    r = len(edges)
    masks = color_masks(c)
    size = r + slack
    lists: dict[int, list[int]] = {}
    for e in edges:
        vi = g.other(e, u)
        taken = masks[u] | masks[vi]
        forbidden = 0
        for f in g.incidence[vi]:
            w = g.other(f, vi)
            if w == u:
                continue
            diff = masks[w] & ~masks[vi]
            if diff and diff & (diff - 1) == 0:
                forbidden |= diff
        blocked = taken | forbidden
        options = [x for x in range(1, c.k + 1) if not blocked >> x & 1]
        if len(options) < size:
            raise ListInfeasible(f"edge {e}: {len(options)} admissible colours, need {size}")
        lists[e] = options[:size]
    return lists


def _pick_pivot(bad: set[int], cls: DegreeClassification) -> int:
    return min(bad, key=lambda v: (-cls.H.degree(v), v))


@dataclass
class RepairStats:
    iterations: int = 0
    samples: int = 0
    pivots: list[int] = field(default_factory=list)


def step3_repair(
    c: PartialEdgeColoring,
    cls: DegreeClassification,
    params: PipelineParams,
    rng: np.random.Generator,
    palette: int | None = None,
    stats: RepairStats | None = None,
) -> PartialEdgeColoring:
    """Recolour ``H`` edges around one pivot at a time until no adjacent pair collides."""
    stats = stats if stats is not None else RepairStats()
    k = max(c.k, palette or 0)
    cur = c.with_palette(k)
    bad = bad_vertices(cur)
    while bad:
        u = _pick_pivot(bad, cls)
        edges = h_incident_edges(cls, u)
        r = len(edges)
        if r < 2:
            raise RepairStalled(f"pivot {u} has H-degree {r}")
        trial = cur.copy()
        for e in edges:
            trial.unassign(e)
        lists = build_repair_lists(trial, u, edges, params.repair_slack)
        for _ in range(params.repair_attempts):
            stats.samples += 1
            cand = trial.copy()
            used: set[int] = set()
            for i in rng.permutation(r):
                e = edges[int(i)]
                options = [x for x in lists[e] if x not in used]
                col = options[int(rng.integers(len(options)))]
                cand.colors[e] = col
                used.add(col)
            new_bad = bad_vertices(cand)
            if u not in new_bad and len(new_bad) < len(bad):
                cur, bad = cand, new_bad
                stats.iterations += 1
                stats.pivots.append(u)
                break
        else:
            raise RepairStalled(f"pivot {u}: no improving completion in {params.repair_attempts} samples")
    return cur


# ---------------------------------------------------------------- fallback


def _pair_bad(masks: list[int], a: int, b: int) -> bool:
    return masks[a] == masks[b]


def _local_search(c: PartialEdgeColoring, rng: np.random.Generator, max_moves: int) -> PartialEdgeColoring:
    """Min-conflicts edge recolouring within the palette of ``c``.

    Picks a random colliding pair, tries every free colour on every edge at
    either end, and takes the move with the fewest remaining collisions
    (occasionally a random one, to leave plateaus).
    """
    g = c.graph
    cur = c.copy()
    masks = color_masks(cur)
    nbrs = [sorted(set(g.neighbors(v))) for v in range(g.n)]
    full = ((1 << (cur.k + 1)) - 1) & ~1

    def local_bad(vs: tuple[int, ...], ms: list[int]) -> int:
        seen = set()
        count = 0
        for a in vs:
            for b in nbrs[a]:
                key = (a, b) if a < b else (b, a)
                if key not in seen:
                    seen.add(key)
                    count += ms[a] == ms[b]
        return count

    bad_pairs = {p for p in g.adjacent_pairs() if _pair_bad(masks, *p)}
    for _ in range(max_moves):
        if not bad_pairs:
            break
        ordered = sorted(bad_pairs)
        x, y = ordered[int(rng.integers(len(ordered)))]
        moves = []
        for e in sorted(set(g.incidence[x]) | set(g.incidence[y])):
            a, b = g.edges[e]
            old = cur.colors[e]
            free = full & ~(masks[a] | masks[b])
            if not free:
                continue
            before = local_bad((a, b), masks)
            col = 1
            while free >> col:
                if free >> col & 1:
                    ma, mb = masks[a], masks[b]
                    masks[a] = (ma & ~(1 << old)) | (1 << col)
                    masks[b] = (mb & ~(1 << old)) | (1 << col)
                    after = local_bad((a, b), masks)
                    masks[a], masks[b] = ma, mb
                    moves.append((after - before, e, col))
                col += 1
        if not moves:
            continue
        if rng.random() < 0.1:
            _, e, col = moves[int(rng.integers(len(moves)))]
        else:
            best = min(m[0] for m in moves)
            choices = [m for m in moves if m[0] == best]
            _, e, col = choices[int(rng.integers(len(choices)))]
        a, b = g.edges[e]
        old = cur.colors[e]
        cur.colors[e] = col
        for v in (a, b):
            masks[v] = (masks[v] & ~(1 << old)) | (1 << col)
        for v in (a, b):
            for w in nbrs[v]:
                key = (v, w) if v < w else (w, v)
                if masks[v] == masks[w]:
                    bad_pairs.add(key)
                else:
                    bad_pairs.discard(key)
    return cur


def fallback_repair(
    c: PartialEdgeColoring, palette: int, rng: np.random.Generator, exact_edge_limit: int = 40
) -> tuple[PartialEdgeColoring, list[str]]:
    """Turn a total proper colouring into an avd one, growing the palette only if stuck.

    Tries local search in the given palette, then (for small simple
    graphs) an exact search in the same palette, and finally gives each
    remaining colliding vertex a brand-new colour on one of its edges.
    """
    from .exact import SearchConfig, exists_avd_coloring

    notes: list[str] = []
    g = c.graph
    k = max(palette, max(c.colors, default=0))
    cur = c.with_palette(k)
    if not indistinguishable_pairs(cur):
        return cur, notes
    cur = _local_search(cur, rng, max_moves=50 * max(g.m, 10))
    if not indistinguishable_pairs(cur):
        notes.append("local_search")
        return cur, notes
    if g.m <= exact_edge_limit and g.is_simple() and not isolated_edges(g):
        try:
            found = exists_avd_coloring(g, k, SearchConfig(node_budget=2_000_000))
        except BudgetExhausted:
            found = None
        if found is not None:
            notes.append("exact")
            return found, notes
    grown = 0
    while True:
        pairs = indistinguishable_pairs(cur)
        if not pairs:
            break
        x, y = pairs[0]
        if g.degree(x) == 1:
            x, y = y, x
        e = next(f for f in g.incidence[x] if g.other(f, x) != y)
        k += 1
        grown += 1
        cur = cur.with_palette(k)
        cur.colors[e] = k
    notes.append(f"palette_grown_by_{grown}")
    return cur, notes


# ---------------------------------------------------------------- driver


@dataclass
class PipelineResult:
    coloring: PartialEdgeColoring
    contracted: MultiGraph
    record: ContractionRecord
    report: dict

    @property
    def fallback_used(self) -> bool:
        return bool(self.report["fallback"])


def _resample(run, check, budget: int, log: list[int]):
    """Call ``run(attempt)`` until ``check`` finds no violations; logs violation counts."""
    for attempt in range(budget):
        out = run(attempt)
        violations = check(out)
        log.append(len(violations))
        if not violations:
            out.attempts = attempt + 1
            return out
    raise ResampleBudgetExceeded(f"no clean outcome in {budget} attempts")


def avd_color_pipeline(g: MultiGraph, params: PipelineParams | None = None, seed: int = 0) -> PipelineResult:
    """Run the whole construction and return a verified avd-colouring of ``g``."""
    if not g.is_simple():
        raise ValueError("input graph must be simple")
    iso = isolated_edges(g)
    if iso:
        raise IsolatedEdgePresent(f"isolated edge(s) {sorted(iso)} admit no avd-colouring")
    delta = g.max_degree
    params = params or PipelineParams.desk(delta)
    palette = params.palette_size if params.palette_size is not None else delta + params.repair_slack
    report: dict[str, Any] = {
        "seed": seed,
        "params": params.to_json(),
        "n": g.n,
        "m": g.m,
        "delta": delta,
        "palette": palette,
        "attempts": {"phase1": 0, "phase2": 0},
        "violations": {"phase1": [], "phase2": []},
        "fallback": [],
        "stages": {},
    }

    g2, rec = step1_contract(g, params)
    report["contracted_edges"] = len(rec.contractions)
    cls = classify_by_degree(g2, max(_threshold(g2.max_degree, params), Fraction(1, 2)))
    base_k = g2.max_degree + 2
    sigma = proper_edge_coloring(g2, base_k) if g2.m else PartialEdgeColoring(g2, base_k)
    report["stages"]["base_proper"] = not verify_proper(sigma)

    current = sigma  # latest total proper colouring of G'
    c_final: PartialEdgeColoring | None = None
    stats = RepairStats()
    try:
        out1 = _resample(
            lambda i: phase1(sigma, params, rngmod.stream(seed, rngmod.PHASE1, i), cls),
            lambda o: phase1_properties_hold(o, params),
            params.max_attempts,
            report["violations"]["phase1"],
        )
        report["attempts"]["phase1"] = out1.attempts
        report["stages"]["phase1_proper"] = not verify_proper(out1.coloring)
        out2 = _resample(
            lambda i: phase2(out1, params, rngmod.stream(seed, rngmod.PHASE2, i)),
            lambda o: phase2_properties_hold(o, params),
            params.max_attempts,
            report["violations"]["phase2"],
        )
        report["attempts"]["phase2"] = out2.attempts
        report["stages"]["phase2_proper"] = not verify_proper(out2.coloring)
        report["max_unused_degree"] = {
            "phase1": max(out1.unused_degrees(), default=0),
            "phase2": max(out2.unused_degrees(), default=0),
        }
        c = finish_base_coloring(out2.coloring, params.fresh_palette, params)
        report["stages"]["finish_proper"] = not verify_proper(c)
        current = c
        c_final = step3_repair(c, cls, params, rngmod.stream(seed, rngmod.REPAIR), palette, stats)
    except AvdError as exc:
        report["fallback"].append(exc.code)
    report["repair"] = {"iterations": stats.iterations, "samples": stats.samples}

    if c_final is None:
        c_final, notes = fallback_repair(current, palette, rngmod.stream(seed, rngmod.FALLBACK))
        report["fallback_steps"] = notes
    lifted = lift_coloring(g, rec, c_final)
    if verify_proper(lifted) or verify_avd(lifted):
        lifted, notes = fallback_repair(lifted, palette, rngmod.stream(seed, rngmod.FALLBACK, 1))
        report["fallback"].append("LiftCheckFailed")
        report["fallback_steps"] = report.get("fallback_steps", []) + notes

    report["final_palette"] = lifted.k
    report["colors_used"] = len(lifted.used_colors())
    report["max_color"] = max(lifted.colors, default=0)
    report["verified"] = {"proper": not verify_proper(lifted), "avd": not verify_avd(lifted)}
    return PipelineResult(coloring=lifted, contracted=g2, record=rec, report=report)
