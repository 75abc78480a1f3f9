"""Empirical frequencies of the phase-1 membership events next to their bounds.

``monte_carlo_phase1`` reruns phase 1 on a concrete graph with fresh
streams and counts, per high vertex, membership in R, Q, T and L, how
many neighbours land in L, and how often adjacent equal-degree vertices
keep nearly equal colour sets. ``binomial_membership`` skips the graph
and draws the binomial counts directly, which is what makes degree 10^4
with the large constants affordable.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np
from scipy import stats

from . import bounds
from . import rng as rngmod
from .coloring import color_masks, proper_edge_coloring
from .errors import DomainError
from .graph import MultiGraph, classify_by_degree
from .pipeline import PipelineParams, phase1

RARE_COUNT = 10


@dataclass(frozen=True)
class EventEstimate:
    event: str
    count: int
    samples: int
    analytic: Optional[float]
    interval: Optional[tuple[float, float]] = None

    @property
    def empirical(self) -> float:
        return self.count / self.samples if self.samples else 0.0

    @property
    def stderr(self) -> float:
        if not self.samples:
            return 0.0
        f = self.empirical
        return math.sqrt(f * (1.0 - f) / self.samples)

    def within_bound(self, sigmas: float = 3.0) -> Optional[bool]:
        """``empirical <= analytic + sigmas * stderr``; ``None`` without a bound."""
        if self.analytic is None:
            return None
        return self.empirical <= self.analytic + sigmas * self.stderr

    def to_json(self, trials: int, seed: int) -> dict:
        out = {
            "event": self.event,
            "empirical": self.empirical,
            "stderr": self.stderr,
            "analytic": self.analytic,
            "trials": trials,
            "samples": self.samples,
            "count": self.count,
            "seed": seed,
        }
        if self.interval is not None:
            out["clopper_pearson"] = list(self.interval)
        return out


def clopper_pearson(count: int, n: int, level: float = 0.95) -> tuple[float, float]:
    """Exact two-sided binomial confidence interval."""
    if n <= 0:
        raise DomainError("need at least one sample")
    alpha = 1.0 - level
    lo = 0.0 if count == 0 else float(stats.beta.ppf(alpha / 2, count, n - count + 1))
    hi = 1.0 if count == n else float(stats.beta.ppf(1 - alpha / 2, count + 1, n - count))
    return lo, hi


def estimate(event: str, count: int, samples: int, analytic: Optional[float]) -> EventEstimate:
    interval = clopper_pearson(count, samples) if samples and count < RARE_COUNT else None
    return EventEstimate(event, int(count), int(samples), analytic, interval)


@dataclass
class MonteCarloReport:
    trials: int
    seed: int
    events: dict[str, EventEstimate]
    neighbourhood_histogram: dict[int, int] = field(default_factory=dict)
    notes: dict = field(default_factory=dict)

    def violations(self, sigmas: float = 3.0) -> list[str]:
        """Events whose frequency exceeds the bound by more than ``sigmas`` errors."""
        return [name for name, ev in self.events.items() if ev.within_bound(sigmas) is False]

    def to_json(self) -> dict:
        return {
            "trials": self.trials,
            "seed": self.seed,
            "events": [ev.to_json(self.trials, self.seed) for ev in self.events.values()],
            "neighbourhood_histogram": {str(k): v for k, v in sorted(self.neighbourhood_histogram.items())},
            "notes": self.notes,
        }


def _tail_or_none(mean: float, t: float) -> Optional[float]:
    try:
        return min(1.0, bounds.chernoff_tail_mean(mean, t))
    except DomainError:
        return None


def phase1_bounds(params: PipelineParams) -> dict[str, Optional[float]]:
    """Analytic ceilings for the per-vertex events, ``None`` where the tail bound does not apply.

    R: more than rho uncoloured edges, mean at most a. Q: fewer than q,
    mean at least ``a * split`` at a high vertex. T: a union over
    neighbours of (edge uncoloured) times (neighbour recovered given it).
    L sits inside R, Q and T whenever the low-unused threshold is at most q.
    """
    a = params.uncolor_numerator
    rho = params.recovery_threshold
    q = params.small_uc_threshold
    low_mean = a * float(params.degree_split)
    out: dict[str, Optional[float]] = {
        "R": _tail_or_none(a, rho - a) if a > 0 else 0.0,
        "Q": _tail_or_none(low_mean, low_mean - q) if a > 0 else None,
    }
    cond = _tail_or_none(a, rho - 1 - a) if a > 0 else 0.0
    out["T"] = None if cond is None else min(1.0, a * cond)
    parts = (out["R"], out["Q"], out["T"])
    if params.low_unused_threshold <= q and all(x is not None for x in parts):
        out["L"] = min(1.0, sum(parts))
    else:
        out["L"] = None
    return out


def monte_carlo_phase1(g: MultiGraph, params: PipelineParams, trials: int, seed: int = 0) -> MonteCarloReport:
    """Rerun phase 1 ``trials`` times on ``g`` and count membership events.

    ``g`` plays the role of the contracted graph; its base colouring is the
    deterministic (Δ+2)-colouring. Samples are (trial, high vertex) pairs
    for the vertex events and (trial, ordered adjacent pair) for the
    collision event.
    """
    if trials < 1:
        raise DomainError("trials must be at least 1")
    delta = g.max_degree
    threshold = max(Fraction(delta) * params.degree_split, Fraction(1, 2))
    cls = classify_by_degree(g, threshold)
    sigma = proper_edge_coloring(g, delta + 2)
    high = sorted(cls.high)
    cap = Fraction(delta) * params.neighbourhood_cap
    d = params.symdiff_target
    pairs = [
        (x, y)
        for x, y in g.adjacent_pairs()
        if x in cls.high and y in cls.high and g.degree(x) == g.degree(y) and g.degree(x) >= 2 * d
    ]
    nbrs = {v: sorted(set(g.neighbors(v))) for v in high}

    counts = Counter()
    hist: Counter[int] = Counter()
    pair_samples = 0
    for t in range(trials):
        out = phase1(sigma, params, rngmod.stream(seed, rngmod.MONTE_CARLO, t), cls)
        for v in high:
            counts["R"] += v in out.R
            counts["Q"] += v in out.Q
            counts["T"] += v in out.T
            counts["L"] += v in out.L
            k = sum(1 for w in nbrs[v] if w in out.L)
            hist[k] += 1
            counts["neighbourhood"] += k > cap
        masks = color_masks(out.coloring)
        for x, y in pairs:
            close = (masks[x] ^ masks[y]).bit_count() < d
            for u in (x, y):
                if u not in out.L:
                    pair_samples += 1
                    counts["collision"] += close

    vertex_samples = trials * len(high)
    analytic = phase1_bounds(params)
    events = {
        name: estimate(name, counts[name], vertex_samples, analytic[name]) for name in ("R", "Q", "T", "L")
    }
    events["neighbourhood"] = estimate("neighbourhood", counts["neighbourhood"], vertex_samples, None)
    collision_bound = None
    if pairs and delta > 0:
        per_pair = [
            min(1.0, bounds.symdiff_collision_bound(g.degree(x), delta, d, params.uncolor_numerator))
            for x, _ in pairs
        ]
        collision_bound = float(np.mean(per_pair))
    events["collision"] = estimate("collision", counts["collision"], pair_samples, collision_bound)
    return MonteCarloReport(
        trials=trials,
        seed=seed,
        events=events,
        neighbourhood_histogram=dict(hist),
        notes={"high_vertices": len(high), "collision_pairs": len(pairs), "params": params.to_json()},
    )


def binomial_membership(
    delta: int = 10_000,
    samples: int = 1_000_000,
    seed: int = 0,
    params: PipelineParams | None = None,
    chunk: int = 1 << 18,
) -> MonteCarloReport:
    """Phase-1 membership counts drawn as binomials, without building a graph.

    A maximum-degree vertex sees ``Bin(delta, a/delta)`` uncoloured edges
    (event R when above rho); a vertex at the degree split sees
    ``Bin(ceil(delta * split), a/delta)`` (event Q when below q); a
    neighbour already joined by one uncoloured edge is recovered when
    ``Bin(delta - 1, a/delta) > rho - 1`` (the conditional part of T).
    """
    params = params or PipelineParams.asymptotic()
    if samples < 1 or delta < 1:
        raise DomainError("need samples >= 1 and delta >= 1")
    a = params.uncolor_numerator
    p = min(1.0, a / delta)
    rho = params.recovery_threshold
    q = params.small_uc_threshold
    low_n = math.ceil(delta * params.degree_split)
    gen = rngmod.stream(seed, rngmod.MONTE_CARLO)
    counts = Counter()
    done = 0
    while done < samples:
        size = min(chunk, samples - done)
        counts["R"] += int(np.count_nonzero(gen.binomial(delta, p, size) > rho))
        counts["Q"] += int(np.count_nonzero(gen.binomial(low_n, p, size) < q))
        counts["T_given_edge"] += int(np.count_nonzero(gen.binomial(delta - 1, p, size) > rho - 1))
        done += size
    np_low = low_n * p
    analytic = {
        "R": _tail_or_none(delta * p, rho - delta * p),
        "Q": _tail_or_none(np_low, np_low - q),
        "T_given_edge": _tail_or_none((delta - 1) * p, rho - 1 - (delta - 1) * p),
    }
    events = {name: estimate(name, counts[name], samples, analytic[name]) for name in analytic}
    return MonteCarloReport(
        trials=samples,
        seed=seed,
        events=events,
        notes={"delta": delta, "p": p, "params": params.to_json(), "mode": "binomial"},
    )


def report_rows(report: MonteCarloReport) -> list[dict]:
    return [ev.to_json(report.trials, report.seed) for ev in report.events.values()]

