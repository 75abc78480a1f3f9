"""Closed-form evaluators for the tail bounds and counting inequalities.

Everything that can underflow has a ``log_`` twin working in natural
logs; the plain versions exponentiate at the end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import DomainError

Number = Union[int, float, Fraction]


def log_chernoff_tail(n: float, p: float, t: float) -> float:
    if not 0 < p <= 1:
        raise DomainError(f"p={p} outside (0, 1]")
    mean = n * p
    if not 0 < t <= mean:
        raise DomainError(f"need 0 < t <= np, got t={t}, np={mean}")
    return math.log(2.0) - t * t / (3.0 * mean)


def chernoff_tail(n: float, p: float, t: float) -> float:
    """``2 exp(-t^2 / 3np)``, bounding ``Pr[|Bin(n,p) - np| > t]`` for ``0 < t <= np``."""
    return math.exp(log_chernoff_tail(n, p, t))


def chernoff_tail_mean(mean: float, t: float) -> float:
    """Chernoff bound stated through the mean alone."""
    if mean <= 0:
        raise DomainError("mean must be positive")
    return chernoff_tail(mean, 1.0, t)


def log_talagrand_tail(c: float, r: float, E: float, t: float) -> tuple[float, float]:
    if c <= 0 or r <= 0 or E <= 0:
        raise DomainError("c, r and E must be positive")
    if not 0 <= t <= E:
        raise DomainError(f"need 0 <= t <= E, got t={t}, E={E}")
    threshold = t + 60.0 * c * math.sqrt(r * E)
    return threshold, math.log(4.0) - t * t / (8.0 * c * c * r * E)


def talagrand_tail(c: float, r: float, E: float, t: float) -> tuple[float, float]:
    """Deviation threshold ``t + 60c sqrt(rE)`` and bound ``4 exp(-t^2 / 8c^2 rE)``.

    For one-sided use with only an estimate ``k`` of the mean, pass
    ``E=k`` and shift the threshold by ``k`` (see ``talagrand_upper`` and
    ``talagrand_lower``).
    """
    threshold, logp = log_talagrand_tail(c, r, E, t)
    return threshold, math.exp(logp)


def talagrand_upper(k: float, c: float, r: float, t: float) -> tuple[float, float]:
    """``Pr[X > k + t + 60c sqrt(rk)]`` bound when ``E[X] <= k``; returns (level, bound)."""
    threshold, p = talagrand_tail(c, r, k, t)
    return k + threshold, p


def talagrand_lower(k: float, c: float, r: float, t: float) -> tuple[float, float]:
    """``Pr[X < k - t - 60c sqrt(rk)]`` bound when ``E[X] >= k``; returns (level, bound)."""
    threshold, p = talagrand_tail(c, r, k, t)
    return k - threshold, p


def lll_condition(p: Number, d: Number) -> tuple[Number, bool]:
    """Symmetric local lemma: returns ``4pd`` and whether it is below one.

    Works on floats or exact ``Fraction`` inputs alike.
    """
    if p < 0 or p > 1 or d < 0:
        raise DomainError("need p in [0, 1] and d >= 0")
    product = 4 * p * d
    return product, product < 1


def log_binomial(a: int, b: int) -> float:
    return math.lgamma(a + 1) - math.lgamma(b + 1) - math.lgamma(a - b + 1)


def log_binomial_sandwich(a: int, b: int) -> tuple[float, float, float]:
    """Natural logs of ``((a/b)^b, C(a,b), (ea/b)^b)``."""
    if not 1 <= b <= a:
        raise DomainError("need 1 <= b <= a")
    exact = math.log(math.comb(a, b)) if a <= 1000 else log_binomial(a, b)
    return b * math.log(a / b), exact, b * (1.0 + math.log(a / b))


def binomial_sandwich(a: int, b: int) -> tuple[float, int, float]:
    """``(a/b)^b <= C(a, b) <= (ea/b)^b``; the middle term is exact."""
    if not 1 <= b <= a:
        raise DomainError("need 1 <= b <= a")
    return (a / b) ** b, math.comb(a, b), (math.e * a / b) ** b


def log_symdiff_collision_bound(k: int, delta: float, d: int, a: float) -> float:
    if k < 2 * d:
        raise DomainError(f"need k >= 2d, got k={k}, d={d}")
    if a < 0 or delta <= 0:
        raise DomainError("need a >= 0 and delta > 0")
    if a == 0:
        return -math.inf if k - d - 2 > 0 else log_binomial(k, k - d)
    return log_binomial(k, k - d) + (k - d - 2) * math.log(a / delta)


def symdiff_collision_bound(k: int, delta: float, d: int, a: float) -> float:
    """``C(k, k-d) (a/delta)^(k-d-2)``: the chance two equal-set neighbours stay close."""
    return math.exp(log_symdiff_collision_bound(k, delta, d, a))


def first_k_below(delta: float, d: int, a: float, log_target: float, k_max: int | None = None) -> int | None:
    """Least ``k >= 2d`` whose collision bound is below ``exp(log_target)``."""
    top = int(k_max if k_max is not None else max(2 * d, min(delta, 10**6)))
    for k in range(2 * d, top + 1):
        if log_symdiff_collision_bound(k, delta, d, a) < log_target:
            return k
    return None


def log_repair_failure_bound(r: int, beta: int) -> float:
    if r < 1 or beta < 1:
        raise DomainError("need r >= 1 and beta >= 1")
    # r * (r-1)! / ((beta+1)(beta+2)...(beta+r-1))
    return (
        math.log(r)
        + math.lgamma(r)
        - (math.lgamma(beta + r) - math.lgamma(beta + 1))
    )


def repair_failure_bound(r: int, beta: int) -> float:
    """Union bound on a sampled repair leaving the pivot indistinguishable.

    Sum over the ``r`` neighbours of ``(r-1)! / ((r+beta-1)...(beta+1))``.
    """
    if r <= 2000:
        if r < 1 or beta < 1:
            raise DomainError("need r >= 1 and beta >= 1")
        num = r * math.factorial(r - 1)
        den = math.prod(range(beta + 1, beta + r))
        return float(Fraction(num, den))
    return math.exp(log_repair_failure_bound(r, beta))


@dataclass(frozen=True)
class NeighbourhoodTail:
    name: str
    level: float
    cap: float
    log_prob: float
    log_target: float

    @property
    def level_ok(self) -> bool:
        return self.level <= self.cap

    @property
    def prob_ok(self) -> bool:
        return self.log_prob <= self.log_target

    @property
    def holds(self) -> bool:
        return self.level_ok and self.prob_ok


def neighbourhood_claims(
    delta: float,
    rho: float = 290,
    q: float = 20,
    ceiling: float = 1 / 1000,
    cap_fraction: float = 1 / 100,
) -> list[NeighbourhoodTail]:
    """The three concentration claims behind ``|N(v) ∩ L| <= cap * delta``.

    Each part (recovered, touched, small-UC neighbours) has mean at most
    ``ceiling * delta`` and must stay below a third of the cap except with
    probability ``1 / (3 delta^7)``.
    """
    E = ceiling * delta
    t = E
    cap = cap_fraction * delta / 3
    log_target = -math.log(3) - 7 * math.log(delta)
    out = []
    for name, c, r in (("recovered", 2, rho), ("touched", 2 * rho, rho)):
        level, logp = log_talagrand_tail(c, r, E, t)
        out.append(NeighbourhoodTail(name, E + level, cap, logp, log_target))
    # small-UC neighbours: lower tail of deg(v) - |N(v) ∩ Q| with E >= deg - ceiling*delta;
    # deg <= delta bounds both the sqrt term and the exponent's denominator
    c, r = 2, q
    level = E + t + 60 * c * math.sqrt(r * delta)
    logp = math.log(4) - t * t / (8 * c * c * r * delta)
    out.append(NeighbourhoodTail("small_uc", level, cap, logp, log_target))
    return out


def membership_tail_values(a: float = 180, rho: float = 290, q: float = 20, split: float = 1 / 3) -> dict[str, dict[str, float]]:
    """Chernoff evaluations for recovered, small-UC and touched vertices.

    The small-UC entry reports both the standard ``t^2 / 3np`` exponent and
    the literal ``t^2 / a`` form; with ``np = a * split`` and split 1/3
    these coincide.
    """
    low_mean = a * split
    out = {
        "recovered": {"value": chernoff_tail_mean(a, rho - a), "ceiling": 1 / 1000},
        "small_uc": {
            "value": chernoff_tail_mean(low_mean, low_mean - q),
            "printed_form": 2 * math.exp(-((low_mean - q) ** 2) / a),
            "ceiling": 1 / 1000,
        },
        "touched_conditional": {"value": chernoff_tail_mean(a, rho - 1 - a), "ceiling": 1e-6},
    }
    return out
