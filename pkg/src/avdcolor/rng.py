"""Seed splitting: one 64-bit seed fans out into independent named streams."""

from __future__ import annotations

import numpy as np

# stream tags; the attempt/trial counter is appended as a second key
PHASE1 = 1
PHASE2 = 2
REPAIR = 3
FALLBACK = 4
MONTE_CARLO = 5


def stream(seed: int, *key: int) -> np.random.Generator:
    """Generator for ``(seed, *key)``; distinct keys give independent streams."""
    if not 0 <= seed < 2**64:
        raise ValueError("seed must be an unsigned 64-bit integer")
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=key)))
