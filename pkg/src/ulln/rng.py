"""Reproducible RNG substreams.

Every replicate of every experiment owns a counter-based substream derived
from ``(seed, n, replicate)``, so results are independent of execution
order and of how work is distributed across threads.
"""

from __future__ import annotations

import numpy as np

__all__ = ["substream", "replicate_rng"]


def substream(seed: int, *counters: int) -> np.random.Generator:
    """Return a Generator keyed by ``seed`` and a tuple of counters.

    Identical arguments always produce an identical stream; distinct
    counter tuples produce statistically independent streams.
    """
    return np.random.default_rng(np.random.SeedSequence([int(seed), *map(int, counters)]))


def replicate_rng(seed: int, n: int, replicate: int) -> np.random.Generator:
    """Substream for one (sample size, replicate) work unit."""
    return substream(seed, n, replicate)
