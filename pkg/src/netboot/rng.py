"""Random-generator helpers for reproducible, worker-count-invariant runs."""

from __future__ import annotations

import numpy as np


def as_generator(rng=None) -> np.random.Generator:
    """Coerce ``rng`` (None, int seed, SeedSequence, or Generator) to a Generator.

    A Generator passes through unchanged, so callers can thread one rng
    through a sequence of operations and stay bit-reproducible.
    """
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


def substream(master_seed: int, *key: int) -> np.random.Generator:
    """Independent generator keyed by (master_seed, *key).

    Identical keys give identical streams regardless of process, thread, or
    call order, which is what makes parallel Monte Carlo runs deterministic.
    """
    entropy = [int(master_seed)] + [int(k) for k in key]
    return np.random.default_rng(np.random.SeedSequence(entropy))
