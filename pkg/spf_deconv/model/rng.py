"""Seeding helpers.

All randomness in the package flows through numpy ``Generator`` objects built
here. Trial seeds are derived from integer keys with ``SeedSequence`` and fed
to the counter-based Philox bit generator, so a trial's stream depends only on
its keys and never on scheduling order.
"""

from __future__ import annotations

from typing import Union

import numpy as np

SeedLike = Union[int, np.random.SeedSequence, np.random.Generator, None]


def make_rng(seed: SeedLike) -> np.random.Generator:
    """Return a Generator for ``seed``; an existing Generator is passed through."""
    if isinstance(seed, np.random.Generator):
        return seed
    if isinstance(seed, np.random.SeedSequence):
        return np.random.Generator(np.random.Philox(seed))
    return np.random.default_rng(seed)


def keyed_rng(*keys: int) -> np.random.Generator:
    """Counter-based generator determined by the integer ``keys``.

    Example:
        ```python
        rng = keyed_rng(base_seed, m, s, trial_index)
        ```
    """
    entropy = [int(k) for k in keys]
    if any(k < 0 for k in entropy):
        raise ValueError(f"seed keys must be non-negative, got {entropy}")
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy)))
