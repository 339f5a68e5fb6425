"""Seedable counter-based randomness (Philox) with unbiased bounded sampling."""

import numpy as np


def make_rng(seed=None, stream=()):
    """A Philox generator keyed by ``seed`` and an optional stream path.

    Distinct ``stream`` tuples give independent generators for the same seed,
    which is how retry attempts get their own randomness.
    """
    entropy = seed if seed is not None else np.random.SeedSequence().entropy
    ss = np.random.SeedSequence([int(entropy), *map(int, stream)])
    return np.random.Generator(np.random.Philox(ss))


def fresh_seed():
    return int(np.random.SeedSequence().entropy) & ((1 << 64) - 1)


def random_bits(gen, k):
    """k uniform random bits as a Python int."""
    if k <= 0:
        return 0
    words = gen.bit_generator.random_raw(-(-k // 64))
    value = 0
    for w in np.atleast_1d(words):
        value = (value << 64) | int(w)
    return value >> (64 * len(np.atleast_1d(words)) - k)


def uniform_below(gen, bound):
    """Uniform integer in [0, bound-1] by rejection (no modulo bias)."""
    if bound < 1:
        raise ValueError("bound must be positive")
    if bound == 1:
        return 0
    k = (bound - 1).bit_length()
    while True:
        v = random_bits(gen, k)
        if v < bound:
            return v


def uniform_between(gen, lo, hi):
    """Uniform integer in [lo, hi]."""
    return lo + uniform_below(gen, hi - lo + 1)
