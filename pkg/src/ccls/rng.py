"""Counter-based SplitMix64 streams.

A stream is a 64-bit key; its ``c``-th draw is
``mix64(key + (c + 1) * GOLDEN)``, with ``mix64`` the SplitMix64 finaliser.
Uniform variates take the top 53 bits and centre them:
``((bits >> 11) + 0.5) * 2**-53``, which lies strictly inside (0, 1).

Trajectory ``i`` of a run seeded with ``seed`` uses the key
``mix64(mix64(seed) ^ i)``. All arithmetic is modulo 2**64 on numpy
``uint64`` arrays, so the same key and counter give the same bits everywhere.
"""
from __future__ import annotations

import numpy as np

GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_MASK = (1 << 64) - 1


def mix64(z):
    z = np.asarray(z, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = (z ^ (z >> np.uint64(30))) * _M1
        z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


def stream_keys(seed, count, offset=0):
    """Keys of trajectories ``offset .. offset + count - 1``."""
    base = mix64(np.uint64(int(seed) & _MASK))
    idx = np.arange(offset, offset + count, dtype=np.uint64)
    return mix64(base ^ idx)


def bits(keys, counters):
    keys = np.asarray(keys, dtype=np.uint64)
    counters = np.asarray(counters, dtype=np.uint64)
    with np.errstate(over="ignore"):
        return mix64(keys + (counters + np.uint64(1)) * GOLDEN)


def uniform(keys, counters):
    return ((bits(keys, counters) >> np.uint64(11)).astype(np.float64) + 0.5) * 2.0 ** -53
