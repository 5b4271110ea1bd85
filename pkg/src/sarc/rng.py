"""Deterministic per-iteration random streams."""

from __future__ import annotations

from enum import IntEnum

import numpy as np

_U64 = (1 << 64) - 1


class Stream(IntEnum):
    GRADIENT = 0
    HESSIAN = 1
    VALUE_AT_X = 2
    VALUE_AT_TRIAL = 3


def stream(master_seed: int, k: int, which: int) -> np.random.Generator:
    """Generator for iteration ``k`` and sub-stream ``which``.

    Streams are keyed by ``(master_seed, k, which)`` only, so they do not
    depend on how many draws earlier iterations consumed.
    """
    seq = np.random.SeedSequence(entropy=int(master_seed) & _U64, spawn_key=(int(k), int(which)))
    return np.random.Generator(np.random.PCG64(seq))


def iteration_streams(master_seed: int, k: int) -> dict[Stream, np.random.Generator]:
    return {s: stream(master_seed, k, s) for s in Stream}
