"""Deterministic chunked random streams.

Work is cut into fixed-size chunks and chunk ``i`` always draws from a
Philox generator keyed by ``(seed, i)``. Output therefore depends only on
the seed and the chunk size, never on how many threads process the chunks.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np

CHUNK_SIZE = 1 << 16


def chunk_generator(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(index,))))


def chunk_bounds(total: int, chunk_size: int = CHUNK_SIZE):
    return [(start, min(start + chunk_size, total)) for start in range(0, total, chunk_size)]


def run_chunks(fn, total: int, seed: int, workers: int = 1, chunk_size: int = CHUNK_SIZE):
    """Call ``fn(rng, start, stop)`` for each chunk; results are returned in chunk order."""
    if seed < 0 or int(seed) != seed:
        raise ValueError(f"seed must be an unsigned integer, got {seed}")
    tasks = [(chunk_generator(int(seed), i), lo, hi) for i, (lo, hi) in enumerate(chunk_bounds(total, chunk_size))]
    if workers <= 1 or len(tasks) == 1:
        return [fn(*t) for t in tasks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda t: fn(*t), tasks))
