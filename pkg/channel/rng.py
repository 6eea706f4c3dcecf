"""
Reproducible random streams for block-parallel Monte Carlo.

Trials are cut into fixed-size blocks; block ``i`` always draws from a Philox
generator keyed by ``SeedSequence(seed, spawn_key=(i,))``, so the numbers a
block sees do not depend on which thread runs it or on how many threads exist.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, List, Optional

import numpy as np

from config.config import SETTINGS, worker_count
from utils.errors import DomainError

logger = logging.getLogger(__name__)

SEED_MASK = (1 << 64) - 1


@dataclass(frozen=True)
class BlockTally:
    """Per-block accumulator: sample count, sum and sum of squares."""
    trials: int
    total: float
    total_sq: float

    @classmethod
    def from_samples(cls, samples: np.ndarray) -> "BlockTally":
        return cls(int(samples.size), float(np.sum(samples)), float(np.sum(samples * samples)))

    def merge(self, other: "BlockTally") -> "BlockTally":
        return BlockTally(self.trials + other.trials, self.total + other.total, self.total_sq + other.total_sq)


BlockKernel = Callable[[np.random.Generator, int], BlockTally]


def block_generator(seed: int, block_index: int) -> np.random.Generator:
    sequence = np.random.SeedSequence(seed & SEED_MASK, spawn_key=(block_index,))
    return np.random.Generator(np.random.Philox(sequence))


def block_sizes(trials: int, block_size: int) -> List[int]:
    if trials < 1:
        raise DomainError(f"trials must be >= 1, got {trials!r}")
    if block_size < 1:
        raise DomainError(f"block_size must be >= 1, got {block_size!r}")
    full, rest = divmod(trials, block_size)
    return [block_size] * full + ([rest] if rest else [])


def run_blocks(
    kernel: BlockKernel,
    trials: int,
    seed: int,
    block_size: Optional[int] = None,
    workers: Optional[int] = None,
) -> BlockTally:
    """Run ``kernel`` over every trial block and reduce the tallies in block order."""
    block_size = block_size or SETTINGS["simulation"]["block_size"]
    sizes = block_sizes(trials, block_size)
    workers = workers or worker_count()

    def run_one(index: int) -> BlockTally:
        return kernel(block_generator(seed, index), sizes[index])

    logger.debug(f"running {len(sizes)} block(s) of up to {block_size} trials on {workers} worker(s)")
    if workers == 1 or len(sizes) == 1:
        tallies = [run_one(i) for i in range(len(sizes))]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            tallies = list(pool.map(run_one, range(len(sizes))))

    result = tallies[0]
    for tally in tallies[1:]:
        result = result.merge(tally)
    return result
