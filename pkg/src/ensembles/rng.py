"""Counter-based random streams keyed by (master seed, block index)"""

from dataclasses import dataclass

import numpy as np

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class RngStream:
    """
    Philox substream for one block of trials.

    The Philox key comes from the master seed; the block index occupies the
    upper 128 bits of the counter, so blocks never overlap and any block can be
    regenerated on its own, on any worker.
    """

    seed: int
    block: int = 0

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.block < 0:
            raise ValueError(f"block index must be non-negative, got {self.block}")

    def for_block(self, block: int) -> "RngStream":
        return RngStream(self.seed, block)

    def generator(self) -> np.random.Generator:
        key = np.random.SeedSequence(self.seed).generate_state(2, dtype=np.uint64)
        counter = np.array(
            [0, 0, self.block & _MASK64, (self.block >> 64) & _MASK64], dtype=np.uint64
        )
        return np.random.Generator(np.random.Philox(key=key, counter=counter))


def as_generator(stream) -> np.random.Generator:
    """Accept an RngStream, a Generator, or an integer seed"""
    if isinstance(stream, np.random.Generator):
        return stream
    if isinstance(stream, RngStream):
        return stream.generator()
    return RngStream(int(stream)).generator()
