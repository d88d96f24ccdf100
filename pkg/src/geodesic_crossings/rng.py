"""Counter-based random streams.

Every stream is a Philox4x64-10 generator (numpy.random.Philox) keyed by
(seed, stream_id); ``counter`` is the starting position inside the stream.
See docs/RNG.md for the stream layout used by the library and the CLI.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class RngStream:
    """Position in a keyed Philox stream.

    Attributes:
        seed: 64-bit user seed (low half of the Philox key)
        stream_id: 64-bit stream selector (high half of the Philox key)
        counter: 64-bit starting block counter
    """

    seed: int
    stream_id: int = 0
    counter: int = 0

    def __post_init__(self) -> None:
        for name in ("seed", "stream_id", "counter"):
            value = getattr(self, name)
            if not 0 <= value <= _MASK64:
                raise ValueError(f"{name} must fit in 64 bits, got {value}")

    @property
    def key(self) -> int:
        """128-bit Philox key."""
        return (self.stream_id << 64) | self.seed

    def bit_generator(self) -> np.random.Philox:
        """Fresh Philox bit generator positioned at ``counter``."""
        return np.random.Philox(key=self.key, counter=self.counter)

    def generator(self) -> np.random.Generator:
        """Fresh numpy Generator over this stream."""
        return np.random.Generator(self.bit_generator())

    def substream(self, offset: int) -> RngStream:
        """Stream ``stream_id + offset`` under the same seed, at the same counter."""
        return replace(self, stream_id=(self.stream_id + offset) & _MASK64)


RngLike = RngStream | np.random.Generator


def as_generator(rng: RngLike) -> np.random.Generator:
    """Accept either an RngStream or an existing numpy Generator."""
    if isinstance(rng, RngStream):
        return rng.generator()
    return rng
