"""Counter-based random numbers for reproducible parallel Monte Carlo.

Every output word is a pure function of (seed, stream_id, counter), so any
worker can evaluate any slice of the sequence independently and a run is
bitwise reproducible regardless of how counters are distributed.  The word
function is the splitmix64 finalizer applied to an affine counter walk,
which is the standard recipe for a cheap stateless generator.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

_GOLDEN_U64 = np.uint64(_GOLDEN)
_MIX1_U64 = np.uint64(_MIX1)
_MIX2_U64 = np.uint64(_MIX2)


def _mix(z: int) -> int:
    """splitmix64 finalizer on Python integers (reference path)."""
    z &= _MASK64
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def _mix_array(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * _MIX1_U64
    z = (z ^ (z >> np.uint64(27))) * _MIX2_U64
    return z ^ (z >> np.uint64(31))


@dataclass(frozen=True)
class RngStream:
    """A named, splittable source of 64-bit words and uniforms.

    Streams with distinct (seed, stream_id) are independent by
    construction; identical pairs give identical sequences on every
    platform because only 64-bit integer arithmetic is involved.
    """

    seed: int
    stream_id: int = 0

    def __post_init__(self) -> None:
        if not (0 <= self.seed < 1 << 64):
            raise ValueError("seed must fit in an unsigned 64-bit integer")
        if not (0 <= self.stream_id < 1 << 64):
            raise ValueError("stream_id must fit in an unsigned 64-bit integer")

    @property
    def _key(self) -> int:
        return _mix((_mix(self.seed) + self.stream_id * _GOLDEN) & _MASK64)

    def word(self, counter: int) -> int:
        """The 64-bit word at one counter position."""
        if counter < 0:
            raise ValueError("counter must be nonnegative")
        return _mix((self._key + (counter + 1) * _GOLDEN) & _MASK64)

    def words(self, start: int, count: int) -> np.ndarray:
        """Words for the counter block [start, start + count)."""
        if start < 0 or count < 0:
            raise ValueError("start and count must be nonnegative")
        counters = np.arange(start + 1, start + count + 1, dtype=np.uint64)
        base = counters * _GOLDEN_U64 + np.uint64(self._key)
        return _mix_array(base)

    def uniform(self, counter: int) -> float:
        return (self.word(counter) >> 11) * 2.0**-53

    def uniforms(self, start: int, count: int) -> np.ndarray:
        """float64 uniforms on [0, 1) for a counter block."""
        return (self.words(start, count) >> np.uint64(11)).astype(np.float64) * 2.0**-53

    def substream(self, stream_id: int) -> "RngStream":
        """A sibling stream under the same seed."""
        return RngStream(seed=self.seed, stream_id=stream_id)
