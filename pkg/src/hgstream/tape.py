"""Seed-keyed per-vertex randomness.

Every random quantity used by the colorers is a pure function of a 64-bit
seed, a vertex id and a field tag, computed with the SplitMix64 finalizer.
Nothing depends on the order in which vertices are first seen.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .core import BLUE, RED

MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15

TAG_COLOR = 1
TAG_BIT = 2
TAG_PRIORITY = 3


def mix64(x: int) -> int:
    z = (x + _GAMMA) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_seed(seed: int, *keys: int) -> int:
    """Fold integer keys into a seed; distinct key paths give unrelated seeds."""
    h = mix64(seed & MASK64)
    for k in keys:
        h = mix64(h ^ (k & MASK64))
    return h


def unit_float(word: int) -> float:
    """Map a 64-bit word to [0, 1) using its top 53 bits."""
    return (word >> 11) * (1.0 / (1 << 53))


def bernoulli(word: int, p: float) -> int:
    return 1 if unit_float(word) < p else 0


class VertexDraw(NamedTuple):
    chi0: int
    b: int
    priority: int


class RandomTape:
    """Deterministic source of (initial color, recolor bit, priority) per vertex."""

    def __init__(self, seed: int):
        self.seed = seed & MASK64
        self._keys = {tag: derive_seed(self.seed, tag) for tag in (TAG_COLOR, TAG_BIT, TAG_PRIORITY)}

    def word(self, u: int, tag: int) -> int:
        # counter-mode SplitMix64: position u of the stream keyed by (seed, tag)
        return mix64((self._keys[tag] + u * _GAMMA) & MASK64)

    def chi0(self, u: int) -> int:
        return BLUE if self.word(u, TAG_COLOR) >> 63 else RED

    def b(self, u: int, p: float) -> int:
        return bernoulli(self.word(u, TAG_BIT), p)

    def priority(self, u: int) -> int:
        return self.word(u, TAG_PRIORITY)

    def draw(self, u: int, p: float) -> VertexDraw:
        return VertexDraw(self.chi0(u), self.b(u, p), self.priority(u))

    def __repr__(self):
        return f"RandomTape(seed={self.seed:#x})"


@dataclass
class FixedTape:
    """Explicit per-vertex values, for hand-traced cases and exhaustive tests.

    ``p`` passed to :meth:`draw` is ignored; ``b`` is taken as given.
    """

    chi0_of: dict[int, int]
    b_of: dict[int, int]
    priority_of: dict[int, int]

    def draw(self, u: int, p: float) -> VertexDraw:
        return VertexDraw(self.chi0_of[u], self.b_of[u], self.priority_of[u])
