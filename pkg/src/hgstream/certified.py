"""Streaming delayed recoloring that never returns an invalid coloring.

Alongside the recoloring engine, two residual lists are kept:

* blue residuals: the initially-Red part of an edge, stored when that part
  is nonempty and every vertex in it may flip. If all of them end Blue the
  edge may have become all Blue.
* red residuals: the symmetric sets for initially-Blue parts.

The run fails if an initially monochromatic edge has no vertex allowed to
flip, if either residual list grows past ``cap`` stored vertices, or if a
stored set ends up entirely Blue (resp. Red).
"""

from __future__ import annotations

import math
from collections.abc import Iterable
from dataclasses import dataclass

from .core import BLUE, RED, Hyperedge, ParameterDomainError
from .outcome import ColorOutcome, Failure, FailureReason
from .recolor import RunStats, StreamRecolorer, p_default
from .tape import FixedTape, RandomTape


@dataclass
class CertifiedStats(RunStats):
    blue_size: int = 0
    red_size: int = 0
    blue_sets: int = 0
    red_sets: int = 0

    @property
    def extra_state(self) -> int:
        return self.blue_size + self.red_size


class ResidualStore:
    def __init__(self, cap: float):
        self.cap = cap
        self.blue_residuals: list[tuple[int, ...]] = []
        self.red_residuals: list[tuple[int, ...]] = []
        self.blue_size = 0
        self.red_size = 0

    def offer(self, edge: Hyperedge, chi0: dict[int, int], b: dict[int, int]) -> FailureReason | None:
        """Store the edge's flippable color parts; report an overflow."""
        has_red = has_blue = False
        red_ok = blue_ok = True
        for u in edge:
            if chi0[u] == RED:
                has_red = True
                if not b[u]:
                    red_ok = False
            else:
                has_blue = True
                if not b[u]:
                    blue_ok = False
            if not (red_ok or blue_ok):
                return None
        if has_red and red_ok:
            reds = tuple(u for u in edge if chi0[u] == RED)
            if self.blue_size + len(reds) > self.cap:
                return FailureReason.RESIDUAL_OVERFLOW_BLUE
            self.blue_residuals.append(reds)
            self.blue_size += len(reds)
        if has_blue and blue_ok:
            blues = tuple(u for u in edge if chi0[u] == BLUE)
            if self.red_size + len(blues) > self.cap:
                return FailureReason.RESIDUAL_OVERFLOW_RED
            self.red_residuals.append(blues)
            self.red_size += len(blues)
        return None

    def final_check(self, color: dict[int, int]) -> FailureReason | None:
        for s in self.blue_residuals:
            if all(color[u] == BLUE for u in s):
                return FailureReason.FINAL_CHECK_BLUE
        for s in self.red_residuals:
            if all(color[u] == RED for u in s):
                return FailureReason.FINAL_CHECK_RED
        return None


def certified_stream_color(edges: Iterable[Hyperedge], tape: RandomTape | FixedTape,
                           p: float | None = None, cap: float | None = None,
                           n: int | None = None) -> ColorOutcome:
    """One pass; returns a valid coloring or a :class:`Failure`, never an invalid coloring.

    ``cap`` bounds each residual list's total stored vertices and defaults to
    the uniformity. ``math.inf`` disables the overflow guard.
    """
    engine = None
    store = None
    pos = -1
    for pos, edge in enumerate(edges):
        if engine is None:
            n = n or len(edge)
            engine = StreamRecolorer(tape, p if p is not None else p_default(n), n)
            engine.stats = CertifiedStats()
            store = ResidualStore(cap if cap is not None else n)
            if store.cap < 1:
                raise ParameterDomainError(f"cap must be >= 1, got {store.cap}")
        st = engine.state
        chi0, b = st.chi0, st.b
        for u in edge:
            if u not in chi0:
                st.discover(u)
        c0 = chi0[edge[0]]
        if not any(b[u] for u in edge) and all(chi0[u] == c0 for u in edge):
            return _fail(engine, store, FailureReason.UNFIXABLE_MONO_EDGE, edge, pos)
        overflow = store.offer(edge, chi0, b)
        if overflow is not None:
            return _fail(engine, store, overflow, edge, pos)
        engine.feed(edge)

    if engine is None:
        return ColorOutcome({}, None, CertifiedStats())
    coloring, stats = engine.finish()
    _copy_sizes(stats, store)
    reason = store.final_check(engine.state.color)
    if reason is not None:
        return ColorOutcome(None, Failure(reason, None, pos), stats)
    return ColorOutcome(coloring, None, stats)


def _copy_sizes(stats: CertifiedStats, store: ResidualStore) -> None:
    stats.blue_size = store.blue_size
    stats.red_size = store.red_size
    stats.blue_sets = len(store.blue_residuals)
    stats.red_sets = len(store.red_residuals)


def _fail(engine: StreamRecolorer, store: ResidualStore, reason: FailureReason,
          edge: Hyperedge, pos: int) -> ColorOutcome:
    _, stats = engine.finish()
    _copy_sizes(stats, store)
    return ColorOutcome(None, Failure(reason, tuple(edge), pos), stats)


def residual_sizes(edges: Iterable[Hyperedge], tape: RandomTape | FixedTape,
                   p: float | None = None) -> tuple[int, int]:
    """Total stored vertices of both residual lists over the whole stream, uncapped.

    Depends only on initial colors and recolor bits, so it measures the
    residual sizes even for runs that stop early.
    """
    blue = red = 0
    draws: dict[int, tuple[int, int]] = {}
    for edge in edges:
        if p is None:
            p = p_default(len(edge))
        reds = blues = 0
        red_ok = blue_ok = True
        for u in edge:
            d = draws.get(u)
            if d is None:
                c, bit, _ = tape.draw(u, p)
                d = draws[u] = (c, bit)
            if d[0] == RED:
                reds += 1
                red_ok = red_ok and bool(d[1])
            else:
                blues += 1
                blue_ok = blue_ok and bool(d[1])
        if reds and red_ok:
            blue += reds
        if blues and blue_ok:
            red += blues
    return blue, red


def residual_expected_size_bound(n: int, q: int, p: float) -> float:
    """Expected total size of the blue residual list, q n p 2^-n (1+p)^(n-1)."""
    if n < 3:
        raise ParameterDomainError(f"n must be >= 3, got {n}")
    if not 0.0 < p < 1.0:
        raise ParameterDomainError(f"p must lie in (0, 1), got {p}")
    if q < 0:
        raise ParameterDomainError(f"q must be >= 0, got {q}")
    return q * n * p * math.ldexp((1.0 + p) ** (n - 1), -n)
