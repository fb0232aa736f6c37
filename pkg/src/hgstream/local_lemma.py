"""Multi-pass resampling colorer for hypergraphs whose edges meet few others.

Each pass streams every edge. An edge found monochromatic whose vertices
have not been resampled yet in this pass gets all its vertices recolored
uniformly at random, and those vertices are marked for the rest of the
pass. The run succeeds after a pass that sees no monochromatic edge.

State is one color per vertex plus one mark per vertex.
"""

from __future__ import annotations

import math
import os
from collections.abc import Callable, Iterable, Iterator
from dataclasses import dataclass, field

from .core import BLUE, RED, Coloring, Hyperedge, Hypergraph, max_edge_intersections
from .outcome import ColorOutcome, Failure, FailureReason
from .stream_io import iter_stream_file
from .tape import derive_seed

DEFAULT_PASS_FACTOR = 4.0


class StreamReplayError(RuntimeError):
    pass


@dataclass
class PassRecord:
    index: int
    mono_seen: int = 0
    resampled_edges: int = 0
    resampled_vertices: int = 0


@dataclass
class ResampleEvent:
    pass_index: int
    position: int
    edge: Hyperedge
    colors_before: tuple[int, ...]


@dataclass
class LocalStats:
    passes: int = 0
    discovered: int = 0
    resamples: int = 0
    pass_records: list[PassRecord] = field(default_factory=list)
    events: list[ResampleEvent] | None = field(default=None, repr=False)


def local_intersection_threshold(n: int, epsilon: float) -> float:
    """(1 - eps) 2^(n-1) / e - 1."""
    return (1.0 - epsilon) * 2 ** (n - 1) / math.e - 1.0


def check_local_precondition(h: Hypergraph | Iterable[Hyperedge], n: int, epsilon: float) -> bool:
    return max_edge_intersections(h) <= local_intersection_threshold(n, epsilon)


def default_max_passes(v: int, factor: float = DEFAULT_PASS_FACTOR) -> int:
    return max(1, math.ceil(factor * math.log2(v + 2)))


def _replayer(source) -> Callable[[], Iterator[Hyperedge]]:
    if isinstance(source, (str, os.PathLike)):
        return lambda: iter_stream_file(source)
    if callable(source):
        return source
    if iter(source) is source:
        raise StreamReplayError("edge source is a one-shot iterator and cannot be replayed")
    return lambda: iter(source)


def _color_bit(seed: int, pass_index: int, u: int, occurrence: int) -> int:
    return BLUE if derive_seed(seed, pass_index, u, occurrence) >> 63 else RED


def local_stream_color(edges, seed: int = 0, max_passes: int | None = None, *,
                       pass_factor: float = DEFAULT_PASS_FACTOR,
                       log_events: bool = False) -> ColorOutcome:
    """Color a replayable stream with per-pass parallel resampling.

    ``edges`` may be a re-iterable collection, a path to an HGS1 file, or a
    zero-argument callable returning a fresh iterator. When ``max_passes``
    is None the budget is ``ceil(pass_factor * log2(v + 2))`` with v known
    after the first pass.
    """
    open_pass = _replayer(edges)
    color: Coloring = {}
    occurrences: dict[int, int] = {}
    stats = LocalStats(events=[] if log_events else None)
    budget = max_passes
    if budget is not None and budget < 1:
        raise ValueError(f"max_passes must be >= 1, got {budget}")

    while True:
        record = PassRecord(index=stats.passes + 1)
        stats.passes += 1
        marked: set[int] = set()
        for pos, e in enumerate(open_pass()):
            for u in e:
                if u not in color:
                    color[u] = _color_bit(seed, 0, u, 0)
            c = color[e[0]]
            if any(color[u] != c for u in e):
                continue
            record.mono_seen += 1
            if any(u in marked for u in e):
                continue
            if stats.events is not None:
                stats.events.append(ResampleEvent(record.index, pos, tuple(e), tuple(color[u] for u in e)))
            for u in e:
                k = occurrences.get(u, 0) + 1
                occurrences[u] = k
                color[u] = _color_bit(seed, record.index, u, k)
                marked.add(u)
            record.resampled_edges += 1
            record.resampled_vertices += len(e)
        stats.pass_records.append(record)
        stats.resamples += record.resampled_edges
        stats.discovered = len(color)
        if record.mono_seen == 0:
            return ColorOutcome(dict(color), None, stats)
        if budget is None:
            budget = default_max_passes(len(color), pass_factor)
        if stats.passes >= budget:
            return ColorOutcome(None, Failure(FailureReason.PASS_BUDGET_EXHAUSTED), stats)
