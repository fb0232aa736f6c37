"""Delayed recoloring: the offline algorithm and its one-pass streaming form.

Both engines read their randomness from a tape keyed by vertex id, so for a
fixed tape the two produce the same coloring for every edge arrival order.

The streaming engine flips, for each edge that is monochromatic under the
initial coloring, the earliest-priority vertex of that edge whose recolor bit
is set, unless that vertex was already flipped. This is the rule the offline
algorithm effectively applies. Gating the flip on the edge *still* being
monochromatic (``literal_guard=True``) makes the output depend on arrival
order and breaks the correspondence with the offline run; it is kept only for
comparison.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

from .core import BLUE, RED, Coloring, Hyperedge, Hypergraph, ParameterDomainError
from .tape import FixedTape, RandomTape


def p_default(n: int) -> float:
    """Recolor-bit probability (ln n - ln ln n) / 2n."""
    if n < 3:
        raise ParameterDomainError(f"p_default needs n >= 3, got {n}")
    return (math.log(n) - math.log(math.log(n))) / (2 * n)


def bits_per_vertex(v: int) -> int:
    return max(1, math.ceil(math.log2(v))) if v > 1 else 1


@dataclass
class RunStats:
    edges: int = 0
    discovered: int = 0
    flips: int = 0
    initially_mono: int = 0
    # initially monochromatic edges with no vertex allowed to flip
    unfixable: int = 0
    peak_state: int = 0
    flip_log: list[tuple[int, int]] | None = field(default=None, repr=False)

    @property
    def bits_per_vertex(self) -> int:
        return bits_per_vertex(self.discovered)


class RecolorState:
    """Per-vertex table: initial color, current color, recolor bit, priority."""

    __slots__ = ("tape", "p", "chi0", "color", "b", "priority")

    def __init__(self, tape: RandomTape | FixedTape, p: float):
        self.tape = tape
        self.p = p
        self.chi0: dict[int, int] = {}
        self.color: dict[int, int] = {}
        self.b: dict[int, int] = {}
        self.priority: dict[int, int] = {}

    def discover(self, u: int) -> None:
        if u in self.chi0:
            return
        c, bit, prio = self.tape.draw(u, self.p)
        self.chi0[u] = c
        self.color[u] = c
        self.b[u] = bit
        self.priority[u] = prio

    def __len__(self):
        return len(self.chi0)

    def __contains__(self, u):
        return u in self.chi0

    def coloring(self) -> Coloring:
        return dict(self.color)


def first_flippable(edge: Sequence[int], state: RecolorState) -> int | None:
    """The b=1 vertex of ``edge`` with least priority (ties by id), or None."""
    best = None
    best_key = None
    b, prio = state.b, state.priority
    for u in edge:
        if b[u]:
            key = (prio[u], u)
            if best_key is None or key < best_key:
                best, best_key = u, key
    return best


def _resolve_p(p: float | None, n: int | None) -> float:
    if p is not None:
        if not 0.0 <= p <= 1.0:
            raise ParameterDomainError(f"p must lie in [0, 1], got {p}")
        return p
    if n is None:
        raise ParameterDomainError("either p or the uniformity n must be given")
    return p_default(n)


class StreamRecolorer:
    """One-pass delayed recoloring over an edge stream.

    State is one table row per discovered vertex; each edge costs O(n)
    dictionary lookups plus tape draws for unseen vertices.
    """

    def __init__(self, tape: RandomTape | FixedTape, p: float | None = None, n: int | None = None,
                 *, literal_guard: bool = False, log_flips: bool = False):
        self.state = RecolorState(tape, _resolve_p(p, n))
        self.literal_guard = literal_guard
        self.stats = RunStats(flip_log=[] if log_flips else None)

    @property
    def p(self) -> float:
        return self.state.p

    def feed(self, edge: Hyperedge) -> int | None:
        """Process one edge; return the vertex flipped, if any."""
        st = self.state
        stats = self.stats
        for u in edge:
            if u not in st.chi0:
                st.discover(u)
        stats.edges += 1
        chi0 = st.chi0
        c0 = chi0[edge[0]]
        for u in edge:
            if chi0[u] != c0:
                return None
        stats.initially_mono += 1
        color = st.color
        if self.literal_guard:
            c = color[edge[0]]
            if any(color[u] != c for u in edge):
                return None
        u = first_flippable(edge, st)
        if u is None:
            stats.unfixable += 1
            return None
        if color[u] != chi0[u]:
            return None
        color[u] = BLUE if color[u] == RED else RED
        stats.flips += 1
        if stats.flip_log is not None:
            stats.flip_log.append((stats.edges - 1, u))
        return u

    def finish(self) -> tuple[Coloring, RunStats]:
        self.stats.discovered = len(self.state)
        self.stats.peak_state = len(self.state)
        return self.state.coloring(), self.stats


def stream_color(edges: Iterable[Hyperedge], tape: RandomTape | FixedTape, p: float | None = None,
                 n: int | None = None, *, literal_guard: bool = False,
                 log_flips: bool = False) -> tuple[Coloring, RunStats]:
    """Color an edge stream in one pass.

    ``p`` defaults to :func:`p_default` of the uniformity, taken from ``n``
    or, failing that, from the first edge.
    """
    it = iter(edges)
    if p is None and n is None:
        first = next(it, None)
        if first is None:
            return {}, RunStats(flip_log=[] if log_flips else None)
        n = len(first)
        it = _chain_first(first, it)
    engine = StreamRecolorer(tape, p, n, literal_guard=literal_guard, log_flips=log_flips)
    for e in it:
        engine.feed(e)
    return engine.finish()


def _chain_first(first, rest):
    yield first
    yield from rest


def offline_color(h: Hypergraph, tape: RandomTape | FixedTape, p: float | None = None,
                  flip_log: list[int] | None = None) -> Coloring:
    """The offline delayed recoloring algorithm with all edges in memory.

    Vertices are visited in ascending (priority, id) order; a vertex with
    b=1 flips when some initially monochromatic edge through it is still
    monochromatic at its turn.
    """
    p = _resolve_p(p, h.n)
    chi0: dict[int, int] = {}
    b: dict[int, int] = {}
    prio: dict[int, int] = {}
    for u in h.vertices:
        chi0[u], b[u], prio[u] = tape.draw(u, p)

    initially_mono = [e for e in h.edges if all(chi0[w] == chi0[e[0]] for w in e)]
    through: dict[int, list[Hyperedge]] = {}
    for e in initially_mono:
        for w in e:
            through.setdefault(w, []).append(e)

    color = dict(chi0)
    for u in sorted(h.vertices, key=lambda w: (prio[w], w)):
        if not b[u]:
            continue
        for e in through.get(u, ()):
            c = color[e[0]]
            if all(color[w] == c for w in e):
                color[u] = BLUE if color[u] == RED else RED
                if flip_log is not None:
                    flip_log.append(u)
                break
    return color
