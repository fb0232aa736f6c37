"""Hypergraph domain types, coloring validity and the brute-force oracle."""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from math import comb

import numpy as np

RED = 0
BLUE = 1

Hyperedge = tuple[int, ...]
Coloring = dict[int, int]

BRUTE_FORCE_MAX_VERTICES = 30


class MissingAssignmentError(KeyError):
    """A coloring has no color for a vertex it is asked about."""


class InstanceTooLargeError(ValueError):
    pass


class ParameterDomainError(ValueError):
    pass


def color_name(c: int) -> str:
    return {RED: "red", BLUE: "blue"}.get(c, str(c))


def flip(c: int) -> int:
    return BLUE if c == RED else RED


def make_edge(vertices: Iterable[int], n: int | None = None) -> Hyperedge:
    """Build a hyperedge, checking arity and distinctness."""
    edge = tuple(int(u) for u in vertices)
    if n is not None and len(edge) != n:
        raise ValueError(f"edge {edge} has {len(edge)} vertices, expected {n}")
    if len(set(edge)) != len(edge):
        raise ValueError(f"edge {edge} repeats a vertex")
    return edge


@dataclass(frozen=True)
class Hypergraph:
    """An n-uniform multiset of hyperedges.

    ``universe`` optionally declares the vertex set size; vertices are then
    taken to be ``1..universe``.
    """

    n: int
    edges: tuple[Hyperedge, ...] = ()
    universe: int | None = None
    _vertices: frozenset[int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise ParameterDomainError(f"uniformity must be positive, got {self.n}")
        edges = tuple(make_edge(e, self.n) for e in self.edges)
        object.__setattr__(self, "edges", edges)
        seen = frozenset(u for e in edges for u in e)
        if self.universe is not None:
            outside = [u for u in seen if not 1 <= u <= self.universe]
            if outside:
                raise ValueError(f"vertices {sorted(outside)[:5]} outside universe 1..{self.universe}")
            seen = frozenset(range(1, self.universe + 1))
        object.__setattr__(self, "_vertices", seen)

    @classmethod
    def from_edges(cls, edges: Iterable[Iterable[int]], n: int | None = None,
                   universe: int | None = None) -> Hypergraph:
        edges = [tuple(e) for e in edges]
        if n is None:
            if not edges:
                raise ValueError("cannot infer uniformity of an empty edge list")
            n = len(edges[0])
        return cls(n, tuple(edges), universe)

    @property
    def vertices(self) -> frozenset[int]:
        return self._vertices

    @property
    def v(self) -> int:
        return len(self._vertices)

    @property
    def q(self) -> int:
        return len(self.edges)

    def __iter__(self):
        return iter(self.edges)

    def __len__(self):
        return len(self.edges)


def _color_of(coloring: Mapping[int, int], u: int) -> int:
    try:
        return coloring[u]
    except KeyError:
        raise MissingAssignmentError(u) from None


def is_monochromatic(edge: Sequence[int], coloring: Mapping[int, int]) -> bool:
    colors = [_color_of(coloring, u) for u in edge]
    return colors.count(colors[0]) == len(colors)


def validate_coloring(h: Iterable[Hyperedge], coloring: Mapping[int, int]) -> list[Hyperedge]:
    """Return the monochromatic edges of ``h`` (with multiplicity)."""
    return [e for e in h if is_monochromatic(e, coloring)]


def shadow_size(red_count: int, v: int, n: int) -> int:
    """Number of n-subsets of [v] monochromatic under a coloring with ``red_count`` reds."""
    if not 0 <= red_count <= v:
        raise ParameterDomainError(f"red_count {red_count} not in [0, {v}]")
    return comb(red_count, n) + comb(v - red_count, n)


def max_edge_intersections(h: Iterable[Hyperedge]) -> int:
    """Largest number of other edges (occurrences) that a single edge meets."""
    edges = list(h)
    incident: dict[int, list[int]] = {}
    for i, e in enumerate(edges):
        for u in set(e):
            incident.setdefault(u, []).append(i)
    best = 0
    for i, e in enumerate(edges):
        met = set()
        for u in set(e):
            met.update(incident[u])
        met.discard(i)
        best = max(best, len(met))
    return best


def _edge_masks(h: Hypergraph, index: dict[int, int]) -> list[int]:
    masks = []
    for e in h.edges:
        m = 0
        for u in e:
            m |= 1 << index[u]
        masks.append(m)
    return masks


def brute_force_two_colorable(h: Hypergraph, chunk_bits: int = 20) -> Coloring | None:
    """Exhaustively search for a valid two-coloring.

    The first vertex is pinned Red (color swap symmetry), so ``2**(v-1)``
    assignments are scanned in numpy chunks. Returns ``None`` when the
    hypergraph has no valid two-coloring.
    """
    verts = sorted(h.vertices)
    v = len(verts)
    if v > BRUTE_FORCE_MAX_VERTICES:
        raise InstanceTooLargeError(f"v={v} exceeds enumeration guard {BRUTE_FORCE_MAX_VERTICES}")
    if not h.edges:
        return {u: RED for u in verts}
    index = {u: i for i, u in enumerate(verts)}
    # bit i set <=> verts[i] is Blue; bit 0 stays clear
    masks = np.array(sorted(set(_edge_masks(h, index))), dtype=np.int64)
    free = v - 1
    step = 1 << min(free, chunk_bits)
    for start in range(0, 1 << free, step):
        blue = (np.arange(start, start + step, dtype=np.int64) << 1)
        ok = np.ones(step, dtype=bool)
        for m in masks:
            hit = blue & m
            ok &= (hit != 0) & (hit != m)
            if not ok.any():
                break
        good = np.flatnonzero(ok)
        if good.size:
            chosen = int(blue[good[0]])
            return {u: BLUE if chosen >> i & 1 else RED for i, u in enumerate(verts)}
    return None


FANO_LINES: tuple[Hyperedge, ...] = (
    (1, 2, 4), (2, 3, 5), (3, 4, 6), (4, 5, 7), (5, 6, 1), (6, 7, 2), (7, 1, 3),
)


def fano_plane() -> Hypergraph:
    return Hypergraph(3, FANO_LINES)
