"""Balanced-split colorers and bounds for hypergraphs on few vertices."""

from __future__ import annotations

import math
import random
from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .core import Coloring, Hyperedge, ParameterDomainError
from .outcome import ColorOutcome, Failure, FailureReason


@dataclass(frozen=True)
class KSplit:
    """Vertices 1..v split into k classes whose sizes differ by at most one.

    A seeded shuffle of 1..v is cut into consecutive chunks, the larger
    chunks first. With k=2 the first ceil(v/2) shuffled vertices are Red.
    """

    v: int
    k: int
    seed: int

    def __post_init__(self):
        if self.v < 0 or self.k < 1:
            raise ParameterDomainError(f"need v >= 0 and k >= 1, got v={self.v} k={self.k}")

    def class_sizes(self) -> list[int]:
        base, extra = divmod(self.v, self.k)
        return [base + 1 if i < extra else base for i in range(self.k)]

    def coloring(self) -> Coloring:
        order = list(range(1, self.v + 1))
        random.Random(self.seed).shuffle(order)
        out: Coloring = {}
        pos = 0
        for cls, size in enumerate(self.class_sizes()):
            for u in order[pos:pos + size]:
                out[u] = cls
            pos += size
        return out


def balanced_split(v: int, seed: int) -> Coloring:
    """Red class of size ceil(v/2), Blue of size floor(v/2)."""
    return KSplit(v, 2, seed).coloring()


def mono_prob_exact_fraction(v: int, n: int, k: int = 2) -> Fraction:
    """Chance that a fixed n-set lies inside one class of a uniform k-split of [v]."""
    if n < 1 or v < n:
        raise ParameterDomainError(f"need 1 <= n <= v, got v={v} n={n}")
    sizes = KSplit(v, k, 0).class_sizes()
    return Fraction(sum(comb(s, n) for s in sizes), comb(v, n))


def mono_prob_exact(v: int, n: int) -> float:
    """(C(ceil(v/2), n) + C(floor(v/2), n)) / C(v, n), exact until the final division."""
    return float(mono_prob_exact_fraction(v, n, 2))


def mono_prob_bound(v: int, n: int) -> float:
    if n < 1 or v < n:
        raise ParameterDomainError(f"need 1 <= n <= v, got v={v} n={n}")
    return math.ldexp(math.exp(-(n - 1) ** 2 / (2 * v)), -(n - 1))


def failure_bound(q: int, n: int, t: float) -> float:
    """Union bound on a balanced split failing: q 2^-(n-1) exp(-t/8)."""
    return q * math.ldexp(math.exp(-t / 8), -(n - 1))


def k_balanced_stream_color(edges: Iterable[Hyperedge], v: int, n: int, k: int, seed: int) -> ColorOutcome:
    """Fix a k-split of 1..v, then stream edges and stop at the first one inside a class.

    Raises ``ValueError`` for vertices outside 1..v or edges of the wrong arity.
    """
    coloring = KSplit(v, k, seed).coloring()
    count = 0
    for pos, edge in enumerate(edges):
        if len(edge) != n:
            raise ValueError(f"edge {tuple(edge)} has arity {len(edge)}, expected {n}")
        try:
            colors = [coloring[u] for u in edge]
        except KeyError as exc:
            raise ValueError(f"vertex {exc.args[0]} outside universe 1..{v}") from None
        count = pos + 1
        if colors.count(colors[0]) == n:
            return ColorOutcome(None, Failure(FailureReason.MONOCHROMATIC_EDGE, tuple(edge), pos),
                                {"edges": count})
    return ColorOutcome(coloring, None, {"edges": count})


def balanced_stream_color(edges: Iterable[Hyperedge], v: int, n: int, seed: int) -> ColorOutcome:
    return k_balanced_stream_color(edges, v, n, 2, seed)


def m_bounds(n: int, t: float) -> tuple[float, float]:
    """Lower and upper bounds on the fewest edges of a non-two-colorable n-graph on n^2/t vertices.

    The upper bound is reported as ``inf`` when t = n/2 exactly (its exponent
    divides by n - 2t) or when it exceeds the double range.
    """
    if not 4 <= t <= n * n / (2 * n - 1):
        raise ParameterDomainError(f"need 4 <= t <= n^2/(2n-1), got n={n} t={t}")
    lower = math.ldexp(math.exp(t / 8), n - 1)
    return lower, _upper(n, t, 2)


def _upper(n: int, t: float, k: int) -> float:
    gap = n - k * t
    if gap <= 0:
        return math.inf
    log_upper = math.log(n * n / t) + n * math.log(k) + (k - 1) * t * n / gap
    # beyond double range for t just under n/k at large n
    return math.exp(log_upper) if log_upper < 709.0 else math.inf


def mk_bounds(n: int, t: float, k: int) -> tuple[float, float]:
    """The k-color analogue: k^(n-1) e^(-(k-1)t/2) and (n^2/t) k^n e^((k-1)tn/(n-kt)).

    Valid while the vertex count n^2/t is at least kn - 1. The upper bound
    is ``inf`` once t >= n/k, as in :func:`m_bounds`.
    """
    if k < 2 or t <= 0 or n * n / t < k * n - 1:
        raise ParameterDomainError(f"need k >= 2, t > 0 and n^2/t >= kn-1, got n={n} t={t} k={k}")
    lower = float(k) ** (n - 1) * math.exp(-(k - 1) * t / 2)
    return lower, _upper(n, t, k)

