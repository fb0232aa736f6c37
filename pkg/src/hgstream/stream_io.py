"""HGS1 edge-stream files and random instance generators.

Format: a header line ``HGS1 n=<n> [v=<v>] [q=<q>]`` followed by one edge
per line, vertex ids in decimal separated by single spaces.
"""

from __future__ import annotations

import io
import math
import random
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from typing import IO

from .core import Hyperedge, ParameterDomainError

MAGIC = "HGS1"


class StreamFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class EdgeStreamHeader:
    n: int
    v: int | None = None
    q: int | None = None

    def __post_init__(self):
        if self.n < 3:
            raise StreamFormatError(f"uniformity must be >= 3, got {self.n}")
        if self.v is not None and self.v < self.n:
            raise StreamFormatError(f"declared v={self.v} is smaller than n={self.n}")
        if self.q is not None and self.q < 0:
            raise StreamFormatError(f"declared q={self.q} is negative")

    def to_line(self) -> str:
        parts = [MAGIC, f"n={self.n}"]
        if self.v is not None:
            parts.append(f"v={self.v}")
        if self.q is not None:
            parts.append(f"q={self.q}")
        return " ".join(parts)


def parse_header(line: str) -> EdgeStreamHeader:
    tokens = line.split()
    if not tokens or tokens[0] != MAGIC:
        raise StreamFormatError(f"missing {MAGIC} magic tag", 1)
    fields: dict[str, int] = {}
    for tok in tokens[1:]:
        key, sep, value = tok.partition("=")
        if not sep or key not in ("n", "v", "q") or key in fields:
            raise StreamFormatError(f"bad header field {tok!r}", 1)
        try:
            fields[key] = int(value)
        except ValueError:
            raise StreamFormatError(f"non-integer header value {tok!r}", 1) from None
    if "n" not in fields:
        raise StreamFormatError("header lacks n=", 1)
    return EdgeStreamHeader(**fields)


def _lines(source) -> Iterator[str]:
    if isinstance(source, (bytes, bytearray)):
        source = io.BytesIO(source)
    elif isinstance(source, str):
        source = io.StringIO(source)
    for raw in source:
        yield raw.decode("ascii") if isinstance(raw, (bytes, bytearray)) else raw


def parse_stream(source: bytes | str | IO | Iterable) -> tuple[EdgeStreamHeader, Iterator[Hyperedge]]:
    """Read the header eagerly; return it with a lazy, single-pass edge iterator.

    ``source`` may be bytes, a str, a binary or text file object, or any
    iterable of lines.
    """
    lines = _lines(source)
    first = next(lines, None)
    if first is None:
        raise StreamFormatError("empty stream", 1)
    header = parse_header(first)
    return header, _edges(header, lines)


def _edges(header: EdgeStreamHeader, lines: Iterator[str]) -> Iterator[Hyperedge]:
    n, v = header.n, header.v
    count = 0
    for lineno, line in enumerate(lines, start=2):
        tokens = line.split()
        if not tokens:
            continue
        if len(tokens) != n:
            raise StreamFormatError(f"edge has {len(tokens)} vertices, expected {n}", lineno)
        try:
            edge = tuple(int(t) for t in tokens)
        except ValueError:
            raise StreamFormatError(f"non-integer vertex id in {line.strip()!r}", lineno) from None
        if len(set(edge)) != n:
            raise StreamFormatError(f"duplicate vertex in edge {edge}", lineno)
        for u in edge:
            if u < 0 or (v is not None and not 1 <= u <= v):
                raise StreamFormatError(f"vertex {u} outside universe", lineno)
        count += 1
        yield edge
    if header.q is not None and count != header.q:
        raise StreamFormatError(f"header declares q={header.q} but stream has {count} edges")


def read_stream(path) -> tuple[EdgeStreamHeader, list[Hyperedge]]:
    with open(path, "rb") as fh:
        header, edges = parse_stream(fh)
        return header, list(edges)


def iter_stream_file(path) -> Iterator[Hyperedge]:
    """Edges of a stream file, reopening the file on every call."""
    with open(path, "rb") as fh:
        _, edges = parse_stream(fh)
        yield from edges


def _format_edges(header: EdgeStreamHeader, edges: Iterable[Hyperedge]) -> Iterator[str]:
    yield header.to_line() + "\n"
    for e in edges:
        if len(e) != header.n:
            raise ValueError(f"edge {tuple(e)} does not match header uniformity {header.n}")
        yield " ".join(map(str, e)) + "\n"


def write_stream(header: EdgeStreamHeader, edges: Iterable[Hyperedge]) -> bytes:
    return "".join(_format_edges(header, edges)).encode("ascii")


def dump_stream(fp: IO[str], header: EdgeStreamHeader, edges: Iterable[Hyperedge]) -> int:
    """Write a stream to a text file object incrementally; return edges written."""
    count = -1
    for count, line in enumerate(_format_edges(header, edges)):
        fp.write(line)
    return count


def _draw_edge(rng: random.Random, v: int, n: int) -> Hyperedge:
    chosen: list[int] = []
    seen = set()
    while len(chosen) < n:
        u = rng.randrange(v) + 1
        if u not in seen:
            seen.add(u)
            chosen.append(u)
    return tuple(sorted(chosen))


def gen_uniform_random(v: int, n: int, q: int, seed: int) -> list[Hyperedge]:
    """``q`` edges drawn independently and uniformly from the n-subsets of 1..v."""
    if n < 1 or v < n or q < 0:
        raise ParameterDomainError(f"need 1 <= n <= v and q >= 0, got v={v} n={n} q={q}")
    rng = random.Random(seed)
    return [_draw_edge(rng, v, n) for _ in range(q)]


def erdos_parameters(n: int, t: float) -> tuple[int, int]:
    """Vertex count N = floor(n^2/t) and edge count q of the random non-two-colorable construction.

    q = ceil(N 2^n exp(t n / (n - 2t)) ln 2), the least count for which a
    random draw leaves every two-coloring invalid with positive probability.
    """
    if t <= 0 or t > n * n / (2 * n - 1):
        raise ParameterDomainError(f"need 0 < t <= n^2/(2n-1) = {n * n / (2 * n - 1):.4f}, got t={t}")
    if n - 2 * t <= 0:
        raise ParameterDomainError(f"need n > 2t for a finite edge count, got n={n} t={t}")
    big_n = math.floor(n * n / t)
    if big_n < 2 * n - 1:
        raise ParameterDomainError(f"N={big_n} is below 2n-1={2 * n - 1}")
    q = math.ceil(big_n * 2 ** n * math.exp(t * n / (n - 2 * t)) * math.log(2))
    return big_n, q


def gen_erdos(n: int, t: float, seed: int) -> tuple[list[Hyperedge], int, int]:
    big_n, q = erdos_parameters(n, t)
    return gen_uniform_random(big_n, n, q, seed), big_n, q


def gen_bounded_intersection(v: int, n: int, max_intersections: int, q: int, seed: int,
                             attempts: int | None = None) -> list[Hyperedge]:
    """Random edges kept only while no edge meets more than ``max_intersections`` others.

    Stops at ``q`` edges or after ``attempts`` rejected candidates (default
    ``20 * q``), so fewer than ``q`` edges may come back.
    """
    if n < 1 or v < n or q < 0 or max_intersections < 0:
        raise ParameterDomainError(f"bad parameters v={v} n={n} q={q} max={max_intersections}")
    rng = random.Random(seed)
    attempts = 20 * q if attempts is None else attempts
    edges: list[Hyperedge] = []
    through: dict[int, list[int]] = {}
    meets: list[int] = []
    rejected = 0
    while len(edges) < q and rejected <= attempts:
        cand = _draw_edge(rng, v, n)
        others = set()
        for u in cand:
            others.update(through.get(u, ()))
        if len(others) > max_intersections or any(meets[j] + 1 > max_intersections for j in others):
            rejected += 1
            continue
        idx = len(edges)
        edges.append(cand)
        meets.append(len(others))
        for j in others:
            meets[j] += 1
        for u in cand:
            through.setdefault(u, []).append(idx)
    return edges

