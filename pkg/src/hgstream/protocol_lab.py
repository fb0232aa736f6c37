"""One-round two-player coloring protocol over a shared collection of coloring lists.

Alice, holding hypergraph H_A, names a list all of whose colorings are valid
for H_A. Bob, holding H_B, answers with a coloring from that list valid for
H_B. The answer is valid for the union whenever the collection is good for
both players, which :func:`verify_goodness` decides by enumeration at toy
sizes.
"""

from __future__ import annotations

import math
import random
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from itertools import combinations
from math import comb

from .core import BLUE, RED, Coloring, Hyperedge, InstanceTooLargeError, validate_coloring

ENUMERATION_MAX_EDGES = 20
ENUMERATION_MAX_Q = 2


@dataclass(frozen=True)
class ListCollection:
    v: int
    n: int
    q_cap: int
    lists: tuple[tuple[Coloring, ...], ...]
    seed: int | None = None

    @property
    def r(self) -> int:
        return len(self.lists)

    @property
    def k(self) -> int:
        return len(self.lists[0]) if self.lists else 0

    def __post_init__(self):
        sizes = {len(lst) for lst in self.lists}
        if len(sizes) > 1:
            raise ValueError(f"lists have differing lengths {sorted(sizes)}")


def lemma_parameters(v: int, n: int) -> tuple[int, int]:
    """Collection shape from the existence argument: r = 2^n lists of k = ceil(6 2^(n/2) log2 v)."""
    return 2 ** n, math.ceil(6 * 2 ** (n / 2) * math.log2(v))


def gen_list_collection(v: int, n: int, q_cap: int, r: int, k: int, seed: int) -> ListCollection:
    if r < 1 or k < 1:
        raise ValueError(f"need r, k >= 1, got r={r} k={k}")
    rng = random.Random(seed)
    lists = tuple(
        tuple({u: rng.getrandbits(1) for u in range(1, v + 1)} for _ in range(k))
        for _ in range(r)
    )
    return ListCollection(v, n, q_cap, lists, seed)


def alice_message(h_a: Iterable[Hyperedge], c: ListCollection) -> int | None:
    """Smallest index of a list whose colorings are all valid for ``h_a``."""
    edges = list(h_a)
    for i, lst in enumerate(c.lists):
        if all(not validate_coloring(edges, chi) for chi in lst):
            return i
    return None


def bob_answer(h_b: Iterable[Hyperedge], colorings: Sequence[Coloring]) -> Coloring | None:
    edges = list(h_b)
    for chi in colorings:
        if not validate_coloring(edges, chi):
            return chi
    return None


def all_edges(v: int, n: int) -> list[Hyperedge]:
    return list(combinations(range(1, v + 1), n))


def enumerate_inputs(v: int, n: int, q: int) -> Iterator[tuple[Hyperedge, ...]]:
    """Every hypergraph on 1..v with exactly ``q`` distinct edges."""
    return combinations(all_edges(v, n), q)


def _check_guard(v: int, n: int, q: int) -> None:
    if comb(v, n) > ENUMERATION_MAX_EDGES or q > ENUMERATION_MAX_Q:
        raise InstanceTooLargeError(
            f"C({v},{n})={comb(v, n)} edges and q={q}; limits are "
            f"{ENUMERATION_MAX_EDGES} and {ENUMERATION_MAX_Q}")


def verify_goodness(c: ListCollection) -> tuple[bool, bool]:
    """Decide (good for Alice, good for Bob) over all hypergraphs with exactly q_cap edges.

    Good for Bob: every list holds a valid coloring for every input.
    Good for Alice: every input has some list of only valid colorings.
    """
    _check_guard(c.v, c.n, c.q_cap)
    edges = all_edges(c.v, c.n)
    # kills[i][j] = set of edge indices monochromatic under coloring j of list i
    kills = [[frozenset(x for x, e in enumerate(edges) if _mono(e, chi)) for chi in lst]
             for lst in c.lists]
    good_alice = good_bob = True
    for h in combinations(range(len(edges)), c.q_cap):
        hs = set(h)
        if good_bob and not all(any(not (k & hs) for k in lst) for lst in kills):
            good_bob = False
        if good_alice and not any(all(not (k & hs) for k in lst) for lst in kills):
            good_alice = False
        if not (good_alice or good_bob):
            break
    return good_alice, good_bob


def _mono(e: Hyperedge, chi: Coloring) -> bool:
    c = chi[e[0]]
    return all(chi[u] == c for u in e)


def run_protocol(h_a: Iterable[Hyperedge], h_b: Iterable[Hyperedge], c: ListCollection) -> Coloring | None:
    """Alice's index then Bob's pick; None when either step has no answer."""
    i = alice_message(h_a, c)
    if i is None:
        return None
    return bob_answer(h_b, c.lists[i])


def message_bits(c: ListCollection) -> int:
    """Bits in Alice's single message."""
    return max(1, math.ceil(math.log2(c.r))) if c.r > 1 else 0


def split_coloring(v: int, red: Iterable[int]) -> Coloring:
    reds = set(red)
    return {u: RED if u in reds else BLUE for u in range(1, v + 1)}
