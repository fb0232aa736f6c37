from itertools import combinations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hgstream.core import (BLUE, RED, Hypergraph, InstanceTooLargeError, MissingAssignmentError,
                           brute_force_two_colorable, fano_plane, is_monochromatic,
                           max_edge_intersections, shadow_size, validate_coloring)


def test_is_monochromatic_basic():
    assert is_monochromatic((1, 2, 3), {1: RED, 2: RED, 3: RED})
    assert not is_monochromatic((1, 2, 3), {1: BLUE, 2: RED, 3: RED})


def test_fano_line_under_four_three_split():
    chi = {u: RED if u <= 4 else BLUE for u in range(1, 8)}
    assert is_monochromatic((1, 2, 4), chi)


def test_missing_assignment():
    with pytest.raises(MissingAssignmentError):
        is_monochromatic((1, 2, 3), {1: RED, 2: RED})
    with pytest.raises(MissingAssignmentError):
        validate_coloring([(1, 2, 3)], {1: RED})
    with pytest.raises(MissingAssignmentError):
        validate_coloring([(1, 2, 3)], {1: RED, 2: BLUE})


def test_validate_coloring_lists_violations():
    assert validate_coloring([(1, 2, 3)], {1: BLUE, 2: BLUE, 3: BLUE}) == [(1, 2, 3)]
    h = Hypergraph(3, ((1, 2, 3), (3, 4, 5)))
    assert validate_coloring(h, {1: RED, 2: BLUE, 3: RED, 4: BLUE, 5: RED}) == []


def test_duplicate_edges_count_with_multiplicity():
    h = Hypergraph(3, ((1, 2, 3), (1, 2, 3)))
    assert validate_coloring(h, dict.fromkeys(range(1, 4), RED)) == [(1, 2, 3)] * 2


def test_fano_every_coloring_fails():
    h = fano_plane()
    for colors in product((RED, BLUE), repeat=7):
        chi = dict(zip(range(1, 8), colors))
        assert validate_coloring(h, chi)


def test_hypergraph_rejects_bad_edges():
    with pytest.raises(ValueError):
        Hypergraph(3, ((1, 2),))
    with pytest.raises(ValueError):
        Hypergraph(3, ((1, 1, 2),))
    with pytest.raises(ValueError):
        Hypergraph(3, ((1, 2, 9),), universe=5)


def test_universe_counts_isolated_vertices():
    h = Hypergraph(3, ((1, 2, 3),), universe=6)
    assert h.v == 6 and h.q == 1


def test_brute_force_fano_and_fano_minus_edge():
    assert brute_force_two_colorable(fano_plane()) is None
    lines = fano_plane().edges
    for i in range(7):
        h = Hypergraph(3, lines[:i] + lines[i + 1:])
        chi = brute_force_two_colorable(h)
        assert chi is not None and validate_coloring(h, chi) == []


def test_brute_force_empty_and_guard():
    assert brute_force_two_colorable(Hypergraph(3, (), universe=4)) == dict.fromkeys(range(1, 5), RED)
    with pytest.raises(InstanceTooLargeError):
        brute_force_two_colorable(Hypergraph(3, ((1, 2, 3),), universe=31))


def test_brute_force_complete_graphs():
    # a 2+2 split bichromates every triple of 4 points; 5 points force a class of size 3
    k4 = Hypergraph(3, tuple(combinations(range(1, 5), 3)))
    assert brute_force_two_colorable(k4) is not None
    k5 = Hypergraph(3, tuple(combinations(range(1, 6), 3)))
    assert brute_force_two_colorable(k5) is None


@pytest.mark.parametrize("r, v, n, expected", [(2, 4, 3, 0), (3, 6, 3, 2), (6, 6, 3, 20)])
def test_shadow_size_examples(r, v, n, expected):
    assert shadow_size(r, v, n) == expected


def test_shadow_size_matches_enumeration():
    for v in range(1, 13):
        for n in range(1, 6):
            subsets = list(combinations(range(v), n))
            for r in range(v + 1):
                count = sum(1 for s in subsets if all(x < r for x in s) or all(x >= r for x in s))
                assert shadow_size(r, v, n) == count


def test_max_edge_intersections():
    assert max_edge_intersections([(1, 2, 3)]) == 0
    assert max_edge_intersections([(1, 2, 3), (4, 5, 6)]) == 0
    assert max_edge_intersections([(1, 2, 3), (1, 4, 5), (1, 6, 7)]) == 2
    assert max_edge_intersections([(1, 2, 3), (3, 2, 1)]) == 1


edges_strategy = st.integers(3, 4).flatmap(
    lambda n: st.tuples(
        st.just(n),
        st.lists(st.lists(st.integers(1, 9), min_size=n, max_size=n, unique=True), max_size=12),
    ))


@settings(max_examples=60, deadline=None)
@given(edges_strategy, st.integers(0, 2 ** 9 - 1))
def test_validate_iff_no_mono_edge(data, mask):
    n, edges = data
    chi = {u: (mask >> (u - 1)) & 1 for u in range(1, 10)}
    bad = validate_coloring(edges, chi)
    assert (bad == []) == all(not is_monochromatic(e, chi) for e in edges)


@settings(max_examples=60, deadline=None)
@given(edges_strategy)
def test_oracle_coloring_is_valid(data):
    n, edges = data
    h = Hypergraph(n, tuple(tuple(e) for e in edges))
    chi = brute_force_two_colorable(h)
    if chi is not None:
        assert validate_coloring(h, chi) == []
    else:
        # cross-check the negative answer by plain enumeration
        verts = sorted(h.vertices)
        for colors in product((RED, BLUE), repeat=len(verts)):
            assert validate_coloring(h, dict(zip(verts, colors)))


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 5).flatmap(lambda n: st.tuples(
    st.just(n),
    st.lists(st.lists(st.integers(1, 2 * n - 2), min_size=n, max_size=n, unique=True), max_size=30))))
def test_few_vertices_always_two_colorable(data):
    n, edges = data
    h = Hypergraph(n, tuple(tuple(e) for e in edges), universe=2 * n - 2)
    assert brute_force_two_colorable(h) is not None
