import io
from itertools import combinations
from math import comb, sqrt

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

from hgstream.core import ParameterDomainError
from hgstream.stream_io import (EdgeStreamHeader, StreamFormatError, dump_stream,
                                erdos_parameters, gen_bounded_intersection, gen_erdos,
                                gen_uniform_random, parse_stream, read_stream, write_stream)


def test_parse_single_edge():
    header, edges = parse_stream(b"HGS1 n=3\n1 2 3\n")
    assert header == EdgeStreamHeader(3)
    assert list(edges) == [(1, 2, 3)]


def test_parse_accepts_text_and_file_objects():
    _, edges = parse_stream(io.StringIO("HGS1 n=3 v=5 q=1\n1 2 5\n"))
    assert list(edges) == [(1, 2, 5)]


@pytest.mark.parametrize("text, fragment", [
    ("HGS1 n=3\n1 2\n", "expected 3"),
    ("HGS1 n=3 v=4\n1 2 5\n", "outside universe"),
    ("HGS1 n=3\n1 2 2\n", "duplicate"),
    ("HGS1 n=3\n1 2 x\n", "non-integer"),
    ("HGS1 n=3 q=2\n1 2 3\n", "declares q=2"),
])
def test_parse_errors(text, fragment):
    _, edges = parse_stream(text)
    with pytest.raises(StreamFormatError, match=fragment):
        list(edges)


@pytest.mark.parametrize("text", ["", "HGS2 n=3\n", "HGS1\n", "HGS1 n=2\n", "HGS1 n=3 w=4\n",
                                  "HGS1 n=5 v=4\n", "HGS1 n=3 n=4\n"])
def test_malformed_headers(text):
    with pytest.raises(StreamFormatError):
        parse_stream(text)


def test_parse_is_lazy():
    def lines():
        yield "HGS1 n=3\n"
        yield "1 2 3\n"
        raise AssertionError("read past the first edge")

    _, edges = parse_stream(lines())
    assert next(edges) == (1, 2, 3)


def test_write_examples():
    assert write_stream(EdgeStreamHeader(3), [(1, 2, 3)]) == b"HGS1 n=3\n1 2 3\n"
    assert write_stream(EdgeStreamHeader(3), []) == b"HGS1 n=3\n"
    with pytest.raises(ValueError):
        write_stream(EdgeStreamHeader(3), [(1, 2, 3, 4)])


@settings(max_examples=50, deadline=None)
@given(st.integers(3, 6), st.integers(0, 40), st.integers(0, 2 ** 64 - 1))
def test_round_trip(n, q, seed):
    edges = gen_uniform_random(2 * n + 3, n, q, seed)
    header = EdgeStreamHeader(n, 2 * n + 3, q)
    h2, e2 = parse_stream(write_stream(header, edges))
    assert h2 == header and list(e2) == edges


def test_dump_and_read_file(tmp_path):
    path = tmp_path / "x.hgs"
    edges = gen_uniform_random(10, 3, 25, 4)
    with open(path, "w") as fp:
        assert dump_stream(fp, EdgeStreamHeader(3, 10, 25), edges) == 25
    header, back = read_stream(path)
    assert header.v == 10 and back == edges


def test_uniform_generator_edge_cases():
    assert gen_uniform_random(10, 3, 0, 1) == []
    assert set(gen_uniform_random(5, 5, 20, 1)) == {(1, 2, 3, 4, 5)}
    with pytest.raises(ParameterDomainError):
        gen_uniform_random(2, 3, 1, 1)
    assert gen_uniform_random(30, 4, 50, 9) == gen_uniform_random(30, 4, 50, 9)


def test_uniform_generator_frequencies():
    v, n, q = 20, 3, 10_000
    edges = gen_uniform_random(v, n, q, 2024)
    counts = {}
    for e in edges:
        assert len(set(e)) == n and all(1 <= u <= v for u in e)
        counts[e] = counts.get(e, 0) + 1
    cells = comb(v, n)
    p = 1 / cells
    sigma = sqrt(q * p * (1 - p))
    for fixed in [(1, 2, 3), (18, 19, 20), (5, 10, 15), (1, 10, 20)]:
        assert abs(counts.get(fixed, 0) - q * p) <= 4 * sigma
    observed = [counts.get(e, 0) for e in combinations(range(1, v + 1), n)]
    chi2 = stats.chisquare(observed)
    assert chi2.pvalue > 1e-4


def test_erdos_parameters():
    big_n, q = erdos_parameters(8, 2)
    assert big_n == 32
    assert q == 310023  # ceil(8192 e^4 ln 2)
    assert abs(q - 3.10e5) / 3.10e5 < 0.01
    with pytest.raises(ParameterDomainError):
        erdos_parameters(8, 4.5)  # above 64/15
    with pytest.raises(ParameterDomainError):
        erdos_parameters(8, 4)  # n - 2t = 0


def test_erdos_seeds():
    small_a = gen_erdos(6, 1.5, 1)
    small_b = gen_erdos(6, 1.5, 2)
    assert small_a[1:] == small_b[1:]
    assert sorted(small_a[0]) != sorted(small_b[0])
    assert len(small_a[0]) == small_a[2]


def test_bounded_intersection_generator_respects_limit():
    from hgstream.core import max_edge_intersections
    edges = gen_bounded_intersection(64, 8, 45, 80, 3)
    assert max_edge_intersections(edges) <= 45
    assert len(edges) >= 40
