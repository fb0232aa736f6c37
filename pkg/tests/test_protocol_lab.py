import math
from itertools import combinations

import pytest

from hgstream.core import RED, InstanceTooLargeError, shadow_size, validate_coloring
from hgstream.protocol_lab import (ListCollection, alice_message, all_edges, bob_answer,
                                   enumerate_inputs, gen_list_collection, lemma_parameters,
                                   message_bits, run_protocol, split_coloring, verify_goodness)

V, N = 6, 3
ALL_RED = split_coloring(V, range(1, V + 1))
# the ten 3-3 splits of [6], named by the Red half containing vertex 1
SPLITS = [split_coloring(V, (1,) + rest) for rest in combinations(range(2, 7), 2)]


def _hand_good_collection(q_cap):
    # each triple is monochromatic under exactly one split; three disjoint
    # groups of three splits survive any two edges on both sides
    lists = tuple(tuple(SPLITS[3 * i:3 * i + 3]) for i in range(3))
    return ListCollection(V, N, q_cap, lists)


def test_generator_shape_and_replay():
    c = gen_list_collection(V, N, 1, 8, 16, seed=42)
    assert c.r == 8 and c.k == 16
    assert all(set(chi) == set(range(1, V + 1)) for lst in c.lists for chi in lst)
    assert gen_list_collection(V, N, 1, 8, 16, seed=42) == c
    one = gen_list_collection(V, N, 1, 1, 1, seed=0)
    assert one.r == 1 and one.k == 1
    with pytest.raises(ValueError):
        gen_list_collection(V, N, 1, 0, 1, seed=0)


def test_generator_red_frequency():
    c = gen_list_collection(V, N, 1, 8, 16, seed=7)
    m = c.r * c.k
    for u in range(1, V + 1):
        reds = sum(chi[u] == RED for lst in c.lists for chi in lst)
        assert abs(reds - m / 2) <= 4 * math.sqrt(m / 4)


def test_lemma_parameters():
    assert lemma_parameters(64, 4) == (16, 144)
    assert lemma_parameters(6, 3)[0] == 8


def test_alice_examples():
    c = ListCollection(V, N, 1, ((ALL_RED,), (SPLITS[0],)))
    assert alice_message([], c) == 0
    assert alice_message([(1, 4, 5)], c) == 1
    assert alice_message([(1, 2, 3)], c) is None
    assert message_bits(c) == 1


def test_bob_examples():
    assert bob_answer([], [SPLITS[0], ALL_RED]) == SPLITS[0]
    assert bob_answer([(1, 2, 3)], [ALL_RED]) is None
    assert bob_answer([(1, 2, 3)], [ALL_RED, SPLITS[5]]) == SPLITS[5]


def test_goodness_examples():
    both = ListCollection(V, N, 1, tuple((ALL_RED, s) for s in SPLITS))
    # one split leaves its own two monochromatic triples uncovered
    assert verify_goodness(both)[1] is False
    pairs = ListCollection(V, N, 1, ((ALL_RED, SPLITS[0], SPLITS[1]),))
    assert verify_goodness(pairs)[1] is True
    for q_cap in (1, 2):
        assert verify_goodness(ListCollection(V, N, q_cap, ((ALL_RED,),))) == (False, False)


def test_guard():
    with pytest.raises(InstanceTooLargeError):
        verify_goodness(gen_list_collection(7, 3, 1, 1, 1, 0))
    with pytest.raises(InstanceTooLargeError):
        verify_goodness(gen_list_collection(6, 3, 3, 1, 1, 0))


def _good_oracle(c):
    """Literal restatement over input tuples, using the validator."""
    inputs = list(enumerate_inputs(c.v, c.n, c.q_cap))
    bob = all(any(not validate_coloring(h, chi) for chi in lst) for h in inputs for lst in c.lists)
    alice = all(any(all(not validate_coloring(h, chi) for chi in lst) for lst in c.lists)
                for h in inputs)
    return alice, bob


def test_goodness_matches_oracle():
    for seed in range(15):
        c = gen_list_collection(V, N, 1 + seed % 2, 3, 4, seed)
        assert verify_goodness(c) == _good_oracle(c)


@pytest.mark.parametrize("q_cap", [1, 2])
def test_hand_built_collection_round_trip(q_cap):
    c = _hand_good_collection(q_cap)
    assert verify_goodness(c) == (True, True)
    inputs = [h for q in range(q_cap + 1) for h in enumerate_inputs(V, N, q)]
    for h_a in inputs:
        assert alice_message(h_a, c) is not None
        for h_b in inputs:
            chi = run_protocol(h_a, h_b, c)
            assert chi is not None
            assert not validate_coloring(list(h_a) + list(h_b), chi)


def test_shadow_consistency():
    c = gen_list_collection(V, N, 1, 4, 4, seed=3)
    edges = all_edges(V, N)
    for lst in c.lists:
        for chi in lst:
            reds = sum(x == RED for x in chi.values())
            assert len(validate_coloring(edges, chi)) == shadow_size(reds, V, N)
