import json
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from erasure_lab.code import erasure_radius, ghw_exact
from erasure_lab.erasure import (
    DecodeList,
    ErasurePattern,
    ErasureQuery,
    brute_force_list,
    erase,
    format_decode_request,
    list_decode,
    parse_decode_request,
    query_for,
)
from erasure_lab.errors import DimensionMismatch, FormatError, IndexOutOfRange

from conftest import DATA, random_code


def test_pattern_basics():
    P = ErasurePattern.from_erased(7, [1, 3])
    assert P.kept == (0, 2, 4, 5, 6) and P.erased == (1, 3) and P.s == 2
    assert erase([9, 8, 7, 6, 5, 4, 3], P) == (9, 7, 5, 4, 3)
    with pytest.raises(IndexOutOfRange):
        ErasurePattern(3, (0, 3))
    with pytest.raises(DimensionMismatch):
        erase([1, 2], P)


def test_query_validation():
    with pytest.raises(DimensionMismatch):
        ErasureQuery((0, 1), (1,))
    with pytest.raises(ValueError):
        ErasureQuery((1, 0), (1, 1))
    with pytest.raises(ValueError):
        ErasureQuery((0,), (1,), L=0)


def test_hamming_unique_within_distance(hamming):
    c = hamming.encode([1, 0, 1, 1]).tolist()
    out = list_decode(hamming, query_for(c, ErasurePattern.from_erased(7, [0, 3])), cap=16)
    assert out.codewords == [c] and out.solution_dim == 0 and not out.truncated


def test_hamming_two_candidates():
    # shipped request: kept 0 5 6 with values 1 1 1
    C, q = parse_decode_request((DATA / "decode_hamming74.txt").read_text())
    out = list_decode(C, q, cap=1024)
    assert out.solution_dim == 1 and len(out.codewords) == 2
    assert sorted(out.codewords) == sorted(brute_force_list(C, q))


def test_everything_erased(rs_5_4_2):
    out = list_decode(rs_5_4_2, ErasureQuery((), ()), cap=100)
    assert out.solution_dim == 2 and len(out.codewords) == 25


def test_inconsistent_query(hamming):
    # (1,0,0,0,0,0,0) is not a codeword and nothing is erased
    out = list_decode(hamming, ErasureQuery(tuple(range(7)), (1, 0, 0, 0, 0, 0, 0)), cap=8)
    assert out.codewords == [] and out.solution_dim == 0 and not out.truncated


def test_truncation_keeps_lexicographic_prefix(rs_5_4_2):
    full = list_decode(rs_5_4_2, ErasureQuery((0,), (3,)), cap=100)
    assert full.solution_dim == 1 and len(full.codewords) == 5 and not full.truncated
    part = list_decode(rs_5_4_2, ErasureQuery((0,), (3,)), cap=3)
    assert part.truncated and part.codewords == full.codewords[:3]


def test_cap_must_be_positive(hamming):
    with pytest.raises(ValueError):
        list_decode(hamming, ErasureQuery((), ()), cap=0)


def test_json_output(hamming):
    out = list_decode(hamming, ErasureQuery((0, 5, 6), (1, 1, 1)), cap=1)
    data = json.loads(out.to_json())
    assert data["truncated"] is True and data["solution_dim"] == 1
    assert len(data["codewords"]) == 1
    assert json.loads(DecodeList().to_json()) == {"solution_dim": 0, "truncated": False, "codewords": []}


def test_request_round_trip(hamming):
    q = ErasureQuery((0, 2, 4), (1, 0, 1))
    text = format_decode_request(hamming, q)
    C, q2 = parse_decode_request(text)
    assert C.G == hamming.G and q2 == q


@pytest.mark.parametrize(
    "tail",
    ["kept: 0 1\n", "kept: 0 1\nvalues: 1\n", "kept: 0 9\nvalues: 1 1\n", "kept: 0 1\nvalues: 1 2\n", "junk: 1\n"],
)
def test_request_rejects_bad_input(hamming, tail):
    from erasure_lab.code import format_code

    with pytest.raises(FormatError):
        parse_decode_request(format_code(hamming) + tail)


codes = st.tuples(
    st.sampled_from([2, 3, 4, 5]), st.integers(1, 3), st.integers(0, 4), st.integers(0, 2**32 - 1)
).map(lambda t: random_code(np.random.default_rng(t[3]), t[0], t[1] + t[2], t[1]))


@settings(max_examples=60, deadline=None)
@given(codes, st.data())
def test_decoder_equals_brute_force(C, data):
    msg = data.draw(st.lists(st.integers(0, C.q - 1), min_size=C.k, max_size=C.k))
    c = C.encode(msg).tolist()
    erased = data.draw(st.sets(st.integers(0, C.n - 1)))
    q = query_for(c, ErasurePattern.from_erased(C.n, erased))
    out = list_decode(C, q, cap=C.q**C.k)
    assert not out.truncated
    assert sorted(out.codewords) == sorted(brute_force_list(C, q))
    assert c in out.codewords
    assert len(out.codewords) == C.q**out.solution_dim


@settings(max_examples=40, deadline=None)
@given(codes, st.data())
def test_inconsistent_values_match_brute_force(C, data):
    vals = data.draw(st.lists(st.integers(0, C.q - 1), min_size=C.n, max_size=C.n))
    q = ErasureQuery(tuple(range(C.n)), tuple(vals))
    assert sorted(list_decode(C, q, cap=C.q**C.k).codewords) == sorted(brute_force_list(C, q))


@settings(max_examples=30, deadline=None)
@given(codes, st.sampled_from([1, 2, 3, 9]))
def test_list_size_within_radius(C, L):
    s = erasure_radius(C, L)
    for msg_idx, msg in enumerate(C.messages()):
        if msg_idx > 8:
            break
        c = C.encode(msg).tolist()
        for E in combinations(range(C.n), s):
            out = list_decode(C, query_for(c, ErasurePattern.from_erased(C.n, E)), cap=10**6)
            assert len(out.codewords) <= L


def test_list_grows_past_radius(hamming):
    # at s = d_1 some pattern must leave two codewords for the zero word
    d = ghw_exact(hamming, 1).d_r
    zero = [0] * 7
    sizes = [
        len(list_decode(hamming, query_for(zero, ErasurePattern.from_erased(7, E)), cap=64).codewords)
        for E in combinations(range(7), d)
    ]
    assert max(sizes) == 2
