import random

import pytest
from hypothesis import given, settings, strategies as st

from orsti.lz import (LZParse, Lz77Index, ScqIndex, build_lz77_index, build_scq_index, deserialize_parse, ilcp,
                      lz_conditional, lz_decompress, lz_parse, primary_occurrences, scq, serialize_parse)
from oracles import greedy_lz, naive_lcp, occurrences, phrase_ends


def test_parse_examples():
    assert lz_parse("a").phrases == [(0, 0, ord("a"))]
    assert lz_parse("aaaa").phrases == [(0, 0, ord("a")), (1, 3, None)]
    assert lz_parse("abab").phrases == [(0, 0, ord("a")), (0, 0, ord("b")), (2, 2, None)]
    assert lz_parse("").phrases == []


def test_conditional_examples():
    p = lz_conditional("ab", "ab")
    assert len(p) == 1 and p.phrases[0][1] == 2
    assert lz_decompress(p, context=b"ab") == b"ab"
    assert lz_conditional("abba", "").phrases == lz_parse("abba").phrases
    s = "abcabd"
    assert len(lz_conditional(s, s)) == 1


def test_ilcp_figure():
    idx = build_scq_index("abaabaabaaba")
    assert ilcp(idx, 8, 4, 7) == (5, 5)
    for l in range(1, 13):
        assert ilcp(idx, 1, l, l)[0] == l


def test_scq_trivia():
    s = "abaabaabaaba"
    idx = build_scq_index(s)
    assert scq(idx, 1, len(s)).phrases == lz_parse(s).phrases
    for i in range(1, len(s) + 1):
        assert scq(idx, i, i).phrases == [(0, 0, ord(s[i - 1]))]
    with pytest.raises(ValueError):
        scq(idx, 3, 2)


def rand_text(rng, n, alpha=b"ab"):
    return bytes(rng.choice(alpha) for _ in range(n))


def test_parse_matches_greedy_oracle():
    rng = random.Random(1)
    for _ in range(300):
        s = rand_text(rng, rng.randint(1, 60), b"abc"[: rng.randint(1, 3)])
        assert lz_parse(s).phrases == greedy_lz(s)


def test_conditional_matches_oracle():
    rng = random.Random(2)
    for _ in range(200):
        s = rand_text(rng, rng.randint(1, 30))
        t = rand_text(rng, rng.randint(1, 30))
        p = lz_conditional(s, t)
        assert p.phrases == greedy_lz(s, t)
        assert lz_decompress(p, context=t) == s


def test_scq_all_substrings():
    rng = random.Random(3)
    for _ in range(10):
        s = rand_text(rng, rng.randint(1, 40), b"abc")
        idx = ScqIndex(s)
        for i in range(1, len(s) + 1):
            for j in range(i, len(s) + 1):
                assert idx.scq(i, j).phrases == greedy_lz(s[i - 1:j])


def test_ilcp_oracle():
    rng = random.Random(4)
    for _ in range(100):
        s = rand_text(rng, rng.randint(1, 40))
        idx = ScqIndex(s)
        n = len(s)
        for _ in range(20):
            k = rng.randint(1, n)
            l = rng.randint(1, n)
            r = rng.randint(l, n)
            t, length = idx.ilcp(k, l, r)
            assert l <= t <= r
            assert length == naive_lcp(s[k - 1:], s[t - 1:])
            assert length == max(naive_lcp(s[k - 1:], s[u - 1:]) for u in range(l, r + 1))


def test_round_trip_many():
    rng = random.Random(5)
    for _ in range(1000):
        s = rand_text(rng, rng.randint(1, 50), b"abcd"[: rng.randint(1, 4)])
        p = lz_parse(s)
        assert lz_decompress(p) == s
        assert deserialize_parse(serialize_parse(p), len(s)).phrases == p.phrases


def test_serialization_layout():
    p = LZParse([(0, 0, 97), (1, 3, None)], 4)
    raw = serialize_parse(p)
    assert raw == bytes([0, 0, 0, 0, 0, 0, 0, 0, 1, 97, 1, 0, 0, 0, 3, 0, 0, 0, 0, 0])
    with pytest.raises(ValueError):
        deserialize_parse(raw[:-1])


def test_decompress_rejects_garbage():
    with pytest.raises(ValueError):
        lz_decompress(LZParse([(3, 2, 97)]))
    with pytest.raises(ValueError):
        lz_decompress(LZParse([(0, 0, None), (0, 0, 97)]))
    with pytest.raises(ValueError):
        lz_decompress(LZParse([(0, 0, 97)], 5))


def classify_primary(s, q):
    ends = set(phrase_ends(greedy_lz(s)))
    m = len(q)
    return [p for p in occurrences(s, q) if any(p <= e <= p + m - 1 for e in ends)]


def test_primary_occurrences_random():
    rng = random.Random(6)
    for _ in range(150):
        s = rand_text(rng, rng.randint(1, 40), b"abc"[: rng.randint(1, 3)])
        idx = Lz77Index(s)
        for _ in range(10):
            i = rng.randint(0, len(s) - 1)
            q = s[i:i + rng.randint(1, 5)]
            assert idx.primary_occurrences(q) == classify_primary(s, q)
            assert idx.all_occurrences(q) == occurrences(s, q)
        assert primary_occurrences(idx, b"z") == []


def test_inner_copy_is_not_primary():
    s = b"abcdefabcdef"
    idx = build_lz77_index(s)
    # the second "bcd" lies strictly inside the copy phrase (6, 6, None)
    assert idx.primary_occurrences(b"bcd") == [2]
    assert idx.all_occurrences(b"bcd") == [2, 8]


def test_first_occurrence_is_primary():
    rng = random.Random(7)
    for _ in range(20):
        s = rand_text(rng, rng.randint(1, 30), b"abc")
        idx = Lz77Index(s)
        for i in range(len(s)):
            for j in range(i + 1, len(s) + 1):
                q = s[i:j]
                prim = idx.primary_occurrences(q)
                assert prim and prim[0] == s.find(q) + 1


text_st = st.binary(min_size=1, max_size=40).map(lambda b: bytes(97 + x % 3 for x in b))


@settings(max_examples=150, deadline=None)
@given(text_st)
def test_parse_property(s):
    p = lz_parse(s)
    assert p.phrases == greedy_lz(s)
    assert lz_decompress(p) == s
    starts = p.starts()
    assert starts[0] == 1 and starts[-1] == len(s) + 1
