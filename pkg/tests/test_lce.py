import itertools
import random

import numpy as np
import pytest

from mfaregex.lce import LceIndex, RangeMinQuery, build, lcp_array, suffix_array


def naive_lce(word, i, j):
    length = 0
    while i + length < len(word) and j + length < len(word) and word[i + length] == word[j + length]:
        length += 1
    return length


class TestSuffixArray(object):

    @pytest.mark.parametrize('word', ['banana', 'mississippi', 'aaaa', 'a', 'abcab'])
    def test_sorted_suffixes(self, word):
        codes = np.array([ord(c) for c in word])
        sa, rank = suffix_array(codes)
        assert [word[i:] for i in sa] == sorted(word[i:] for i in range(len(word)))
        assert all(rank[sa[r]] == r for r in range(len(word)))

    def test_lcp(self):
        word = 'banana'
        codes = np.array([ord(c) for c in word])
        sa, rank = suffix_array(codes)
        assert lcp_array(codes, sa, rank).tolist() == [0, 1, 3, 0, 0, 2]

    def test_empty(self):
        sa, rank = suffix_array(np.array([], dtype=np.int64))
        assert len(sa) == 0 and len(rank) == 0


class TestRangeMinQuery(object):

    def test_all_ranges(self):
        data = [5, 2, 7, 1, 9, 3, 3, 8]
        rmq = RangeMinQuery(data)
        for start in range(len(data)):
            for stop in range(start + 1, len(data) + 1):
                assert rmq(start, stop) == min(data[start:stop])


class TestLceIndex(object):

    @pytest.mark.parametrize('i, j, expected', [
        (0, 0, 8),
        (0, 3, 5),
        (1, 4, 4),
        (0, 1, 0),
        (8, 0, 0),
        (3, 8, 0),
    ])
    def test_lce(self, i, j, expected):
        assert build('abaabaab').lce(i, j) == expected

    @pytest.mark.parametrize('seed', range(5))
    def test_random_words(self, seed):
        rng = random.Random(seed)
        word = ''.join(rng.choice('ab') for _ in range(30))
        index = LceIndex(word)
        for i, j in itertools.product(range(len(word) + 1), repeat=2):
            assert index.lce(i, j) == naive_lce(word, i, j)

    @pytest.mark.parametrize('span, at, expected', [
        ((0, 3), 3, True),
        ((0, 3), 6, False),
        ((0, 0), 8, True),
        ((2, 4), 5, True),
        ((0, 4), 5, False),
    ])
    def test_is_prefix(self, span, at, expected):
        assert build('abaabaab').is_prefix(span, at) is expected

    def test_tokens(self):
        index = LceIndex(('[add]', 'x', ';', '[add]', 'x', ';'))
        assert index.lce(0, 3) == 3
        assert index.is_prefix((0, 2), 3)

    @pytest.mark.parametrize('call', [
        lambda index: index.lce(-1, 0),
        lambda index: index.lce(0, 9),
        lambda index: index.is_prefix((3, 2), 0),
    ])
    def test_out_of_range(self, call):
        with pytest.raises(IndexError):
            call(build('abaabaab'))
