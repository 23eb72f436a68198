"""Longest common extension queries over a fixed word"""

from __future__ import absolute_import

import numpy as np

from mfaregex.utils import as_word


def _ilog2(value):
    """Integral part of the base-2 logarithm of a positive integer."""
    return value.bit_length() - 1


def suffix_array(codes):
    """
    Sort the suffixes of an integer sequence by prefix doubling.

    :param numpy.ndarray codes: Symbol codes, any order of codes is fine
    :return: The suffix array and the rank of every suffix
    :rtype: tuple
    """
    n = len(codes)
    if n == 0:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    rank = codes.astype(np.int64)
    k = 1
    while True:
        second = np.full(n, -1, dtype=np.int64)
        second[:max(n - k, 0)] = rank[k:]
        order = np.lexsort((second, rank))
        changed = (np.diff(rank[order]) != 0) | (np.diff(second[order]) != 0)
        rank = np.empty(n, dtype=np.int64)
        rank[order] = np.concatenate(([0], np.cumsum(changed)))
        if rank[order[-1]] == n - 1 or k >= n:
            return order, rank
        k *= 2


def lcp_array(codes, sa, rank):
    """
    Kasai's algorithm; entry ``r`` is the common prefix length of the suffixes of rank ``r - 1`` and ``r``.

    :rtype: numpy.ndarray
    """
    n = len(sa)
    seq = codes.tolist()
    sa = sa.tolist()
    rank = rank.tolist()
    lcp = [0] * n
    k = 0
    for i in range(n):
        r = rank[i]
        if r == 0:
            k = 0
            continue
        j = sa[r - 1]
        while i + k < n and j + k < n and seq[i + k] == seq[j + k]:
            k += 1
        lcp[r] = k
        if k:
            k -= 1
    return np.array(lcp, dtype=np.int64)


class RangeMinQuery(object):
    """Constant time range-minimum queries using a sparse table."""

    def __init__(self, data):
        self.levels = [np.asarray(data, dtype=np.int64)]
        length = len(data)
        for depth in range(1, _ilog2(length) + 1 if length else 0):
            half = 2 ** (depth - 1)
            previous = self.levels[-1]
            self.levels.append(np.minimum(previous[:-half], previous[half:]))

    def __call__(self, start, stop):
        """
        Find the minimum value of ``data[start:stop]``; the range must not be empty.
        """
        depth = _ilog2(stop - start)
        level = self.levels[depth]
        return int(min(level[start], level[stop - 2 ** depth]))


class LceIndex(object):
    """
    Longest common extension index over a word.

    Positions are 0-based: ``lce(i, j)`` is the length of the longest common prefix of ``word[i:]`` and
    ``word[j:]``, for ``0 <= i, j <= len(word)``.
    """

    def __init__(self, word):
        self.word = as_word(word)
        codes = {}
        encoded = np.array([codes.setdefault(symbol, len(codes)) for symbol in self.word], dtype=np.int64)
        self.sa, self.rank = suffix_array(encoded)
        self._rmq = RangeMinQuery(lcp_array(encoded, self.sa, self.rank))

    def __len__(self):
        return len(self.word)

    def _check(self, position):
        if not 0 <= position <= len(self.word):
            raise IndexError('Position {} is outside of the word of length {}'.format(position, len(self.word)))

    def lce(self, i, j):
        """
        :param int i: First suffix start
        :param int j: Second suffix start
        :rtype: int
        """
        self._check(i)
        self._check(j)
        n = len(self.word)
        if i == j:
            return n - i
        if i == n or j == n:
            return 0
        low, high = sorted((int(self.rank[i]), int(self.rank[j])))
        return self._rmq(low + 1, high + 1)

    def is_prefix(self, span, at):
        """
        Check whether the factor ``word[start:end]`` is a prefix of ``word[at:]``.

        :param tuple span: The factor as ``(start, end)``
        :param int at: Start of the suffix
        :rtype: bool
        """
        start, end = span
        self._check(start)
        self._check(end)
        self._check(at)
        if end < start:
            raise IndexError('Invalid span {}'.format(span))
        length = end - start
        if length == 0:
            return True
        if at + length > len(self.word):
            return False
        return self.lce(start, at) >= length


def build(word):
    """
    Build the index of a word.

    :rtype: LceIndex
    """
    return LceIndex(word)
