"""Helper methods"""

from __future__ import absolute_import

import logging
import time
from contextlib import contextmanager


def as_word(word):
    """
    Normalise a word to an indexable, hashable sequence.

    Strings stay strings, every other iterable becomes a tuple of symbols.

    :param word: A string or an iterable of symbols
    :rtype: str or tuple
    """
    if isinstance(word, (str, tuple)):
        return word
    return tuple(word)


def read_word(value, from_file=False, tokens=False):
    """
    Read an input word given on the commandline.

    :param str value: The literal word, or a path if ``from_file`` is set
    :param bool from_file: Interpret ``value`` as a file name; the file content is used as is
    :param bool tokens: Split the word on whitespace into multi-character tokens
    :rtype: str or tuple
    """
    if from_file:
        with open(value, 'rb') as f:
            value = f.read().decode('latin-1')
    if tokens:
        return tuple(value.split())
    return value


def format_word(word):
    """Render a word for output; token words are joined by blanks."""
    if isinstance(word, str):
        return word
    if all(isinstance(symbol, str) and len(symbol) == 1 for symbol in word):
        return ''.join(word)
    return ' '.join(str(symbol) for symbol in word)


@contextmanager
def timed(description):
    """
    Log the wall time of a block at info level.

    :param str description: What the block does
    """
    start_time = time.time()
    yield
    logging.info('{} took {:.2f}s'.format(description, time.time() - start_time))
