"""Reference semantics: ref-word dereference, a memoised environment matcher and language enumeration"""

from __future__ import absolute_import

import itertools
import logging
from dataclasses import dataclass

from tqdm import tqdm

from mfaregex.config import config
from mfaregex.exceptions import BudgetExceeded, MalformedRefWord
from mfaregex.syntax import Alt, Concat, Epsilon, Literal, Plus, Recall, VarDef
from mfaregex.utils import as_word


@dataclass(frozen=True)
class RefOpen(object):
    """Opening bracket of a variable in a ref-word."""

    name: str


@dataclass(frozen=True)
class RefClose(object):
    """Closing bracket of a variable in a ref-word."""

    name: str


@dataclass(frozen=True)
class RefVar(object):
    """Occurrence of a variable in a ref-word."""

    name: str


def dereference(refword):
    """
    Replace every variable of a ref-word by the content of the nearest closed bracket pair to its left.

    :param refword: A sequence of terminal symbols, :class:`RefOpen`, :class:`RefClose` and :class:`RefVar`
    :raises MalformedRefWord: If brackets do not pair up or a variable is used inside its own brackets
    :return: The dereferenced word as a tuple of symbols
    :rtype: tuple
    """
    output = []
    opened = {}
    bindings = {}
    for item in refword:
        if isinstance(item, RefOpen):
            if item.name in opened:
                raise MalformedRefWord('Bracket of "{}" opened twice'.format(item.name))
            opened[item.name] = len(output)
        elif isinstance(item, RefClose):
            if item.name not in opened:
                raise MalformedRefWord('Bracket of "{}" closed without being opened'.format(item.name))
            bindings[item.name] = tuple(output[opened.pop(item.name):])
        elif isinstance(item, RefVar):
            if item.name in opened:
                raise MalformedRefWord('Variable "{}" used inside its own brackets'.format(item.name))
            output.extend(bindings.get(item.name, ()))
        else:
            output.append(item)
    if opened:
        raise MalformedRefWord('Unclosed brackets: {}'.format(', '.join(sorted(opened))))
    return tuple(output)


class EnvironmentMatcher(object):
    """
    Top-down matcher over (node, position, environment) triples.

    An environment maps every variable index to ``None`` (undefined) or a ``(start, end)`` span of the word.
    """

    def __init__(self, ast, word, budget=None):
        self.ast = ast
        self.word = as_word(word)
        self.budget = config.get('budget', budget)
        self.visits = 0
        self._memo = {}
        self._children = ast.children

    def match(self):
        empty = (None,) * len(self.ast.variables)
        end = len(self.word)
        return any(pos == end for pos, _ in self.run(0, 0, empty))

    def run(self, i, pos, env):
        """
        Return all (position, environment) pairs reachable by matching node ``i`` from ``pos`` in ``env``.

        :rtype: frozenset
        """
        key = (i, pos, env)
        result = self._memo.get(key)
        if result is not None:
            return result
        self.visits += 1
        if self.visits > self.budget:
            logging.info('Oracle stopped after %d node visits', self.visits)
            raise BudgetExceeded('Oracle exceeded its budget of {} node visits'.format(self.budget))

        node = self.ast.nodes[i]
        word = self.word
        if isinstance(node, Literal):
            result = {(pos + 1, env)} if pos < len(word) and word[pos] == node.symbol else set()
        elif isinstance(node, Epsilon):
            result = {(pos, env)}
        elif isinstance(node, Recall):
            span = env[self.ast.memory_of(node.name) - 1]
            if span is None:
                result = {(pos, env)}
            else:
                length = span[1] - span[0]
                result = {(pos + length, env)} if word[pos:pos + length] == word[span[0]:span[1]] else set()
        elif isinstance(node, Concat):
            left, right = self._children[i]
            result = set()
            for middle, middle_env in self.run(left, pos, env):
                result.update(self.run(right, middle, middle_env))
        elif isinstance(node, Alt):
            left, right = self._children[i]
            result = set(self.run(left, pos, env)) | self.run(right, pos, env)
        elif isinstance(node, Plus):
            child = self._children[i][0]
            result = set(self.run(child, pos, env))
            todo = list(result)
            while todo:
                for reached in self.run(child, *todo.pop()):
                    if reached not in result:
                        result.add(reached)
                        todo.append(reached)
        elif isinstance(node, VarDef):
            child = self._children[i][0]
            slot = self.ast.memory_of(node.name) - 1
            result = set()
            for end, child_env in self.run(child, pos, env):
                bound = list(child_env)
                bound[slot] = (pos, end)
                result.add((end, tuple(bound)))
        else:
            raise TypeError('Unknown node {!r}'.format(node))

        result = frozenset(result)
        self._memo[key] = result
        return result


def oracle_match(ast, word, budget=None):
    """
    Decide membership of a word in the language of a pattern by brute force.

    :param mfaregex.syntax.RegexAst ast: The pattern
    :param word: A string or a sequence of symbols
    :param int budget: Maximum number of memoised node visits
    :raises BudgetExceeded: If the budget is exhausted
    :rtype: bool
    """
    return EnvironmentMatcher(ast, word, budget).match()


def enumerate_language(ast, maxlen, alphabet, budget=None, verbose=False):
    """
    Return every word of the pattern's language up to a length over a given alphabet.

    Words over single character symbols are returned as strings, other words as tuples.

    :param mfaregex.syntax.RegexAst ast: The pattern
    :param int maxlen: Maximum word length
    :param alphabet: The symbols to build words from
    :param int budget: Maximum number of candidate words
    :param bool verbose: Display a progress bar
    :raises BudgetExceeded: If more candidates than the budget would be checked
    :rtype: set
    """
    symbols = sorted(set(alphabet), key=repr)
    total = sum(len(symbols) ** length for length in range(maxlen + 1))
    budget = config.get('enumeration_budget', budget)
    if total > budget:
        raise BudgetExceeded('Enumeration needs {} candidates, budget is {}'.format(total, budget))
    as_text = all(isinstance(symbol, str) and len(symbol) == 1 for symbol in symbols)
    language = set()
    candidates = itertools.chain.from_iterable(
        itertools.product(symbols, repeat=length) for length in range(maxlen + 1))
    for candidate in tqdm(candidates, total=total, disable=not verbose):
        if oracle_match(ast, candidate):
            language.add(''.join(candidate) if as_text else candidate)
    logging.info('Enumerated %d of %d candidate words', len(language), total)
    return language
