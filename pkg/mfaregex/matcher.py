"""Linear time matching for synchronised memory automata"""

from __future__ import absolute_import

import logging

from mfaregex.contracted import apply_status_update, build_contracted_tables
from mfaregex.lce import LceIndex
from mfaregex.mfa import CHAR, CLOSED, OPEN, OPENED, Label
from mfaregex.utils import as_word


def sync_match(mfa, tables=None, index=None, word=None):
    """
    Decide acceptance for a synchronised automaton by following all contracted computations in lockstep.

    Tracks one set of active states together with a single memory content/status vector and the input
    position. The result is only meaningful for synchronised automata; on other automata it still terminates.

    :param mfaregex.mfa.Mfa mfa: The automaton
    :param mfaregex.contracted.ContractedTables tables: Its contracted tables, built if omitted
    :param mfaregex.lce.LceIndex index: The LCE index of the word, built if omitted
    :param word: The word, optional when ``index`` is given
    :rtype: bool
    """
    if tables is None:
        tables = build_contracted_tables(mfa)
    if index is None:
        index = LceIndex(word)
    elif word is not None and as_word(word) != index.word:
        raise ValueError('The LCE index was built for another word')
    word = index.word
    n = len(word)
    k = mfa.memory_count

    finishing = frozenset(q for q in mfa.states if any(mfa.is_accepting(p) for p in tables.closure[q]))
    recalls = [Label.recall(i + 1) for i in range(k)]
    active = {mfa.initial}
    contents = [(0, 0)] * k
    statuses = (CLOSED,) * k
    pos = 0
    stall = 0
    iterations = 0

    if n == 0 and mfa.initial in finishing:
        return True
    while stall <= mfa.state_count:
        iterations += 1
        labels = recalls + [Label.char(word[pos])] if pos < n else recalls
        moves = []
        for q in sorted(active):
            for x in labels:
                if not tables.delta_contr(q, x):
                    continue
                length = 1 if x.kind == CHAR else _recall_length(tables, index, q, x, statuses, contents, pos)
                if length is not None:
                    moves.append((q, x, length))
        if not moves:
            logging.debug('No contracted transition applicable at position %d', pos)
            return False
        q, x, length = moves[0]
        stall = stall + 1 if length == 0 else 0

        for slot in tables.resets(q, x):
            contents[slot] = (pos, pos)
        statuses = apply_status_update(statuses, tables.instructions(q, x))
        for slot in range(k):
            if statuses[slot] == OPENED:
                start, end = contents[slot]
                contents[slot] = (start, end + length)
        pos += length

        active = set().union(*[tables.delta_contr(source, label) for source, label, _ in moves])
        if pos == n and not active.isdisjoint(finishing):
            logging.debug('Accepted after %d iterations', iterations)
            return True
    logging.debug('Stall bound reached after %d iterations', iterations)
    return False


def _recall_length(tables, index, q, label, statuses, contents, pos):
    """Length of the factor recalled by the contracted ``label``-transition from ``q``, ``None`` if inapplicable."""
    slot = label.memory - 1
    instruction = tables.instructions(q, label)[slot]
    if instruction == OPEN or (instruction is None and statuses[slot] == OPENED):
        return None
    span = (pos, pos) if slot in tables.resets(q, label) else contents[slot]
    if not index.is_prefix(span, pos):
        return None
    return span[1] - span[0]
