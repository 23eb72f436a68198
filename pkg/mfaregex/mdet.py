"""Memory determinism: memory synchronised states, non-synchronised branching and a bounded synchronisation check"""

from __future__ import absolute_import

import logging
from collections import deque, namedtuple

from mfaregex.config import config
from mfaregex.contracted import build_contracted_tables
from mfaregex.exceptions import BudgetExceeded
from mfaregex.mfa import CHAR, CLOSE, CLOSED, OPEN, OPENED, RECALL, canonical_mfa
from mfaregex.products import product_search

CONTAINS, OMITS = 'contains', 'omits'

# Last instruction of a close that follows an open on the same non-consuming path: the memory ends up empty
RESET = 'reset'

Branching = namedtuple('Branching', 'q p1 p2 prefix branch word')
"""A non-synchronised branching triple with the labels reaching ``q``, the common labels to ``(p1, p2)`` and
the input word when all of these labels are terminals (``None`` otherwise)."""

SyncViolation = namedtuple('SyncViolation', 'word step first second')
"""Two contracted computations on ``word`` whose configurations differ beyond the state after ``step``
contracted transitions."""


def last_instructions(mfa, source, memory, resets=False):
    """
    Follow all non-consuming paths from a state and record the last instruction on ``memory``.

    This is the product of the non-consuming part of the automaton with the automaton that remembers the last
    open/close of one memory. With ``resets`` a close that follows an open on the path is recorded as ``RESET``.

    :return: A dict mapping every reachable state to the set of possible last instructions (``None`` if untouched)
    :rtype: dict
    """
    reached = {(source, None)}
    stack = [(source, None)]
    while stack:
        state, last = stack.pop()
        for label, target in mfa.out_edges(state):
            if label.is_consuming:
                continue
            successor = (target, _after(last, label, memory, resets))
            if successor not in reached:
                reached.add(successor)
                stack.append(successor)
    result = {}
    for state, last in reached:
        result.setdefault(state, set()).add(last)
    return result


def _after(last, label, memory, resets):
    if not label.is_instruction or label.memory != memory:
        return last
    if resets and label.kind == CLOSE and last in (OPEN, RESET):
        return RESET
    return label.kind


def _holds(lasts, instruction, mode):
    if mode == CONTAINS:
        return instruction.kind in lasts
    return any(last != instruction.kind for last in lasts)


def q1_query(mfa, q, p, instruction, mode):
    """
    Check for a non-consuming path from ``q`` to ``p`` whose reduced instructions contain (or omit) ``instruction``.

    :param mfaregex.mfa.Mfa mfa: The automaton
    :param mfaregex.mfa.Label instruction: An open or close label
    :param str mode: ``'contains'`` or ``'omits'``
    :rtype: bool
    """
    lasts = last_instructions(mfa, q, instruction.memory).get(p)
    return bool(lasts) and _holds(lasts, instruction, mode)


def q2_query(mfa, q, label, instruction, mode):
    """
    Check for a contracted ``label``-transition from ``q`` whose reduced instructions contain (or omit)
    ``instruction``.

    :rtype: bool
    """
    lasts = last_instructions(mfa, q, instruction.memory)
    return any(_holds(values, instruction, mode) for p, values in lasts.items()
               if any(edge == label for edge, _ in mfa.out_edges(p)))


class MemSyncRelation(object):
    """Symmetric relation of memory synchronised states, queried as ``relation(q1, q2)``."""

    def __init__(self, matrix):
        self.matrix = matrix

    def __call__(self, q1, q2):
        return self.matrix[q1][q2]

    def pairs(self):
        """All unordered pairs that are not memory synchronised."""
        return [(q1, q2) for q1, row in enumerate(self.matrix) for q2 in range(q1, len(row)) if not row[q2]]


def _profiles(mfa, tables):
    """Per state, label and memory: the last instructions occurring on contracted transitions."""
    profiles = []
    for q in mfa.states:
        labels = tables.consuming_labels(q)
        profile = {label: [set() for _ in range(mfa.memory_count)] for label in labels}
        for memory in range(1, mfa.memory_count + 1):
            for p, lasts in last_instructions(mfa, q, memory, resets=True).items():
                for label, _ in mfa.out_edges(p):
                    if label in profile:
                        profile[label][memory - 1].update(lasts)
        profiles.append(profile)
    return profiles


def _one_sided(tables, profiles, q1, q2):
    shared = set(profiles[q1]) & set(profiles[q2])
    for label in shared:
        for first, second in zip(profiles[q1][label], profiles[q2][label]):
            for instruction in (OPEN, CLOSE, RESET):
                if instruction in first and second - {instruction}:
                    return False
    for label in tables.consuming_labels(q1):
        if label.kind == RECALL and any(other != label for other in tables.consuming_labels(q2)):
            return False
    return True


def compute_mem_sync(mfa, tables=None):
    """
    Compute which pairs of states are memory synchronised.

    ``q1`` and ``q2`` are memory synchronised if contracted transitions on the same label carry the same reduced
    instructions, with an open followed by a close told apart from a plain close, and if a recall at one of them
    excludes every other consuming label at the other.

    :param mfaregex.mfa.Mfa mfa: The automaton
    :param mfaregex.contracted.ContractedTables tables: Its contracted tables
    :rtype: MemSyncRelation
    """
    tables = tables or build_contracted_tables(mfa)
    profiles = _profiles(mfa, tables)
    n = mfa.state_count
    matrix = [[None] * n for _ in range(n)]
    for q1 in range(n):
        for q2 in range(q1, n):
            synchronised = (_one_sided(tables, profiles, q1, q2) and _one_sided(tables, profiles, q2, q1))
            matrix[q1][q2] = matrix[q2][q1] = synchronised
    return MemSyncRelation(matrix)


def _word_of(labels):
    if all(label.kind == CHAR for label in labels):
        return tuple(label.symbol for label in labels)
    return None


def has_non_sync_branch(mfa, tables=None, memsync=None):
    """
    Search a non-synchronised branching triple ``(q, p1, p2)``: ``p1`` and ``p2`` are not memory synchronised and
    both are reachable from ``q`` by contracted transitions on the same labels.

    :return: The first triple found, or ``None``
    :rtype: Branching or None
    """
    tables = tables or build_contracted_tables(mfa)
    memsync = memsync or compute_mem_sync(mfa, tables)

    def contracted(state):
        return [(label, target) for label in tables.consuming_labels(state)
                for target in sorted(tables.delta_contr(state, label))]

    def paired(pair):
        first, second = pair
        labels = [label for label in tables.consuming_labels(first) if label in tables.consuming_labels(second)]
        return [(label, (a, b)) for label in labels
                for a in sorted(tables.delta_contr(first, label)) for b in sorted(tables.delta_contr(second, label))]

    reached = _reachable_with_trails(mfa.initial, contracted)
    found = product_search([(q, q) for q in sorted(reached)], paired, lambda pair: not memsync(*pair))
    if found is None:
        return None
    q = found.start[0]
    prefix = reached[q]
    word = _word_of(prefix + found.letters)
    logging.debug('Non-synchronised branching at %d towards %s', q, found.goal)
    return Branching(q, found.goal[0], found.goal[1], prefix, found.letters, word)


def _reachable_with_trails(initial, successors):
    trails = {initial: []}
    queue = deque([initial])
    while queue:
        current = queue.popleft()
        for label, target in successors(current):
            if target not in trails:
                trails[target] = trails[current] + [label]
                queue.append(target)
    return trails


def is_memory_deterministic(mfa, tables=None):
    """
    :param mfaregex.mfa.Mfa mfa: The automaton
    :rtype: bool
    """
    return has_non_sync_branch(mfa, tables) is None


def is_mdet_regex(ast):
    """
    Decide memory determinism of a pattern through its canonical automaton.

    :rtype: bool
    """
    return is_memory_deterministic(canonical_mfa(ast))


def _contracted_moves(mfa, state, memories):
    """Apply every contracted transition to a configuration whose memory contents are tuples of symbols."""
    moves = []
    seen = {(state, memories)}
    stack = [(state, memories)]
    while stack:
        current, stored = stack.pop()
        for label, target in mfa.out_edges(current):
            if label.is_consuming:
                if label.kind == CHAR:
                    consumed = (label.symbol,)
                else:
                    status, content = stored[label.memory - 1]
                    if status == OPENED:
                        continue
                    consumed = content
                after = tuple((status, content + consumed) if status == OPENED else (status, content)
                              for status, content in stored)
                moves.append((target, consumed, after))
                continue
            if label.is_instruction:
                slot = label.memory - 1
                memory = (OPENED, ()) if label.kind == OPEN else (CLOSED, stored[slot][1])
                successor = (target, stored[:slot] + (memory,) + stored[slot + 1:])
            else:
                successor = (target, stored)
            if successor not in seen:
                seen.add(successor)
                stack.append(successor)
    return moves


def bounded_sync_check(mfa, maxlen, budget=None):
    """
    Search two contracted computations on the same input of length at most ``maxlen`` that differ in their
    remaining input or memories after the same number of contracted transitions.

    The two computations are explored jointly while they agree; the input is chosen symbol by symbol, so all words
    up to ``maxlen`` are covered at once.

    :param mfaregex.mfa.Mfa mfa: The automaton
    :param int maxlen: Maximum input length
    :param int budget: Maximum number of explored pairs
    :raises BudgetExceeded: If the budget is exhausted
    :rtype: SyncViolation or None
    """
    budget = config.get('budget', budget)
    start = (mfa.initial, mfa.initial, 0, ((CLOSED, ()),) * mfa.memory_count)
    prefixes = {start: ((), 0)}
    queue = deque([start])
    while queue:
        pair = queue.popleft()
        q1, q2, _, memories = pair
        prefix, steps = prefixes[pair]
        second_moves = _contracted_moves(mfa, q2, memories)
        for t1, u1, after1 in _contracted_moves(mfa, q1, memories):
            for t2, u2, after2 in second_moves:
                longer, shorter = (u1, u2) if len(u1) >= len(u2) else (u2, u1)
                if longer[:len(shorter)] != shorter or len(prefix) + len(longer) > maxlen:
                    continue
                if u1 != u2 or after1 != after2:
                    return SyncViolation(prefix + longer, steps + 1,
                                         (t1, len(prefix) + len(u1), after1), (t2, len(prefix) + len(u2), after2))
                successor = (t1, t2, len(prefix) + len(u1), after1)
                if successor not in prefixes:
                    if len(prefixes) >= budget:
                        logging.info('Synchronisation check stopped after %d prefix pairs', len(prefixes))
                        raise BudgetExceeded('Synchronisation check exceeded its budget of {}'.format(budget))
                    prefixes[successor] = (prefix + u1, steps + 1)
                    queue.append(successor)
    return None
