"""Contracted transitions: instruction compression, reachability sets and the instruction table"""

from __future__ import absolute_import

from collections import deque

from mfaregex.mfa import CLOSE, CLOSED, EPS, OPEN, OPENED


class ReducedInstructionSet(tuple):
    """
    The last memory instruction per memory, ``None`` where a memory was not touched.

    Entry ``i`` belongs to memory ``i + 1`` and is one of ``None``, ``'open'`` and ``'close'``.
    """

    @classmethod
    def empty(cls, memory_count):
        return cls((None,) * memory_count)

    def with_label(self, label):
        """Return the set after appending a label; ε and consuming labels change nothing."""
        if not label.is_instruction:
            return self
        slot = label.memory - 1
        return ReducedInstructionSet(self[:slot] + (label.kind,) + self[slot + 1:])

    def contains(self, label):
        """
        :param mfaregex.mfa.Label label: An open or close instruction
        :rtype: bool
        """
        return self[label.memory - 1] == label.kind

    def __repr__(self):
        entries = ['{}{}'.format('o' if instruction == OPEN else 'c', i + 1)
                   for i, instruction in enumerate(self) if instruction is not None]
        return '{' + ', '.join(entries) + '}'


def compress(labels, memory_count):
    """
    Keep the last instruction of every memory.

    :param labels: A sequence of ε, open and close labels
    :param int memory_count: Number of memories
    :rtype: ReducedInstructionSet
    """
    reduced = ReducedInstructionSet.empty(memory_count)
    for label in labels:
        reduced = reduced.with_label(label)
    return reduced


def apply_status_update(statuses, reduced):
    """
    Override memory statuses by a reduced instruction set.

    :param tuple statuses: One of ``'open'``/``'closed'`` per memory
    :param ReducedInstructionSet reduced: The instructions to apply
    :rtype: tuple
    """
    return tuple(OPENED if instruction == OPEN else CLOSED if instruction == CLOSE else status
                 for status, instruction in zip(statuses, reduced))


class ContractedTables(object):
    """
    For every state ``q`` and consuming label ``x``: the states reachable by a contracted ``x``-transition and one
    reduced instruction set of such a transition, together with the memories opened anywhere on its path.
    ``delta_contr(q, None)`` is the non-consuming closure of ``q``.
    """

    def __init__(self, mfa):
        self.mfa = mfa
        self.closure = []
        self._delta = {}
        self._instructions = {}
        self._resets = {}
        self._labels = []
        for state in mfa.states:
            self._explore(state)

    def _explore(self, state):
        mfa = self.mfa
        reduced = {state: ReducedInstructionSet.empty(mfa.memory_count)}
        opened = {state: frozenset()}
        order = []
        queue = deque([state])
        labels = []
        while queue:
            current = queue.popleft()
            order.append(current)
            for label, target in mfa.out_edges(current):
                if label.is_consuming:
                    key = (state, label)
                    if key not in self._delta:
                        self._delta[key] = set()
                        self._instructions[key] = reduced[current]
                        self._resets[key] = opened[current]
                        labels.append(label)
                    self._delta[key].add(target)
                elif target not in reduced:
                    reduced[target] = reduced[current].with_label(label)
                    opened[target] = opened[current] | {label.memory - 1} if label.kind == OPEN else opened[current]
                    queue.append(target)
        self.closure.append(tuple(order))
        for label in labels:
            self._delta[(state, label)] = frozenset(self._delta[(state, label)])
        self._labels.append(tuple(sorted(labels, key=lambda label: label.sort_key)))

    def delta_contr(self, state, label=None):
        """
        :param int state: The source state
        :param label: A consuming label, or ``None`` for the non-consuming closure
        :rtype: frozenset
        """
        if label is None or label.kind == EPS:
            return frozenset(self.closure[state])
        return self._delta.get((state, label), frozenset())

    def instructions(self, state, label):
        """
        Return the stored reduced instruction set, or ``None`` if no contracted transition exists.

        :rtype: ReducedInstructionSet or None
        """
        return self._instructions.get((state, label))

    def resets(self, state, label):
        """
        Return the 0-based memory slots opened on the path of the stored instruction set.

        A slot opened and closed again on that path ends up empty, which the reduced set alone does not show.

        :rtype: frozenset
        """
        return self._resets.get((state, label), frozenset())

    def consuming_labels(self, state):
        """Labels with a non-empty contracted transition from the state, recalls first."""
        return self._labels[state]


def build_contracted_tables(mfa):
    """
    Compute all contracted reachability sets and the instruction table of an automaton.

    :param mfaregex.mfa.Mfa mfa: The automaton
    :rtype: ContractedTables
    """
    return ContractedTables(mfa)
