"""Memory automata: labels, the automaton model, configuration semantics and the construction from syntax trees"""

from __future__ import absolute_import

import logging
from collections import deque, namedtuple
from dataclasses import dataclass

from mfaregex.config import config
from mfaregex.exceptions import BudgetExceeded, SchemaViolation
from mfaregex.syntax import Alt, Concat, Epsilon, Literal, Plus, Recall, VarDef
from mfaregex.utils import as_word

CHAR, EPS, RECALL, OPEN, CLOSE = 'char', 'eps', 'recall', 'open', 'close'
KIND_ORDER = {RECALL: 0, CHAR: 1, EPS: 2, OPEN: 3, CLOSE: 4}

# Memory statuses
OPENED, CLOSED = 'open', 'closed'

# Tags of the states created per syntax tree node
TAG_IN, TAG_INTER, TAG_OUT = 'in', 'inter', 'out'


@dataclass(frozen=True)
class Label(object):
    """A transition label: a terminal, ε, or a recall/open/close instruction of a 1-based memory."""

    kind: str
    symbol: object = None
    memory: int = None

    @classmethod
    def char(cls, symbol):
        return cls(CHAR, symbol=symbol)

    @classmethod
    def eps(cls):
        return cls(EPS)

    @classmethod
    def recall(cls, memory):
        return cls(RECALL, memory=memory)

    @classmethod
    def open(cls, memory):
        return cls(OPEN, memory=memory)

    @classmethod
    def close(cls, memory):
        return cls(CLOSE, memory=memory)

    @property
    def is_consuming(self):
        return self.kind in (CHAR, RECALL)

    @property
    def is_instruction(self):
        return self.kind in (OPEN, CLOSE)

    @property
    def sort_key(self):
        """Recalls by memory index first, then terminals, then the non-consuming labels."""
        return (KIND_ORDER[self.kind], self.memory or 0, repr(self.symbol))

    def __str__(self):
        if self.kind == CHAR:
            return str(self.symbol)
        if self.kind == EPS:
            return 'ε'
        if self.kind == RECALL:
            return str(self.memory)
        return '{}{}'.format('o' if self.kind == OPEN else 'c', self.memory)


class Mfa(object):
    """
    An immutable memory automaton with ``memory_count`` memories numbered from 1.

    States are the integers ``0 .. state_count - 1``. Canonical automata additionally carry ``origins``,
    mapping every state to the (node index, tag) pair it was created for.
    """

    def __init__(self, state_count, initial, accepting, memory_count, transitions, origins=None):
        self.state_count = state_count
        self.initial = initial
        self.accepting = frozenset(accepting)
        self.memory_count = memory_count
        self.transitions = tuple(transitions)
        self.origins = tuple(origins) if origins is not None else None
        self._validate()
        out = [[] for _ in range(state_count)]
        for source, label, target in self.transitions:
            out[source].append((label, target))
        self._out = tuple(tuple(edges) for edges in out)

    def _validate(self):
        if self.state_count < 1:
            raise SchemaViolation('An automaton needs at least one state')
        if self.memory_count < 0:
            raise SchemaViolation('Negative memory count')
        states = range(self.state_count)
        if self.initial not in states:
            raise SchemaViolation('Initial state {} does not exist'.format(self.initial))
        for state in self.accepting:
            if state not in states:
                raise SchemaViolation('Accepting state {} does not exist'.format(state))
        for source, label, target in self.transitions:
            if source not in states or target not in states:
                raise SchemaViolation('Transition {} -> {} uses an unknown state'.format(source, target))
            if not isinstance(label, Label) or label.kind not in KIND_ORDER:
                raise SchemaViolation('Invalid label {!r}'.format(label))
            if label.kind in (RECALL, OPEN, CLOSE) and not 1 <= (label.memory or 0) <= self.memory_count:
                raise SchemaViolation('Label {} refers to memory {} but the automaton has {} memories'.format(
                    label.kind, label.memory, self.memory_count))
            if label.kind == CHAR and label.symbol is None:
                raise SchemaViolation('Terminal label without symbol')
        if self.origins is not None and len(self.origins) != self.state_count:
            raise SchemaViolation('Origins do not cover every state')

    @property
    def states(self):
        return range(self.state_count)

    @property
    def alphabet(self):
        return frozenset(label.symbol for _, label, _ in self.transitions if label.kind == CHAR)

    def out_edges(self, state):
        """
        Return the outgoing edges of a state.

        :param int state: A state
        :return: Pairs of label and target state
        :rtype: tuple
        """
        return self._out[state]

    def is_accepting(self, state):
        return state in self.accepting

    def __repr__(self):
        return '<Mfa states={} memories={} transitions={}>'.format(
            self.state_count, self.memory_count, len(self.transitions))


class MfaBuilder(object):
    """Incrementally assemble an automaton from named states."""

    def __init__(self, memory_count=0):
        self.memory_count = memory_count
        self._states = {}
        self._transitions = []

    def state(self, name):
        """Return the number of a named state, creating it on first use."""
        if name not in self._states:
            self._states[name] = len(self._states)
        return self._states[name]

    def add(self, source, label, target):
        self._transitions.append((self.state(source), label, self.state(target)))
        return self

    def build(self, initial, accepting):
        """
        :param initial: Name of the initial state
        :param accepting: Names of the accepting states
        :rtype: Mfa
        """
        initial = self.state(initial)
        accepting = [self.state(name) for name in accepting]
        return Mfa(len(self._states), initial, accepting, self.memory_count, self._transitions)

    @property
    def names(self):
        return dict(self._states)


Configuration = namedtuple('Configuration', 'state pos memories')
"""A configuration; ``memories`` holds one ``(status, start, end)`` span per memory."""


def initial_configuration(mfa):
    return Configuration(mfa.initial, 0, ((CLOSED, 0, 0),) * mfa.memory_count)


def apply_label(label, pos, memories, word):
    """
    Apply a label to an input position and memory tuple.

    :return: The new ``(pos, memories)`` pair, or ``None`` if the label is not applicable
    """
    kind = label.kind
    if kind == EPS:
        return pos, memories
    if kind == CHAR:
        if pos >= len(word) or word[pos] != label.symbol:
            return None
        consumed = 1
    elif kind == RECALL:
        status, start, end = memories[label.memory - 1]
        if status == OPENED:
            return None
        consumed = end - start
        if word[pos:pos + consumed] != word[start:end]:
            return None
    else:
        slot = label.memory - 1
        status, start, end = memories[slot]
        if kind == OPEN:
            memory = (OPENED, pos, pos)
        else:
            memory = (CLOSED, start, end)
        return pos, memories[:slot] + (memory,) + memories[slot + 1:]
    if consumed:
        memories = tuple((status, start, end + consumed) if status == OPENED else (status, start, end)
                         for status, start, end in memories)
    return pos + consumed, memories


def step(mfa, configuration, transition, word):
    """
    Apply a single transition to a configuration.

    :param Mfa mfa: The automaton
    :param Configuration configuration: The current configuration
    :param tuple transition: A ``(source, label, target)`` triple starting in the configuration's state
    :param word: The input word
    :return: The successor configuration, or ``None`` if the transition is inapplicable
    """
    source, label, target = transition
    if source != configuration.state:
        raise ValueError('Transition starts in {} but the configuration is in {}'.format(
            source, configuration.state))
    applied = apply_label(label, configuration.pos, configuration.memories, as_word(word))
    if applied is None:
        return None
    return Configuration(target, applied[0], applied[1])


def iter_configurations(mfa, word, budget=None):
    """
    Breadth-first search over the configuration graph.

    ``mfa`` only needs ``initial``, ``memory_count`` and ``out_edges``, so lazily built automata work as well.

    :raises BudgetExceeded: If more configurations than the budget are reached
    :return: A generator of reachable configurations
    """
    word = as_word(word)
    budget = config.get('budget', budget)
    start = initial_configuration(mfa)
    seen = {start}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        yield current
        for label, target in mfa.out_edges(current.state):
            applied = apply_label(label, current.pos, current.memories, word)
            if applied is None:
                continue
            successor = Configuration(target, applied[0], applied[1])
            if successor not in seen:
                if len(seen) >= budget:
                    logging.info('Configuration search stopped after %d configurations', len(seen))
                    raise BudgetExceeded('Configuration search exceeded its budget of {}'.format(budget))
                seen.add(successor)
                queue.append(successor)


def mfa_accepts(mfa, word, budget=None):
    """
    Decide whether an automaton accepts a word.

    :param mfa: The automaton
    :param word: A string or a sequence of symbols
    :param int budget: Maximum number of configurations
    :raises BudgetExceeded: If the budget is exhausted before a decision
    :rtype: bool
    """
    word = as_word(word)
    end = len(word)
    return any(c.pos == end and mfa.is_accepting(c.state) for c in iter_configurations(mfa, word, budget))


def build_crude_automaton(ast):
    """
    Build the canonical automaton of a syntax tree.

    Every node gets an in and an out state, concatenations an additional inter state. A definition of
    variable ``x`` with child ``r`` gets the edges ``(t_in, open x, r_in)`` and ``(r_out, close x, t_out)``.

    :param mfaregex.syntax.RegexAst ast: The syntax tree
    :rtype: Mfa
    """
    origins = []
    states = []
    for index, node in enumerate(ast.nodes):
        tags = (TAG_IN, TAG_INTER, TAG_OUT) if isinstance(node, Concat) else (TAG_IN, TAG_OUT)
        allocated = {}
        for tag in tags:
            allocated[tag] = len(origins)
            origins.append((index, tag))
        states.append(allocated)

    eps = Label.eps()
    transitions = []
    for index, node in enumerate(ast.nodes):
        own = states[index]
        child = [states[c] for c in ast.children[index]]
        if isinstance(node, Literal):
            transitions.append((own[TAG_IN], Label.char(node.symbol), own[TAG_OUT]))
        elif isinstance(node, Epsilon):
            transitions.append((own[TAG_IN], eps, own[TAG_OUT]))
        elif isinstance(node, Recall):
            transitions.append((own[TAG_IN], Label.recall(ast.memory_of(node.name)), own[TAG_OUT]))
        elif isinstance(node, Concat):
            transitions.extend([
                (own[TAG_IN], eps, child[0][TAG_IN]),
                (child[0][TAG_OUT], eps, own[TAG_INTER]),
                (own[TAG_INTER], eps, child[1][TAG_IN]),
                (child[1][TAG_OUT], eps, own[TAG_OUT]),
            ])
        elif isinstance(node, Alt):
            transitions.extend([
                (own[TAG_IN], eps, child[0][TAG_IN]),
                (own[TAG_IN], eps, child[1][TAG_IN]),
                (child[0][TAG_OUT], eps, own[TAG_OUT]),
                (child[1][TAG_OUT], eps, own[TAG_OUT]),
            ])
        elif isinstance(node, Plus):
            transitions.extend([
                (own[TAG_IN], eps, child[0][TAG_IN]),
                (child[0][TAG_OUT], eps, own[TAG_OUT]),
                (own[TAG_OUT], eps, own[TAG_IN]),
            ])
        elif isinstance(node, VarDef):
            memory = ast.memory_of(node.name)
            transitions.extend([
                (own[TAG_IN], Label.open(memory), child[0][TAG_IN]),
                (child[0][TAG_OUT], Label.close(memory), own[TAG_OUT]),
            ])

    mfa = Mfa(len(origins), states[0][TAG_IN], [states[0][TAG_OUT]], len(ast.variables), transitions, origins)
    assert all(len(mfa.out_edges(q)) <= 3 for q in mfa.states)
    return mfa


canonical_mfa = build_crude_automaton


def node_states(mfa):
    """
    Invert the origins of a canonical automaton.

    :return: A dict mapping ``(node index, tag)`` to the state
    :rtype: dict
    """
    if mfa.origins is None:
        raise SchemaViolation('Automaton was not built from a syntax tree')
    return {origin: state for state, origin in enumerate(mfa.origins)}


class NfaView(object):
    """Read an automaton as a classical NFA whose letters are its labels; only ε-labels are silent."""

    def __init__(self, mfa):
        self.mfa = mfa

    def closure(self, states):
        stack = list(states)
        reached = set(states)
        while stack:
            for label, target in self.mfa.out_edges(stack.pop()):
                if label.kind == EPS and target not in reached:
                    reached.add(target)
                    stack.append(target)
        return reached

    def accepts(self, letters):
        """
        :param letters: A sequence of :class:`Label` objects other than ε
        :rtype: bool
        """
        current = self.closure([self.mfa.initial])
        for letter in letters:
            current = self.closure([target for state in current for label, target in self.mfa.out_edges(state)
                                    if label == letter])
            if not current:
                return False
        return any(self.mfa.is_accepting(state) for state in current)


def canonical_nfa_view(mfa):
    return NfaView(mfa)
