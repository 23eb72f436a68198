"""Active variables: definition/recall reachability, avd, the savd oracle and memory-reuse automata"""

from __future__ import absolute_import

import itertools
import logging
import operator
import threading
from collections import defaultdict

from cachetools import cachedmethod

from mfaregex.config import config
from mfaregex.exceptions import AvdTooLarge, CapExceeded
from mfaregex.mfa import CHAR, EPS, OPEN, TAG_IN, Label, MfaBuilder, canonical_mfa, node_states
from mfaregex.products import product_search, reachable_states
from mfaregex.syntax import VarDef


class VarReachability(object):
    """
    The relations between variables and states of a canonical automaton.

    ``pre[x]`` holds the states reachable by a path that opens ``x``; ``post[x]`` holds the states from which a
    recall of ``x`` is reachable without opening ``x`` first.
    """

    def __init__(self, ast, mfa, pre, post):
        self.ast = ast
        self.mfa = mfa
        self.pre = pre
        self.post = post
        self._post_by_state = defaultdict(set)
        for name, states in post.items():
            for state in states:
                self._post_by_state[state].add(name)
        positions = node_states(mfa)
        self.definitions = [(node.name, positions[(index + 1, TAG_IN)], positions[(index, TAG_IN)])
                            for index, node in enumerate(ast.nodes) if isinstance(node, VarDef)]
        """Per definition node: variable, in-state of its child and its own in-state."""

    def active(self, state):
        """
        :rtype: frozenset
        """
        return frozenset(name for name in self.ast.variables if state in self.pre[name] and state in self.post[name])

    def recallable(self, state):
        """Variables ``x`` with ``state ▷ x``."""
        return self._post_by_state[state]


def compute_reachability(ast, mfa=None):
    """
    Compute the definition and recall reachability of every variable.

    :param mfaregex.syntax.RegexAst ast: The pattern
    :param mfaregex.mfa.Mfa mfa: Its canonical automaton, built if omitted
    :rtype: VarReachability
    """
    if mfa is None:
        mfa = canonical_mfa(ast)
    reverse = defaultdict(list)
    for source, label, target in mfa.transitions:
        reverse[target].append((label, source))

    pre, post = {}, {}
    for memory, name in enumerate(ast.variables, 1):
        opening = Label.open(memory)

        def forward(product, opening=opening):
            state, seen = product
            return [(label, (target, seen or label == opening)) for label, target in mfa.out_edges(state)]

        reached = reachable_states([(mfa.initial, False)], forward)
        pre[name] = frozenset(state for state, seen in reached if seen)

        def backward(state, opening=opening):
            return [(label, source) for label, source in reverse[state] if label != opening]

        recalling = [source for source, label, _ in mfa.transitions if label == Label.recall(memory)]
        post[name] = frozenset(reachable_states(recalling, backward))
    return VarReachability(ast, mfa, pre, post)


def active_sets(ast, reachability=None):
    """
    Return the active variables at the child of every definition node.

    :return: ``(variable, sorted active variables)`` pairs in pattern order
    :rtype: list
    """
    reachability = reachability or compute_reachability(ast)
    return [(name, sorted(reachability.active(child), key=ast.variables.index))
            for name, child, _ in reachability.definitions]


def avd(ast, reachability=None):
    """
    Return the active variable degree of a pattern, 0 without definitions.

    :rtype: int
    """
    return max((len(active) for _, active in active_sets(ast, reachability)), default=0)


def _jointly_opened(mfa, memories, target):
    """Check whether a single path from the initial state to ``target`` opens every memory of ``memories``."""
    bits = {memory: 1 << i for i, memory in enumerate(memories)}
    full = (1 << len(memories)) - 1

    def successors(product):
        state, seen = product
        return [(label, (t, (seen | bits.get(label.memory, 0)) if label.kind == OPEN else seen))
                for label, t in mfa.out_edges(state)]

    return product_search([(mfa.initial, 0)], successors, lambda product: product == (target, full)) is not None


def savd_bruteforce(ast, cap=None, reachability=None):
    """
    Compute the strong active variable degree by enumerating variable subsets.

    :param mfaregex.syntax.RegexAst ast: The pattern
    :param int cap: Maximum number of variables
    :raises CapExceeded: If the pattern has more variables than the cap
    :rtype: int
    """
    cap = config.get('savd_cap', cap)
    if len(ast.variables) > cap:
        raise CapExceeded('savd is limited to {} variables, the pattern has {}'.format(cap, len(ast.variables)))
    reachability = reachability or compute_reachability(ast)
    best = 0
    for _, child, _ in reachability.definitions:
        active = sorted(ast.memory_of(name) for name in reachability.active(child))
        for size in range(len(active), best, -1):
            if any(_jointly_opened(reachability.mfa, subset, child)
                   for subset in itertools.combinations(active, size)):
                best = size
                break
    return best


class ReuseMfa(object):
    """
    A memory automaton with ``k`` memories for a pattern whose avd is at most ``k``.

    States are pairs of a canonical state and a memory list naming the variable stored in every memory
    (``None`` for unused memories). States are built lazily on first access.
    """

    def __init__(self, ast, k, reachability=None):
        self.ast = ast
        self.memory_count = k
        self.reachability = reachability or compute_reachability(ast)
        self.canonical = self.reachability.mfa
        self.initial = (self.canonical.initial, (None,) * k)
        self._cache = {}
        self._lock = threading.RLock()

    @property
    def expanded(self):
        """Number of states whose out-edges have been built so far."""
        return len(self._cache)

    def is_accepting(self, state):
        return self.canonical.is_accepting(state[0])

    def _scrub(self, target, memories):
        recallable = self.reachability.recallable(target)
        return (target, tuple(name if name in recallable else None for name in memories))

    @cachedmethod(operator.attrgetter('_cache'), lock=operator.attrgetter('_lock'))
    def out_edges(self, state):
        """
        :param tuple state: A ``(canonical state, memory list)`` pair
        :rtype: tuple
        """
        q, memories = state
        eps = Label.eps()
        edges = []
        for label, target in self.canonical.out_edges(q):
            stored = memories
            if label.kind in (CHAR, EPS):
                mapped = label
            else:
                name = self.ast.variables[label.memory - 1]
                slot = memories.index(name) if name in memories else None
                if label.kind == OPEN and slot is None and None in memories:
                    slot = memories.index(None)
                    stored = memories[:slot] + (name,) + memories[slot + 1:]
                if slot is None:
                    mapped = eps
                else:
                    mapped = Label(label.kind, memory=slot + 1)
            edges.append((mapped, self._scrub(target, stored)))
        return tuple(edges)

    def states(self):
        """Return all reachable states in a fixed order."""
        return sorted(reachable_states([self.initial], self.out_edges), key=repr)

    def materialize(self):
        """
        Build the reachable part as an explicit automaton; state 0 is the initial state.

        :rtype: mfaregex.mfa.Mfa
        """
        builder = MfaBuilder(self.memory_count)
        builder.state(self.initial)
        accepting = []
        for state in self.states():
            if self.is_accepting(state):
                accepting.append(state)
            for label, target in self.out_edges(state):
                builder.add(state, label, target)
        return builder.build(self.initial, accepting)


def build_reuse_mfa(ast, k, reachability=None):
    """
    Build the memory-reuse automaton of a pattern.

    :param mfaregex.syntax.RegexAst ast: The pattern
    :param int k: Number of memories
    :raises AvdTooLarge: If the avd of the pattern exceeds ``k``
    :rtype: ReuseMfa
    """
    reachability = reachability or compute_reachability(ast)
    degree = avd(ast, reachability)
    if degree > k:
        raise AvdTooLarge('The pattern has avd {} but only {} memories were requested'.format(degree, k))
    logging.debug('Building a reuse automaton with %d memories for avd %d', k, degree)
    return ReuseMfa(ast, k, reachability)


