"""On-the-fly product searches used by the static analyses"""

from __future__ import absolute_import

from collections import deque, namedtuple

SearchResult = namedtuple('SearchResult', 'start goal letters')


def product_search(starts, successors, is_goal):
    """
    Breadth-first search over a product automaton that is expanded on the fly.

    :param starts: The initial product states
    :param successors: A function mapping a product state to ``(letter, product state)`` pairs
    :param is_goal: A predicate on product states
    :return: The start state, the first goal state found and the letters leading to it, or ``None``
    :rtype: SearchResult or None
    """
    parents = {}
    queue = deque()
    for start in starts:
        if start not in parents:
            parents[start] = None
            queue.append(start)
    while queue:
        current = queue.popleft()
        if is_goal(current):
            start, letters = _trail(parents, current)
            return SearchResult(start, current, letters)
        for letter, successor in successors(current):
            if successor not in parents:
                parents[successor] = (current, letter)
                queue.append(successor)
    return None


def reachable_states(starts, successors):
    """
    Return every product state reachable from the initial ones.

    :rtype: set
    """
    reached = set(starts)
    stack = list(reached)
    while stack:
        for _, successor in successors(stack.pop()):
            if successor not in reached:
                reached.add(successor)
                stack.append(successor)
    return reached


def _trail(parents, state):
    letters = []
    while parents[state] is not None:
        state, letter = parents[state]
        letters.append(letter)
    letters.reverse()
    return state, letters
