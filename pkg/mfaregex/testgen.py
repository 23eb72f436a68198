"""Instance generators for adversarial testing: set cover patterns, 1-in-3 SAT automata and 3-SAT synchronisation
automata, together with the brute-force deciders they are checked against"""

from __future__ import absolute_import

import itertools
import logging
from dataclasses import dataclass

from mfaregex.exceptions import InvalidInstance, SchemaViolation
from mfaregex.mfa import EPS, Label, MfaBuilder
from mfaregex.syntax import Alt, Concat, Epsilon, Literal, Plus, Recall, RegexAst, VarDef


@dataclass(frozen=True)
class CnfInstance(object):
    """A formula in conjunctive normal form with exactly three literals per clause.

    Literals are non-zero integers; ``-i`` is the negation of variable ``i``.
    """

    variable_count: int
    clauses: tuple

    def __post_init__(self):
        if self.variable_count < 1:
            raise InvalidInstance('A formula needs at least one variable')
        clauses = tuple(tuple(clause) for clause in self.clauses)
        for clause in clauses:
            if len(clause) != 3:
                raise InvalidInstance('Clause {} does not have exactly three literals'.format(clause))
            for literal in clause:
                if not isinstance(literal, int) or literal == 0 or abs(literal) > self.variable_count:
                    raise InvalidInstance('Literal {!r} is out of range 1..{}'.format(literal, self.variable_count))
        object.__setattr__(self, 'clauses', clauses)

    @property
    def is_positive(self):
        return all(literal > 0 for clause in self.clauses for literal in clause)

    def assignments(self):
        """Yield every assignment as a tuple of booleans, variable ``i`` at index ``i - 1``."""
        return itertools.product((False, True), repeat=self.variable_count)


def _value(literal, assignment):
    value = assignment[abs(literal) - 1]
    return value if literal > 0 else not value


def satisfiable(cnf):
    """
    :param CnfInstance cnf: A formula with signed literals
    :rtype: bool
    """
    return any(all(any(_value(literal, assignment) for literal in clause) for clause in cnf.clauses)
               for assignment in cnf.assignments())


def one_in_three_satisfiable(cnf):
    """
    Decide whether an assignment makes exactly one literal of every clause true.

    Repeated literals count once per occurrence, so ``(1, 1, 1)`` can never be satisfied.

    :param CnfInstance cnf: A formula with positive literals
    :rtype: bool
    """
    return any(all(sum(_value(literal, assignment) for literal in clause) == 1 for clause in cnf.clauses)
               for assignment in cnf.assignments())


def has_set_cover(universe, subsets, k):
    """
    Decide whether at most ``k`` of the subsets cover the universe.

    :rtype: bool
    """
    universe = frozenset(universe)
    subsets = [frozenset(subset) for subset in subsets]
    return any(frozenset().union(*chosen) >= universe
               for size in range(1, min(k, len(subsets)) + 1)
               for chosen in itertools.combinations(subsets, size))


def gen_setcover_regex(universe, subsets, k):
    """
    Build a pattern whose strong active variable degree exceeds ``|universe|`` iff a cover of size at most ``k``
    exists.

    Every element ``e`` becomes a variable ``x<i>`` (``i`` its 1-based rank in the sorted universe); a subset is a
    concatenation of empty definitions of its elements. The pattern is::

        $z{~} (B1|...|Bn)...(B1|...|Bn) b $x1 ... $xm $z

    with ``k`` copies of the alternation.

    :param universe: The elements, sortable and hashable
    :param subsets: The subsets of the universe
    :param int k: The cover size
    :raises InvalidInstance: If ``k < 1``, there are no subsets or a subset leaves the universe
    :rtype: mfaregex.syntax.RegexAst
    """
    elements = sorted(set(universe))
    subsets = [sorted(set(subset)) for subset in subsets]
    if k < 1 or not subsets or not elements:
        raise InvalidInstance('Set cover needs a non-empty universe, subsets and k >= 1')
    names = {element: 'x{}'.format(rank) for rank, element in enumerate(elements, 1)}
    for subset in subsets:
        if not subset or any(element not in names for element in subset):
            raise InvalidInstance('Subset {} is empty or not part of the universe'.format(subset))

    def subset_node(subset):
        return _chain(Concat, [VarDef(names[element], Epsilon()) for element in subset])

    def choice():
        return _chain(Alt, [subset_node(subset) for subset in subsets])

    parts = [VarDef('z', Epsilon())]
    parts.extend(choice() for _ in range(k))
    parts.append(Literal('b'))
    parts.extend(Recall(names[element]) for element in elements)
    parts.append(Recall('z'))
    return RegexAst(_chain(Concat, parts))


def _chain(node_type, nodes):
    node = nodes[0]
    for other in nodes[1:]:
        node = node_type(node, other)
    return node


def gen_1in3_mfa(cnf):
    """
    Build an automaton over ``{a, b}`` with ``2n`` memories that accepts ``(aab)^n (ab)^m`` iff the positive formula
    is 1-in-3 satisfiable.

    Variable ``i`` reads ``a`` and then stores a second ``a`` in memory ``2i - 1`` (true) or ``2i`` (false),
    followed by ``b``. The memory of the other value is never opened and recalls it as the empty word. Clause ``j``
    recalls the true-memories of its three variables followed by ``b``.

    :param CnfInstance cnf: A formula with positive literals
    :raises InvalidInstance: If a literal is negative
    :return: The automaton and the probe word
    :rtype: tuple
    """
    if not cnf.is_positive:
        raise InvalidInstance('1-in-3 instances must only contain positive literals')
    n, m = cnf.variable_count, len(cnf.clauses)
    a, b = Label.char('a'), Label.char('b')
    builder = MfaBuilder(2 * n)
    for i in range(1, n + 1):
        for value, memory in ((True, 2 * i - 1), (False, 2 * i)):
            builder.add(('var', i - 1), a, ('pick', i, value))
            builder.add(('pick', i, value), Label.open(memory), ('opened', i, value))
            builder.add(('opened', i, value), a, ('read', i, value))
            builder.add(('read', i, value), Label.close(memory), ('chosen', i))
        builder.add(('chosen', i), b, ('var', i))
    previous = ('var', n)
    for j, clause in enumerate(cnf.clauses, 1):
        for position, literal in enumerate(clause, 1):
            builder.add(previous, Label.recall(2 * literal - 1), ('clause', j, position))
            previous = ('clause', j, position)
        builder.add(previous, b, ('var', n, 'clause', j))
        previous = ('var', n, 'clause', j)
    mfa = builder.build(('var', 0), [previous])
    check_1in3_restrictions(mfa)
    logging.debug('1-in-3 automaton with %d states for %d variables and %d clauses', mfa.state_count, n, m)
    return mfa, 'aab' * n + 'ab' * m


def check_1in3_restrictions(mfa):
    """
    Check the shape of a 1-in-3 automaton: binary alphabet, no ε-transitions, only ``a`` may branch and a branching
    state has exactly two ``a``-successors and nothing else.

    :raises SchemaViolation: If a restriction does not hold
    """
    if not mfa.alphabet <= {'a', 'b'}:
        raise SchemaViolation('Alphabet {} is not binary'.format(sorted(mfa.alphabet)))
    for q in mfa.states:
        edges = mfa.out_edges(q)
        if any(label.kind == EPS for label, _ in edges):
            raise SchemaViolation('State {} has an ε-transition'.format(q))
        labels = {label for label, _ in edges}
        if len(edges) <= 1:
            continue
        if labels != {Label.char('a')} or len(set(target for _, target in edges)) != 2 or len(edges) != 2:
            raise SchemaViolation('State {} branches on something other than two a-successors'.format(q))


def sync_gadget_length(cnf):
    """Length of the longest input that drives a 3-SAT synchronisation automaton through all of its gadgets."""
    return 2 * cnf.variable_count + 2 * len(cnf.clauses) + 1


def gen_3sat_sync_mfa(cnf):
    """
    Build an automaton that is synchronised iff the formula is unsatisfiable.

    Variable ``i`` reads ``ab`` (true) or ``ba`` (false) and stores the first letter in memory ``2i - 1`` and the
    second one in memory ``2i``, so memory ``2i - 1`` holds ``a`` iff the variable is true and memory ``2i`` holds
    ``a`` iff it is false. Clause ``j`` recalls the memory of one of its literals into memory ``2n + j``. From the
    joined state, one branch recalls all clause memories and the other reads ``a`` once per clause; both meet on
    the same input iff every clause memory holds ``a``. The branches then read ``b``, one of them while storing it in
    the first clause memory.

    :param CnfInstance cnf: A formula with signed literals and at least one clause
    :raises InvalidInstance: If the formula has no clauses
    :rtype: mfaregex.mfa.Mfa
    """
    n, m = cnf.variable_count, len(cnf.clauses)
    if m < 1:
        raise InvalidInstance('The synchronisation automaton needs at least one clause')
    a, b = Label.char('a'), Label.char('b')
    builder = MfaBuilder(2 * n + m)
    builder.state(('var', 0))
    for i in range(1, n + 1):
        positive, negative = 2 * i - 1, 2 * i
        builder.add(('var', i - 1), Label.open(positive), ('first', i))
        for letter, other in ((a, b), (b, a)):
            path = [Label.close(positive), Label.open(negative), other, Label.close(negative)]
            previous = ('read', i, letter.symbol)
            builder.add(('first', i), letter, previous)
            for step, label in enumerate(path[:-1]):
                builder.add(previous, label, ('read', i, letter.symbol, step))
                previous = ('read', i, letter.symbol, step)
            builder.add(previous, path[-1], ('var', i))
    previous = ('var', n)
    for j, clause in enumerate(cnf.clauses, 1):
        clause_memory = 2 * n + j
        builder.add(previous, Label.open(clause_memory), ('clause', j))
        for literal in sorted(set(clause)):
            memory = 2 * literal - 1 if literal > 0 else -2 * literal
            builder.add(('clause', j), Label.recall(memory), ('satisfied', j))
        builder.add(('satisfied', j), Label.close(clause_memory), ('clause', j, 'done'))
        previous = ('clause', j, 'done')
    joined = previous
    recalled, counted = joined, joined
    for j in range(1, m + 1):
        builder.add(recalled, Label.recall(2 * n + j), ('recalled', j))
        builder.add(counted, a, ('counted', j))
        recalled, counted = ('recalled', j), ('counted', j)
    first_clause = 2 * n + 1
    builder.add(recalled, Label.open(first_clause), ('overwrite', 'opened'))
    builder.add(('overwrite', 'opened'), b, ('overwrite', 'read'))
    builder.add(('overwrite', 'read'), Label.close(first_clause), 'final')
    builder.add(counted, b, 'final')
    mfa = builder.build(('var', 0), ['final'])
    logging.debug('3-SAT synchronisation automaton with %d states', mfa.state_count)
    return mfa


def random_pattern(rng, size, variables, alphabet):
    """
    Generate a random pattern with about ``size`` nodes that respects the nesting condition.

    :param random.Random rng: The source of randomness
    :param int size: Number of nodes of the tree
    :param variables: Variable names to draw from
    :param alphabet: Terminal symbols to draw from
    :rtype: mfaregex.syntax.RegexAst
    """
    variables = list(variables)
    alphabet = sorted(alphabet)

    def leaf(forbidden):
        allowed = [name for name in variables if name not in forbidden]
        roll = rng.random()
        if allowed and roll < 0.3:
            return Recall(rng.choice(allowed))
        if roll > 0.95:
            return Epsilon()
        return Literal(rng.choice(alphabet))

    def build(budget, forbidden):
        if budget <= 1:
            return leaf(forbidden)
        allowed = [name for name in variables if name not in forbidden]
        choices = ['plus'] + (['define'] * 2 if allowed else [])
        if budget >= 3:
            choices += ['concat'] * 3 + ['alt'] * 2
        kind = rng.choice(choices)
        if kind == 'plus':
            return Plus(build(budget - 1, forbidden))
        if kind == 'define':
            name = rng.choice(allowed)
            # ε bodies reset a variable that may already be set
            if rng.random() < 0.25:
                return VarDef(name, Epsilon())
            return VarDef(name, build(budget - 1, forbidden | {name}))
        left = rng.randint(1, budget - 2)
        node_type = Concat if kind == 'concat' else Alt
        return node_type(build(left, forbidden), build(budget - 1 - left, forbidden))

    return RegexAst(build(size, frozenset()))


def parse_cnf(text):
    """
    Read a DIMACS-like formula: ``c`` comment lines, an optional ``p cnf n m`` header and one clause per line as
    signed integers with an optional trailing ``0``.

    Without a header the variable count is the largest variable used.

    :raises InvalidInstance: If the text is malformed
    :rtype: CnfInstance
    """
    declared = None
    clauses = []
    for number, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith('c') or line.startswith('%'):
            continue
        fields = line.split()
        if fields[0] == 'p':
            if len(fields) != 4 or fields[1] != 'cnf':
                raise InvalidInstance('Line {}: malformed header "{}"'.format(number, line))
            declared = _integer(fields[2], number)
            continue
        literals = [_integer(field, number) for field in fields]
        if literals and literals[-1] == 0:
            literals.pop()
        clauses.append(tuple(literals))
    used = max((abs(literal) for clause in clauses for literal in clause), default=1)
    return CnfInstance(declared if declared is not None else used, tuple(clauses))


def parse_setcover(text):
    """
    Read a set cover instance: the universe size on the first line, then one subset per line as integers.

    The universe is ``{1, ..., size}``.

    :raises InvalidInstance: If the text is malformed
    :return: The universe and the subsets
    :rtype: tuple
    """
    lines = [(number, line.strip()) for number, line in enumerate(text.splitlines(), 1)
             if line.strip() and not line.strip().startswith('#')]
    if not lines:
        raise InvalidInstance('Set cover instance is empty')
    size = _integer(lines[0][1], lines[0][0])
    subsets = [frozenset(_integer(field, number) for field in line.split()) for number, line in lines[1:]]
    return frozenset(range(1, size + 1)), subsets


def _integer(value, line_number):
    try:
        return int(value)
    except ValueError:
        raise InvalidInstance('Line {}: "{}" is not an integer'.format(line_number, value))

