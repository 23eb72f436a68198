"""Pattern grammar, syntax trees and tree utilities"""

from __future__ import absolute_import

import re
from collections import OrderedDict
from dataclasses import dataclass

from mfaregex.constants import METACHARACTERS
from mfaregex.exceptions import PatternSyntaxError, VariableNestingError

NAME_PATTERN = re.compile(r'[A-Za-z][0-9]*')
TRAILING_RECALL = re.compile(r'\$[A-Za-z][0-9]*$')

# Binding strength used by the printer
ALT_LEVEL, CONCAT_LEVEL, ATOM_LEVEL = 0, 1, 2


class Node(object):
    """Base class of all syntax tree nodes."""

    children = ()
    level = ATOM_LEVEL


@dataclass(frozen=True)
class Literal(Node):
    symbol: object


@dataclass(frozen=True)
class Epsilon(Node):
    pass


@dataclass(frozen=True)
class Recall(Node):
    name: str


@dataclass(frozen=True)
class Concat(Node):
    left: Node
    right: Node

    level = CONCAT_LEVEL

    @property
    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class Alt(Node):
    left: Node
    right: Node

    level = ALT_LEVEL

    @property
    def children(self):
        return (self.left, self.right)


@dataclass(frozen=True)
class Plus(Node):
    child: Node

    @property
    def children(self):
        return (self.child,)


@dataclass(frozen=True)
class VarDef(Node):
    name: str
    child: Node

    @property
    def children(self):
        return (self.child,)


def iter_nodes(node):
    """
    Yield all nodes of a tree in preorder.

    :param Node node: The root node
    """
    stack = [node]
    while stack:
        current = stack.pop()
        yield current
        stack.extend(reversed(current.children))


def variables_in_order(node):
    """
    Return the variables of a tree in order of their first occurrence.

    :param Node node: The root node
    :rtype: tuple
    """
    names = OrderedDict()
    for current in iter_nodes(node):
        if isinstance(current, (Recall, VarDef)):
            names.setdefault(current.name, None)
    return tuple(names)


def check_nesting(node):
    """
    Check that no variable occurs inside one of its own definitions.

    :param Node node: The root node
    :raises VariableNestingError: If a definition contains its own variable
    """
    for current in iter_nodes(node):
        if isinstance(current, VarDef) and current.name in variables_in_order(current.child):
            raise VariableNestingError(
                'Variable "{}" is redefined or recalled inside its own definition'.format(current.name))


class RegexAst(object):
    """An immutable, validated syntax tree together with its interned variables."""

    def __init__(self, root):
        check_nesting(root)
        self.root = root
        self.variables = variables_in_order(root)
        nodes, children = [], []
        stack = [(root, None)]
        while stack:
            node, parent = stack.pop()
            if parent is not None:
                children[parent].append(len(nodes))
            stack.extend((child, len(nodes)) for child in reversed(node.children))
            nodes.append(node)
            children.append([])
        self._nodes = tuple(nodes)
        self.children = tuple(tuple(indices) for indices in children)
        """Per node index, the node indices of its children."""

    def __eq__(self, other):
        return isinstance(other, RegexAst) and self.root == other.root

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.root)

    def __repr__(self):
        return 'RegexAst({!r})'.format(to_pattern(self))

    @property
    def nodes(self):
        """All nodes in preorder; a node's position in this tuple is its node index."""
        return self._nodes

    @property
    def alphabet(self):
        return frozenset(node.symbol for node in self._nodes if isinstance(node, Literal))

    def memory_of(self, name):
        """
        Return the 1-based memory index of a variable.

        :param str name: A variable name of this tree
        :rtype: int
        """
        return self.variables.index(name) + 1


class Parser(object):
    """
    Recursive descent parser for the pattern grammar::

        alternation   = concatenation { "|" concatenation }
        concatenation = repetition { repetition }
        repetition    = atom { "+" | "*" }
        atom          = literal | "~" | "(" alternation ")" | class | "$" name [ "{" alternation "}" ]
    """

    def __init__(self, text):
        self.text = text
        self.pos = 0

    def parse(self):
        self.skip_whitespace()
        if self.at_end():
            raise PatternSyntaxError('Empty pattern', 0)
        node = self.parse_alternation()
        if not self.at_end():
            raise PatternSyntaxError('Unexpected "{}"'.format(self.peek()), self.pos)
        return node

    def at_end(self):
        return self.pos >= len(self.text)

    def skip_whitespace(self):
        while not self.at_end() and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_whitespace()
        return None if self.at_end() else self.text[self.pos]

    def consume(self, expected=None):
        char = self.peek()
        if char is None:
            raise PatternSyntaxError('Unexpected end of pattern', self.pos)
        if expected is not None and char != expected:
            raise PatternSyntaxError('Expected "{}" but found "{}"'.format(expected, char), self.pos)
        self.pos += 1
        return char

    def parse_alternation(self):
        node = self.parse_concatenation()
        while self.peek() == '|':
            self.consume('|')
            node = Alt(node, self.parse_concatenation())
        return node

    def parse_concatenation(self):
        node = None
        while self.peek() is not None and self.peek() not in '|)}':
            term = self.parse_repetition()
            node = term if node is None else Concat(node, term)
        if node is None:
            raise PatternSyntaxError('Empty alternative, use "~" for the empty word', self.pos)
        return node

    def parse_repetition(self):
        node = self.parse_atom()
        while self.peek() in ('+', '*'):
            if self.consume() == '+':
                node = Plus(node)
            else:
                node = Alt(Plus(node), Epsilon())
        return node

    def parse_atom(self):
        start = self.pos
        char = self.consume()
        if char == '(':
            node = self.parse_alternation()
            self.consume(')')
            return node
        if char == '[':
            return self.parse_class(start)
        if char == '~':
            return Epsilon()
        if char == '$':
            return self.parse_variable(start)
        if char == '\\':
            if self.pos >= len(self.text):
                raise PatternSyntaxError('Dangling escape', start)
            self.pos += 1
            return Literal(self.text[self.pos - 1])
        if char in METACHARACTERS:
            raise PatternSyntaxError('Unexpected "{}"'.format(char), start)
        return Literal(char)

    def parse_variable(self, start):
        match = NAME_PATTERN.match(self.text, self.pos)
        if match is None:
            raise PatternSyntaxError('Expected a variable name after "$"', self.pos)
        name = match.group()
        self.pos = match.end()
        if self.peek() != '{':
            return Recall(name)
        self.consume('{')
        child = self.parse_alternation()
        if self.peek() != '}':
            raise PatternSyntaxError('Unbalanced "{{" of variable "{}"'.format(name), start)
        self.consume('}')
        return VarDef(name, child)

    def parse_class(self, start):
        symbols = []
        while True:
            if self.at_end():
                raise PatternSyntaxError('Unterminated character class', start)
            char = self.text[self.pos]
            self.pos += 1
            if char == ']':
                break
            if char == '\\':
                if self.at_end():
                    raise PatternSyntaxError('Dangling escape', self.pos - 1)
                char = self.text[self.pos]
                self.pos += 1
            if self.text.startswith('-', self.pos) and not self.text.startswith('-]', self.pos):
                end = self.text[self.pos + 1:self.pos + 2]
                if not end or end < char:
                    raise PatternSyntaxError('Invalid range in character class', self.pos)
                self.pos += 2
                symbols.extend(chr(code) for code in range(ord(char), ord(end) + 1))
            else:
                symbols.append(char)
        symbols = list(OrderedDict.fromkeys(symbols))
        if not symbols:
            raise PatternSyntaxError('Empty character class', start)
        node = Literal(symbols[0])
        for symbol in symbols[1:]:
            node = Alt(node, Literal(symbol))
        return node


def parse(text):
    """
    Parse a pattern into a validated syntax tree.

    :param str text: The pattern
    :raises PatternSyntaxError: If the pattern is not well-formed
    :raises VariableNestingError: If a variable occurs inside its own definition
    :rtype: RegexAst
    """
    return RegexAst(Parser(text).parse())


def vars(ast):
    """
    Return the set of variables that are defined or recalled in a tree.

    :param RegexAst ast: A syntax tree
    :rtype: frozenset
    """
    return frozenset(ast.variables)


def _rename(node, old, new):
    if isinstance(node, Recall):
        return Recall(new) if node.name == old else node
    if isinstance(node, VarDef):
        return VarDef(new if node.name == old else node.name, _rename(node.child, old, new))
    if isinstance(node, Plus):
        return Plus(_rename(node.child, old, new))
    if isinstance(node, (Concat, Alt)):
        return type(node)(_rename(node.left, old, new), _rename(node.right, old, new))
    return node


def rename_variable(ast, old, new):
    """
    Relabel every definition and recall of a variable.

    :param RegexAst ast: A syntax tree
    :param str old: The variable to rename
    :param str new: Its new name, which may already be in use
    :raises VariableNestingError: If the renamed tree violates the nesting condition
    :rtype: RegexAst
    """
    if old not in ast.variables:
        return ast
    return RegexAst(_rename(ast.root, old, new))


def _escape(symbol):
    if not isinstance(symbol, str) or len(symbol) != 1:
        raise ValueError('Only single character symbols can be printed, got {!r}'.format(symbol))
    if symbol in METACHARACTERS or symbol.isspace():
        return '\\' + symbol
    return symbol


def _print(node, level):
    if isinstance(node, Literal):
        text = _escape(node.symbol)
    elif isinstance(node, Epsilon):
        text = '~'
    elif isinstance(node, Recall):
        text = '$' + node.name
    elif isinstance(node, VarDef):
        text = '${}{{{}}}'.format(node.name, _print(node.child, ALT_LEVEL))
    elif isinstance(node, Plus):
        text = _print(node.child, ATOM_LEVEL) + '+'
    elif isinstance(node, Alt):
        text = _print(node.left, ALT_LEVEL) + '|' + _print(node.right, CONCAT_LEVEL)
    else:
        left = _print(node.left, CONCAT_LEVEL)
        right = _print(node.right, ATOM_LEVEL)
        if right[0].isdigit() and TRAILING_RECALL.search(left):
            right = '\\' + right
        text = left + right
    if node.level < level:
        text = '(' + text + ')'
    return text


def to_pattern(ast):
    """
    Print a syntax tree in the pattern grammar such that parsing gives the same tree back.

    :param ast: A syntax tree or a node
    :rtype: str
    """
    root = ast.root if isinstance(ast, RegexAst) else ast
    return _print(root, ALT_LEVEL)
