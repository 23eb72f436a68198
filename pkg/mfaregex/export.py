"""JSON and DOT export of memory automata"""

from __future__ import absolute_import

import json

from mfaregex.constants import LABEL_KINDS
from mfaregex.exceptions import SchemaViolation
from mfaregex.mfa import CHAR, CLOSE, EPS, OPEN, RECALL, Label, Mfa


def label_to_dict(label):
    document = {'kind': label.kind}
    if label.kind == CHAR:
        document['sym'] = label.symbol
    elif label.kind != EPS:
        document['mem'] = label.memory
    return document


def label_from_dict(document):
    """
    :raises SchemaViolation: If the label document is incomplete
    :rtype: Label
    """
    if not isinstance(document, dict) or document.get('kind') not in LABEL_KINDS:
        raise SchemaViolation('Invalid label {!r}'.format(document))
    kind = document['kind']
    if kind == CHAR:
        if not isinstance(document.get('sym'), str):
            raise SchemaViolation('Terminal label needs a string "sym"')
        return Label.char(document['sym'])
    if kind == EPS:
        return Label.eps()
    memory = document.get('mem')
    if not isinstance(memory, int) or isinstance(memory, bool):
        raise SchemaViolation('Label "{}" needs an integer "mem"'.format(kind))
    return {RECALL: Label.recall, OPEN: Label.open, CLOSE: Label.close}[kind](memory)


def export_json(mfa):
    """
    Serialise an automaton to a JSON compatible document.

    :param Mfa mfa: The automaton
    :rtype: dict
    """
    return {
        'memoryCount': mfa.memory_count,
        'initial': mfa.initial,
        'accepting': sorted(mfa.accepting),
        'states': mfa.state_count,
        'transitions': [{'from': source, 'label': label_to_dict(label), 'to': target}
                        for source, label, target in mfa.transitions],
    }


def import_json(document):
    """
    Build an automaton from a JSON document (a dict or its text).

    :raises SchemaViolation: If required keys are missing or the automaton is inconsistent
    :rtype: Mfa
    """
    if isinstance(document, str):
        try:
            document = json.loads(document)
        except ValueError as exc:
            raise SchemaViolation('Invalid JSON: {}'.format(exc)) from exc
    if not isinstance(document, dict):
        raise SchemaViolation('An automaton document must be an object')
    for key in ('memoryCount', 'initial', 'accepting', 'states', 'transitions'):
        if key not in document:
            raise SchemaViolation('Missing key "{}"'.format(key))
    if not isinstance(document['accepting'], list) or not isinstance(document['transitions'], list):
        raise SchemaViolation('"accepting" and "transitions" must be lists')
    for key in ('memoryCount', 'initial', 'states'):
        if not isinstance(document[key], int) or isinstance(document[key], bool):
            raise SchemaViolation('"{}" must be an integer'.format(key))
    try:
        transitions = [(t['from'], label_from_dict(t['label']), t['to']) for t in document['transitions']]
    except (KeyError, TypeError) as exc:
        raise SchemaViolation('Invalid transition: {}'.format(exc)) from exc
    return Mfa(document['states'], document['initial'], document['accepting'], document['memoryCount'],
               transitions)


def load_mfa(path):
    """Read an automaton from a JSON file."""
    with open(path) as f:
        return import_json(f.read())


def _gvquote(s):
    return '"{}"'.format(str(s).replace('\\', '\\\\').replace('"', r'\"'))


def export_dot(mfa):
    """
    Produce a graphviz dot file as an iterable of lines.

    Use like so::

        with open('automaton.dot', 'w') as f:
            f.writelines(export_dot(mfa))
    """
    yield 'digraph {\n'
    yield '  rankdir=LR;\n'
    yield '  start [shape=point style=invis];\n'
    for state in mfa.states:
        shape = 'doublecircle' if mfa.is_accepting(state) else 'circle'
        yield '  {} [shape={}];\n'.format(state, shape)
    yield '  start -> {};\n'.format(mfa.initial)
    for source, label, target in mfa.transitions:
        yield '  {} -> {} [label={}];\n'.format(source, target, _gvquote(label))
    yield '}\n'
