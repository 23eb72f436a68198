import json

import pytest

from mfaregex.exceptions import SchemaViolation
from mfaregex.export import export_dot, export_json, import_json, label_from_dict, label_to_dict, load_mfa
from mfaregex.mfa import Label, MfaBuilder, canonical_mfa, mfa_accepts
from mfaregex.syntax import parse

from tests.automata import example_one_mfa


def small_mfa():
    builder = MfaBuilder(1)
    builder.add('p', Label.open(1), 'q').add('q', Label.char('a'), 'r').add('r', Label.close(1), 's')
    builder.add('s', Label.recall(1), 't').add('t', Label.eps(), 'u')
    return builder.build('p', ['u'])


class TestLabels(object):

    @pytest.mark.parametrize('label, document', [
        (Label.char('a'), {'kind': 'char', 'sym': 'a'}),
        (Label.eps(), {'kind': 'eps'}),
        (Label.recall(2), {'kind': 'recall', 'mem': 2}),
        (Label.open(1), {'kind': 'open', 'mem': 1}),
        (Label.close(1), {'kind': 'close', 'mem': 1}),
    ])
    def test_label_documents(self, label, document):
        assert label_to_dict(label) == document
        assert label_from_dict(document) == label

    @pytest.mark.parametrize('document', [
        {'kind': 'jump'},
        {'kind': 'char'},
        {'kind': 'recall'},
        {'kind': 'open', 'mem': True},
        'char',
    ])
    def test_invalid_labels(self, document):
        with pytest.raises(SchemaViolation):
            label_from_dict(document)


class TestJson(object):

    def test_export(self):
        document = export_json(small_mfa())
        assert document['memoryCount'] == 1
        assert document['initial'] == 0
        assert document['accepting'] == [5]
        assert document['states'] == 6
        assert document['transitions'][0] == {'from': 0, 'label': {'kind': 'open', 'mem': 1}, 'to': 1}

    def test_import_keeps_the_language(self):
        mfa = example_one_mfa()
        imported = import_json(json.dumps(export_json(mfa)))
        assert imported.transitions == mfa.transitions
        for word in ('abadb', 'adda', 'abab', ''):
            assert mfa_accepts(imported, word) is mfa_accepts(mfa, word)

    @pytest.mark.parametrize('document', [
        '{not json',
        '[]',
        {'memoryCount': 0, 'initial': 0, 'accepting': [], 'states': 1},
        {'memoryCount': '1', 'initial': 0, 'accepting': [], 'states': 1, 'transitions': []},
        {'memoryCount': 0, 'initial': 0, 'accepting': 0, 'states': 1, 'transitions': []},
        {'memoryCount': 0, 'initial': 0, 'accepting': [], 'states': 1, 'transitions': [{'from': 0}]},
        {'memoryCount': 0, 'initial': 0, 'accepting': [], 'states': 1,
         'transitions': [{'from': 0, 'label': {'kind': 'recall', 'mem': 1}, 'to': 0}]},
        {'memoryCount': 0, 'initial': 3, 'accepting': [], 'states': 1, 'transitions': []},
    ])
    def test_import_errors(self, document):
        with pytest.raises(SchemaViolation):
            import_json(document)

    def test_load(self, tmp_path):
        path = tmp_path / 'automaton.json'
        path.write_text(json.dumps(export_json(canonical_mfa(parse('$x{a+}b$x')))))
        assert mfa_accepts(load_mfa(str(path)), 'aabaa')


class TestDot(object):

    def test_export(self):
        lines = list(export_dot(small_mfa()))
        assert lines[0] == 'digraph {\n'
        assert lines[-1] == '}\n'
        assert '  5 [shape=doublecircle];\n' in lines
        assert '  start -> 0;\n' in lines
        assert '  0 -> 1 [label="o1"];\n' in lines
        assert '  2 -> 3 [label="c1"];\n' in lines
        assert '  3 -> 4 [label="1"];\n' in lines
        assert '  4 -> 5 [label="ε"];\n' in lines

    def test_quotes(self):
        builder = MfaBuilder()
        builder.add(0, Label.char('"'), 1)
        assert '  0 -> 1 [label="\\""];\n' in list(export_dot(builder.build(0, [1])))
