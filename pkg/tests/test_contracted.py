import pytest

from mfaregex.contracted import (
    ReducedInstructionSet, apply_status_update, build_contracted_tables, compress,
)
from mfaregex.mfa import CLOSE, CLOSED, OPEN, OPENED, Label, MfaBuilder

from tests.automata import example_one_mfa


class TestCompress(object):

    @pytest.mark.parametrize('labels, expected', [
        ([], (None, None)),
        ([Label.eps()], (None, None)),
        ([Label.open(1), Label.close(1)], (CLOSE, None)),
        ([Label.close(1), Label.open(1)], (OPEN, None)),
        ([Label.open(1), Label.eps(), Label.open(2), Label.close(1)], (CLOSE, OPEN)),
        ([Label.close(2), Label.close(2)], (None, CLOSE)),
    ])
    def test_keeps_last_instruction(self, labels, expected):
        assert compress(labels, 2) == expected

    def test_repr(self):
        assert repr(compress([Label.open(1), Label.close(2)], 2)) == '{o1, c2}'
        assert repr(ReducedInstructionSet.empty(3)) == '{}'

    def test_contains(self):
        reduced = compress([Label.open(2), Label.close(1)], 3)
        assert reduced.contains(Label.open(2))
        assert not reduced.contains(Label.close(2))


class TestApplyStatusUpdate(object):

    @pytest.mark.parametrize('statuses, labels, expected', [
        ((CLOSED, CLOSED), [Label.open(1)], (OPENED, CLOSED)),
        ((OPENED, OPENED), [Label.close(2)], (OPENED, CLOSED)),
        ((OPENED, CLOSED), [], (OPENED, CLOSED)),
        ((CLOSED, CLOSED), [Label.open(2), Label.close(2)], (CLOSED, CLOSED)),
    ])
    def test_update(self, statuses, labels, expected):
        assert apply_status_update(statuses, compress(labels, 2)) == expected


class TestContractedTables(object):

    def setup_method(self):
        self.mfa = example_one_mfa()
        self.tables = build_contracted_tables(self.mfa)
        self.names = {
            'start': 0, 'x': 1, 'xa': 2, 'y': 3, 'yb': 4, 'ybb': 5, 'joined': 6, 'ya': 7, 'yaa': 8,
            'recalled': 9, 'loop': 10, 'final': 11,
        }

    def test_delta_contr(self):
        n = self.names
        assert self.tables.delta_contr(n['start'], Label.char('a')) == frozenset([n['xa'], n['yaa']])
        assert self.tables.delta_contr(n['xa'], Label.char('b')) == frozenset([n['ybb']])
        assert self.tables.delta_contr(n['xa'], Label.char('d')) == frozenset()
        assert self.tables.delta_contr(n['loop'], Label.recall(1)) == frozenset([n['recalled']])

    def test_closure(self):
        n = self.names
        assert set(self.tables.delta_contr(n['xa'])) == {n['xa'], n['y'], n['yb']}
        assert self.tables.closure[n['start']][0] == n['start']

    def test_instructions(self):
        n = self.names
        assert self.tables.instructions(n['xa'], Label.char('b')) == (CLOSE, OPEN)
        assert self.tables.instructions(n['ybb'], Label.recall(1)) == (None, CLOSE)
        assert self.tables.instructions(n['ybb'], Label.char('d')) is None

    def test_consuming_labels(self):
        n = self.names
        assert self.tables.consuming_labels(n['loop']) == (Label.recall(1), Label.recall(2))
        assert self.tables.consuming_labels(n['final']) == ()

    def test_instructions_of_first_path(self):
        builder = MfaBuilder(1)
        builder.add(0, Label.open(1), 1).add(1, Label.eps(), 2).add(0, Label.eps(), 2)
        builder.add(2, Label.char('a'), 3)
        tables = build_contracted_tables(builder.build(0, [3]))
        assert tables.delta_contr(0, Label.char('a')) == frozenset([3])
        # the direct ε edge is found first
        assert tables.instructions(0, Label.char('a')) == (None,)
        assert tables.resets(0, Label.char('a')) == frozenset()

    def test_resets_of_open_then_close(self):
        builder = MfaBuilder(2)
        builder.add(0, Label.close(1), 1).add(1, Label.open(1), 2).add(2, Label.close(1), 3)
        builder.add(3, Label.open(2), 4).add(4, Label.char('b'), 5)
        tables = build_contracted_tables(builder.build(0, [5]))
        assert tables.instructions(0, Label.char('b')) == (CLOSE, OPEN)
        assert tables.resets(0, Label.char('b')) == frozenset([0, 1])
        assert tables.resets(0, Label.char('a')) == frozenset()

    def test_resets_on_example(self):
        n = self.names
        assert self.tables.resets(n['ybb'], Label.recall(1)) == frozenset()
        assert self.tables.resets(n['xa'], Label.char('b')) == frozenset([1])
