import pytest

from mfaregex.exceptions import BudgetExceeded, MalformedRefWord
from mfaregex.oracle import RefClose, RefOpen, RefVar, dereference, enumerate_language, oracle_match
from mfaregex.syntax import parse

from tests.automata import RENAME_PATTERN


class TestDereference(object):

    @pytest.mark.parametrize('refword, expected', [
        (['a', 'b'], ('a', 'b')),
        ([RefOpen('x'), 'a', 'b', RefClose('x'), 'c', RefVar('x')], tuple('abcab')),
        ([RefVar('x'), 'a'], ('a',)),
        ([RefOpen('x'), 'a', RefClose('x'), RefOpen('x'), 'b', RefClose('x'), RefVar('x')], tuple('abb')),
        ([RefOpen('x'), 'a', RefOpen('y'), 'b', RefClose('y'), RefClose('x'), RefVar('y'), RefVar('x')],
         tuple('abbab')),
    ])
    def test_dereference(self, refword, expected):
        assert dereference(refword) == expected

    @pytest.mark.parametrize('refword', [
        [RefOpen('x'), 'a'],
        [RefClose('x')],
        [RefOpen('x'), RefVar('x'), RefClose('x')],
        [RefOpen('x'), RefOpen('x'), RefClose('x')],
    ])
    def test_malformed(self, refword):
        with pytest.raises(MalformedRefWord):
            dereference(refword)


class TestOracleMatch(object):

    @pytest.mark.parametrize('pattern, word, expected', [
        ('$x{(a|b)+}c$x', 'abcab', True),
        ('$x{(a|b)+}c$x', 'abcba', False),
        ('$x{(a|b)+}c$x', 'c', False),
        ('$x', '', True),
        ('$x{~}$x', '', True),
        ('a$x', 'a', True),
        ('$x{a+}$x', 'aaaa', True),
        ('$x{a+}$x', 'aaa', False),
        ('($x{a|b}$x)+', 'aabbaa', True),
        ('($x{a|b}$x)+', 'aabbab', False),
        ('a*', '', True),
        ('[ab]+', 'abba', True),
        (RENAME_PATTERN, 'abacbbab', True),
    ])
    def test_match(self, pattern, word, expected):
        assert oracle_match(parse(pattern), word) is expected

    def test_renaming_changes_the_language(self):
        renamed = parse('$x{a+}b$x($x c$x{b+})+$x{b+}a$x')
        assert oracle_match(renamed, 'abacbbab') is False

    def test_token_words(self):
        ast = parse('$x{a+}b$x')
        assert oracle_match(ast, ('a', 'b', 'a')) is True
        assert oracle_match(ast, ['a', 'b']) is False

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            oracle_match(parse('($x{a+}$x)+'), 'a' * 40, budget=10)


class TestEnumerateLanguage(object):

    @pytest.mark.parametrize('pattern, maxlen, alphabet, expected', [
        ('$x{a|b}$x', 4, 'ab', {'aa', 'bb'}),
        ('$x{a+}b$x', 5, 'ab', {'aba', 'aabaa'}),
        ('a|~', 3, 'ab', {'', 'a'}),
        ('$x{a+}$x', 1, 'a', set()),
    ])
    def test_enumerate(self, pattern, maxlen, alphabet, expected):
        assert enumerate_language(parse(pattern), maxlen, alphabet) == expected

    def test_token_alphabet(self):
        language = enumerate_language(parse('$x{a}$x'), 2, [('a',), 'a'])
        assert ('a', 'a') in language

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            enumerate_language(parse('a+'), 10, 'ab', budget=100)

    def test_budget_from_settings(self, valid_config):
        with pytest.raises(BudgetExceeded):
            enumerate_language(parse('a+'), 20, 'ab')
