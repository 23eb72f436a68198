import pytest
from mock import patch

from mfaregex.utils import as_word, format_word, read_word, timed


class TestAsWord(object):

    @pytest.mark.parametrize('word, expected', [
        ('abc', 'abc'),
        (('ab', 'c'), ('ab', 'c')),
        (['ab', 'c'], ('ab', 'c')),
        (iter('ab'), ('a', 'b')),
        ('', ''),
    ])
    def test_as_word(self, word, expected):
        assert as_word(word) == expected


class TestReadWord(object):

    @pytest.mark.parametrize('value, tokens, expected', [
        ('abc', False, 'abc'),
        ('[add] j0 ;', True, ('[add]', 'j0', ';')),
        ('', True, ()),
    ])
    def test_literal(self, value, tokens, expected):
        assert read_word(value, tokens=tokens) == expected

    def test_from_file(self, tmp_path):
        path = tmp_path / 'word.bin'
        path.write_bytes(b'ab\xffc')
        assert read_word(str(path), from_file=True) == 'ab\xffc'

    def test_tokens_from_file(self, tmp_path):
        path = tmp_path / 'word.txt'
        path.write_bytes(b'[add] a 1\n;\n')
        assert read_word(str(path), from_file=True, tokens=True) == ('[add]', 'a', '1', ';')


class TestFormatWord(object):

    @pytest.mark.parametrize('word, expected', [
        ('abc', 'abc'),
        (('a', 'b'), 'ab'),
        (('[add]', 'j0', ';'), '[add] j0 ;'),
        ((), ''),
    ])
    def test_format_word(self, word, expected):
        assert format_word(word) == expected


class TestTimed(object):

    @patch('mfaregex.utils.time')
    @patch('mfaregex.utils.logging')
    def test_logs_duration(self, mock_logging, mock_time):
        mock_time.time.side_effect = [10.0, 12.5]
        with timed('Work'):
            pass
        mock_logging.info.assert_called_once_with('Work took 2.50s')
