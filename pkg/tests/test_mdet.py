import pytest

from mfaregex.exceptions import BudgetExceeded
from mfaregex.mdet import (
    CONTAINS, OMITS, RESET, bounded_sync_check, compute_mem_sync, has_non_sync_branch, is_memory_deterministic,
    is_mdet_regex, last_instructions, q1_query, q2_query,
)
from mfaregex.mfa import CLOSE, OPEN, Label, MfaBuilder, canonical_mfa
from mfaregex.syntax import parse

from tests.automata import (
    EXAMPLE_ONE_PATTERN, FIVE_VARIABLE_NONDETERMINISTIC_PATTERN, TWO_BRANCH_PATTERN, address_mfa, example_one_mfa,
)


def optional_open_mfa():
    """``p`` reaches ``r`` with or without opening memory 1, then reads an ``a``."""
    builder = MfaBuilder(1)
    builder.add('p', Label.open(1), 'q').add('q', Label.eps(), 'r').add('r', Label.char('a'), 's')
    builder.add('p', Label.eps(), 'r')
    return builder.build('p', ['s'])


def optional_reset_mfa():
    """``p`` reaches ``r`` by closing memory 1, or by opening and closing it, then reads an ``a``."""
    builder = MfaBuilder(1)
    builder.add('p', Label.open(1), 'q').add('q', Label.close(1), 'r').add('r', Label.char('a'), 's')
    builder.add('p', Label.close(1), 'r')
    return builder.build('p', ['s'])


class TestLastInstructions(object):

    def test_last_instructions(self):
        p, q, r, s = range(4)
        assert last_instructions(optional_open_mfa(), p, 1) == {p: {None}, q: {OPEN}, r: {None, OPEN}}

    def test_resets(self):
        p, q, r, s = range(4)
        mfa = optional_reset_mfa()
        assert last_instructions(mfa, p, 1) == {p: {None}, q: {OPEN}, r: {CLOSE}}
        assert last_instructions(mfa, p, 1, resets=True) == {p: {None}, q: {OPEN}, r: {CLOSE, RESET}}

    @pytest.mark.parametrize('target, mode, expected', [
        (2, CONTAINS, True),
        (2, OMITS, True),
        (1, CONTAINS, True),
        (1, OMITS, False),
        (0, CONTAINS, False),
        (3, CONTAINS, False),
    ])
    def test_q1_query(self, target, mode, expected):
        assert q1_query(optional_open_mfa(), 0, target, Label.open(1), mode) is expected

    @pytest.mark.parametrize('label, instruction, mode, expected', [
        (Label.char('a'), Label.open(1), CONTAINS, True),
        (Label.char('a'), Label.open(1), OMITS, True),
        (Label.char('a'), Label.close(1), CONTAINS, False),
        (Label.char('b'), Label.open(1), CONTAINS, False),
    ])
    def test_q2_query(self, label, instruction, mode, expected):
        assert q2_query(optional_open_mfa(), 0, label, instruction, mode) is expected


class TestMemSync(object):

    def test_optional_open_is_not_synchronised(self):
        memsync = compute_mem_sync(optional_open_mfa())
        assert not memsync(0, 0)
        assert memsync(3, 3)
        assert (0, 0) in memsync.pairs()

    def test_reset_is_not_synchronised_with_close(self):
        memsync = compute_mem_sync(optional_reset_mfa())
        assert not memsync(0, 0)
        assert memsync(2, 2)

    @pytest.mark.parametrize('pattern', [TWO_BRANCH_PATTERN, '$x{a+}b$x', EXAMPLE_ONE_PATTERN])
    def test_symmetric(self, pattern):
        mfa = canonical_mfa(parse(pattern))
        memsync = compute_mem_sync(mfa)
        for q1 in mfa.states:
            for q2 in mfa.states:
                assert memsync(q1, q2) is memsync(q2, q1)

    def test_recall_next_to_letter(self):
        builder = MfaBuilder(1)
        builder.add('p', Label.recall(1), 'q').add('p', Label.char('a'), 'q')
        memsync = compute_mem_sync(builder.build('p', ['q']))
        assert not memsync(0, 0)
        assert memsync(1, 1)


class TestNonSyncBranch(object):

    def test_witness(self):
        mfa = canonical_mfa(parse(FIVE_VARIABLE_NONDETERMINISTIC_PATTERN))
        witness = has_non_sync_branch(mfa)
        assert witness is not None
        assert not compute_mem_sync(mfa)(witness.p1, witness.p2)

    def test_witness_word_at_the_start(self):
        witness = has_non_sync_branch(optional_open_mfa())
        assert (witness.q, witness.p1, witness.p2) == (0, 0, 0)
        assert witness.word == ()

    def test_none_for_deterministic(self):
        assert has_non_sync_branch(address_mfa()) is None


class TestMemoryDeterminism(object):

    @pytest.mark.parametrize('pattern, expected', [
        ('(a|ab)+b', True),
        ('$x{a+}b$x', True),
        ('$x{(a|b)+}c$x', True),
        ('($x{a}b$x)+c', True),
        ('$x{a}$x{~}b$x', True),
        ('$x{a}($x{~}|c)b$x', True),
        ('$x{a}($x{~}|~)b$x', False),
        ('$x{a+}$x', False),
        (EXAMPLE_ONE_PATTERN, False),
        (TWO_BRANCH_PATTERN, False),
        (FIVE_VARIABLE_NONDETERMINISTIC_PATTERN, False),
    ])
    def test_is_mdet_regex(self, pattern, expected):
        assert is_mdet_regex(parse(pattern)) is expected

    @pytest.mark.parametrize('mfa, expected', [
        (address_mfa(), True),
        (example_one_mfa(), False),
        (optional_open_mfa(), False),
        (optional_reset_mfa(), False),
    ])
    def test_is_memory_deterministic(self, mfa, expected):
        assert is_memory_deterministic(mfa) is expected


class TestBoundedSyncCheck(object):

    def test_violation(self):
        violation = bounded_sync_check(example_one_mfa(), 3)
        assert violation.word == ('a',)
        assert violation.step == 1

    @pytest.mark.parametrize('pattern', ['$x{a+}b$x', '$x{(a|b)+}c$x', '($x{a}b$x)+c'])
    def test_deterministic_patterns_stay_synchronised(self, pattern):
        assert bounded_sync_check(canonical_mfa(parse(pattern)), 5) is None

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            bounded_sync_check(canonical_mfa(parse('$x{a+}b$x')), 10, budget=2)

    def test_budget_from_settings(self, small_budget):
        with pytest.raises(BudgetExceeded):
            bounded_sync_check(canonical_mfa(parse('$x{(a|b)+}c$x')), 12)
