class MfaRegexException(Exception):
    """Base exception for all mfaregex errors."""


class PatternSyntaxError(MfaRegexException):
    """Raised if a pattern does not follow the pattern grammar."""

    def __init__(self, message, position=None):
        if position is not None:
            message = '{} (at position {})'.format(message, position)
        super(PatternSyntaxError, self).__init__(message)
        self.position = position


class VariableNestingError(MfaRegexException):
    """Raised if a variable occurs inside its own definition."""


class MalformedRefWord(MfaRegexException):
    """Raised if the brackets of a ref-word do not pair up."""


class BudgetExceeded(MfaRegexException):
    """Raised if an exhaustive search runs out of its configured budget."""


class SchemaViolation(MfaRegexException):
    """Raised if an automaton document or an automaton is inconsistent."""


class AvdTooLarge(MfaRegexException):
    """Raised if a memory-reuse automaton is requested with fewer memories than the avd."""


class CapExceeded(MfaRegexException):
    """Raised if a brute-force analysis is asked for more variables than allowed."""


class EngineRefused(MfaRegexException):
    """Raised if an engine is asked to match a pattern it is not correct for."""


class InvalidEngine(MfaRegexException):
    """Raised if an unknown engine was requested."""


class EngineAlreadyRegistered(MfaRegexException):
    """Raised if another engine with the same id has already been registered."""


class InvalidInstance(MfaRegexException):
    """Raised if a generator instance (CNF or set cover) is malformed."""


class InvalidSettings(MfaRegexException):
    """Raised if a settings file contains an unusable value."""
