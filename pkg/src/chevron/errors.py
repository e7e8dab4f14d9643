"""Exception hierarchy shared by the library and the CLI exit-code mapping."""


class ChevronError(Exception):
    """Base class for all package errors."""


class InputError(ChevronError, ValueError):
    """Malformed or invalid input data (CLI exit code 2)."""


class ProfileError(InputError):
    """A profile file or profile object violates its format or invariants."""


class AnalysisError(ChevronError, ValueError):
    """A well-formed input could not be analysed (CLI exit code 3)."""
