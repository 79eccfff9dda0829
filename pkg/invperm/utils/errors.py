"""
Exception hierarchy shared by every service.

Each class carries the exit code the command-line front end maps it to.
"""


class InvpermError(Exception):
    """Base class for all library errors."""

    exit_code = 1


class MalformedPermutationError(InvpermError, ValueError):
    exit_code = 2


class MalformedTableError(InvpermError, ValueError):
    exit_code = 2


class MalformedObjectError(InvpermError, ValueError):
    exit_code = 2


class DomainError(InvpermError, ValueError):
    """A map was applied outside the set it is defined on."""

    exit_code = 2


class PrecisionError(InvpermError, IndexError):
    exit_code = 2


class OracleLimitError(InvpermError):
    """A configured enumeration bound was exceeded."""

    exit_code = 3


class BfileParseError(InvpermError, ValueError):
    exit_code = 4

    def __init__(self, message: str, line_number: int):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class FixtureError(InvpermError):
    """A fixture is missing or could not be fetched."""

    exit_code = 4


class MethodUnavailableError(InvpermError, ValueError):
    """The requested computation path does not exist for a pattern set."""

    exit_code = 2


class OffsetError(InvpermError):
    """No constant shift aligns a generating function with its reference counts."""

    exit_code = 1
