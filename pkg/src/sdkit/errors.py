"""Exception hierarchy shared by the library, CLI and service.

The CLI maps these onto exit codes (invariant violation: 1, parse error: 2,
wrong data kind: 3); the HTTP service maps them onto status codes.
"""


class SdkitError(Exception):
    """Base class for all errors raised by sdkit."""


class InvariantViolation(SdkitError):
    """A domain invariant does not hold (bad matrix, bad weights, bad level...)."""


class ParseError(SdkitError):
    """A file or payload could not be parsed into a known format."""


class WrongDataKind(SdkitError):
    """The operation does not apply to the kind of data in hand."""
