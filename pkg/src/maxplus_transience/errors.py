"""Exception hierarchy shared by every module.

The CLI maps each class to a process exit code, so new error kinds should
subclass one of these rather than raising bare ``ValueError``.
"""


class TransienceError(Exception):
    """Base class for all toolkit errors."""


class InputError(TransienceError, ValueError):
    """Malformed input: bad dimensions, unparsable tokens, out-of-range parameters."""


class PreconditionError(TransienceError):
    """Input is well formed but violates a mathematical hypothesis (e.g. reducibility)."""


class ResourceError(TransienceError):
    """An enumeration or search exceeded its configured budget."""


class ConsistencyError(TransienceError):
    """An internal invariant failed; this indicates a bug or a violated theorem."""
