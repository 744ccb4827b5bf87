"""Exception hierarchy.

Validation problems (bad models, bad files) derive from ``InvalidModelError``;
everything else that can go wrong while computing derives from ``FlexError``
directly. The CLI maps the two families to different exit codes.
"""

from __future__ import annotations


class FlexError(Exception):
    """Base class for all errors raised by decflex."""


class UnknownLabelError(FlexError, LookupError):
    def __init__(self, kind: str, label: str) -> None:
        super().__init__(f"unknown {kind} label: {label!r}")
        self.kind = kind
        self.label = label


class OutOfRangeError(FlexError, ValueError):
    pass


class BadIntervalError(FlexError, ValueError):
    pass


class EmptyInputError(FlexError, ValueError):
    pass


class MissingDistributionError(FlexError, ValueError):
    pass


class InvalidModelError(FlexError, ValueError):
    """A model, distribution or evidence table breaks one of its invariants."""

    def __init__(self, message: str, violations: list | None = None) -> None:
        super().__init__(message)
        self.violations = list(violations or [])


class MismatchedStatesError(InvalidModelError):
    pass


class SchemaError(InvalidModelError):
    """A model document has the wrong shape; ``path`` names the offending key."""

    def __init__(self, path: str, message: str) -> None:
        super().__init__(f"{path}: {message}")
        self.path = path


class DocumentSyntaxError(InvalidModelError):
    def __init__(self, message: str, line: int, column: int) -> None:
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class ZeroProbabilityEvidenceError(FlexError, ValueError):
    pass


class IllegalRevisionError(FlexError, ValueError):
    pass


class PolicyExplosionError(FlexError, ValueError):
    pass
