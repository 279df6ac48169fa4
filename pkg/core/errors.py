"""
Exception hierarchy for the algebra kernel.

Library code raises these; the command handler turns them into one-line
diagnostics.
"""

from dataclasses import dataclass
from typing import Optional


@dataclass(frozen=True)
class SourcePosition:
    """1-based line/column of a token in the source text."""
    line: int
    column: int

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


class CAError(Exception):
    """Base class for every error the kernel reports to a user."""

    def __init__(self, message: str, position: Optional[SourcePosition] = None):
        super().__init__(message)
        self.message = message
        self.position = position

    def with_position(self, position: Optional[SourcePosition]) -> "CAError":
        """Attach a position unless one is already known."""
        if self.position is None and position is not None:
            self.position = position
        return self

    def __str__(self) -> str:
        if self.position is not None:
            return f"{self.position}: {self.message}"
        return self.message


class LexicalError(CAError):
    """Illegal character in the source text."""


class ParseError(CAError):
    """Unexpected token, unbalanced parenthesis or premature end of input."""


class TypeCheckError(CAError):
    """Ill-typed expression: bad coercion, arity or unsupported operator."""


class UndeclaredSymbolError(TypeCheckError):
    """A free symbol was used without a declaration."""


class AmbiguousLiteralError(TypeCheckError):
    """A reserved literal (i, j, k, Zero, Unit) has no typing context."""


class LookupFailure(CAError):
    """Unknown structure, carrier or law name."""


class NotInvertible(CAError):
    """Inversion (or division) of a zero or non-invertible element."""


class BindingError(CAError):
    """Cyclic binding or conflicting redeclaration."""
