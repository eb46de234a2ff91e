# -*- coding: utf-8 -*-

"""
Exceptions raised across the package.

Classes:
    - :py:class:`ArrovianError` base class of every error raised here.
    - :py:class:`BadDimension` a tuple or table has an unsupported size.
    - :py:class:`DimensionMismatch` two operands disagree on A or N.
    - :py:class:`CycleColumn` a profile column is a preference cycle.
    - :py:class:`InvalidProfile` a derived matrix is not a profile.
    - :py:class:`NonStrictRow` a row that must be strict contains e.
    - :py:class:`UnsupportedAlternativeCount` the operation needs A = 3.
    - :py:class:`ParseError` malformed text input.
    - :py:class:`IndexOutOfRange` an individual or component index is invalid.
    - :py:class:`TooLarge` an exhaustive operation exceeds its bound.
    - :py:class:`LoadError` a SWF or profile file is inconsistent.
    - :py:class:`PreconditionFailed` an axiom required by an operation fails.
    - :py:class:`InternalDichotomyError` neither Arrow case matched.
    - :py:class:`WitnessNotFound` no witness of the requested form exists.
    - :py:class:`WitnessValidationError` a constructed witness did not cycle.
"""

__author__ = "Mir Sazzat Hossain"

from typing import Optional


class ArrovianError(Exception):
    """Base class for all package errors."""


class BadDimension(ArrovianError, ValueError):
    """Raised when A < 3, N < 2 or a table has the wrong length."""


class DimensionMismatch(ArrovianError, ValueError):
    """Raised when operands disagree on the number of alternatives or individuals."""


class CycleColumn(ArrovianError, ValueError):
    """Raised when a profile column classifies as a preference cycle."""

    def __init__(self, individual: int, column: str) -> None:
        """
        Initialize the CycleColumn error.

        :param individual: 1-based index of the offending individual
        :type individual: int
        :param column: symbols of the offending column
        :type column: str
        """
        super(CycleColumn, self).__init__(
            f"column {individual} ({column}) is a preference cycle"
        )
        self.individual = individual
        self.column = column


class InvalidProfile(ArrovianError, ValueError):
    """Raised when a derived matrix is not a valid profile."""


class NonStrictRow(ArrovianError, ValueError):
    """Raised when a row required to be strict contains e."""


class UnsupportedAlternativeCount(ArrovianError, ValueError):
    """Raised when an operation only defined at A = 3 receives another A."""


class ParseError(ArrovianError, ValueError):
    """Raised on malformed relation, profile or SWF text."""

    def __init__(
        self,
        message: str,
        line: Optional[int] = None,
        column: Optional[int] = None,
    ) -> None:
        """
        Initialize the ParseError.

        :param message: description of the problem
        :type message: str
        :param line: 1-based line number, if known
        :type line: int
        :param column: 1-based column number, if known
        :type column: int
        """
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        prefix = f"{', '.join(where)}: " if where else ""
        super(ParseError, self).__init__(prefix + message)
        self.line = line
        self.column = column


class IndexOutOfRange(ArrovianError, ValueError):
    """Raised when an individual or component index is out of range."""


class TooLarge(ArrovianError, ValueError):
    """Raised when an exhaustive operation exceeds its size bound."""


class LoadError(ArrovianError, ValueError):
    """Raised when a SWF or profile file is well formed but inconsistent."""


class PreconditionFailed(ArrovianError):
    """Raised when an axiom an operation relies on does not hold."""

    def __init__(self, axiom: str, detail: str = "") -> None:
        """
        Initialize the PreconditionFailed error.

        :param axiom: name of the failed axiom
        :type axiom: str
        :param detail: optional counterexample description
        :type detail: str
        """
        message = f"precondition failed: {axiom}"
        if detail:
            message += f" ({detail})"
        super(PreconditionFailed, self).__init__(message)
        self.axiom = axiom


class InternalDichotomyError(ArrovianError):
    """Raised when neither Arrow case applies after both lemmas hold."""


class WitnessNotFound(ArrovianError):
    """Raised when no witness of the requested shape exists."""


class WitnessValidationError(ArrovianError):
    """Raised when a constructed profile does not aggregate to a cycle."""
