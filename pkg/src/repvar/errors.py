"""Exception types shared across the library."""

from __future__ import annotations


class RepvarError(Exception):
    """Base class for all library errors."""


class NotAField(RepvarError):
    """An operation requiring a field was given a non-field ring."""


class ShapeError(RepvarError):
    """Matrix or block dimensions do not match."""


class UnknownVertex(RepvarError):
    """A vertex name is not declared in the quiver."""


class NotAdmissible(RepvarError):
    """The relation ideal does not absorb all long paths."""


class QuiverMismatch(RepvarError):
    """Two objects live over different bound quivers or rings."""


class UnsupportedField(RepvarError):
    """The requested computation is not offered over this field."""


class GenerationFailed(RepvarError):
    """The random module generator could not reach the requested dimensions."""


class NotACocycle(RepvarError):
    """A matrix tuple fails the cocycle condition against some relation."""


class NotARepresentation(RepvarError):
    """Matrices do not satisfy the relations of the bound quiver."""


class HypothesisFailed(RepvarError):
    """A checked precondition of a constructive procedure does not hold."""


class FlagsRequired(RepvarError):
    """Triangularity / global-dimension flags are needed but absent."""


class BadParameters(RepvarError):
    """Invalid weight or parameter data for a canonical algebra."""


# Single-parameter variant used by the homogeneous family constructor.
BadParameter = BadParameters


class CertificateRefused(RepvarError):
    """A nonsingularity certificate could not be issued.

    ``failed`` names the hypothesis that failed; ``details`` carries the
    offending numeric data.
    """

    def __init__(self, failed: str, details: str = ""):
        self.failed = failed
        self.details = details
        super().__init__(f"certificate refused: {failed}" + (f" ({details})" if details else ""))


class ParseError(RepvarError):
    """Syntax error in a quiver/module text file."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.line = line
        self.col = col
        where = ""
        if line is not None:
            where = f" at line {line}" + (f", col {col}" if col is not None else "")
        super().__init__(message + where)


class InvariantViolation(RepvarError):
    """An internal exact identity failed; indicates a bug, not bad input."""
