"""Exception hierarchy shared by every attribute_advisor module."""

from __future__ import annotations

from typing import Optional


class AdvisorError(Exception):
    """Base class for all errors raised by the library."""


# ----------------------------------------------------------------------
# Dataset ingestion
# ----------------------------------------------------------------------
class DatasetParseError(AdvisorError, ValueError):
    def __init__(
        self, message: str, *, row: Optional[int] = None, column: Optional[str] = None
    ):
        location = []
        if row is not None:
            location.append(f"row {row}")
        if column is not None:
            location.append(f"column {column!r}")
        where = f" at {', '.join(location)}" if location else ""
        super().__init__(f"{message}{where}")
        self.row = row
        self.column = column


class NonBinaryCellError(DatasetParseError):
    pass


class RowWidthError(DatasetParseError):
    pass


class MissingCostError(DatasetParseError):
    pass


class DuplicateCostError(DatasetParseError):
    pass


class NegativeCostError(DatasetParseError):
    pass


class UnknownCostAttributeError(DatasetParseError):
    pass


class DomainError(AdvisorError, ValueError):
    pass


class UnknownAttributeError(AdvisorError, KeyError):
    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown attribute"


class WidthMismatchError(AdvisorError, ValueError):
    pass


# ----------------------------------------------------------------------
# Lattice / counting
# ----------------------------------------------------------------------
class LatticeError(AdvisorError):
    pass


class RootHasNoParentError(LatticeError, ValueError):
    pass


class OracleGuardError(AdvisorError, ValueError):
    pass


class MaximalSetFormatError(AdvisorError, ValueError):
    pass


# ----------------------------------------------------------------------
# Configuration and gains
# ----------------------------------------------------------------------
class ConfigError(AdvisorError, ValueError):
    pass


class PlanValidationError(ConfigError):
    pass


class GainContractError(AdvisorError, ValueError):
    pass


class GainUndefinedError(AdvisorError, ZeroDivisionError):
    pass


class SolveTimeoutError(AdvisorError, TimeoutError):
    pass
