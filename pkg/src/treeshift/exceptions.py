"""Domain errors. Everything here maps to HTTP 400 in the service and exit 1 in the CLI."""


class TreeShiftError(Exception):
    """Base class for all domain errors raised by this package."""


class ParameterError(TreeShiftError):
    """A value violates a documented precondition (bad lambda region, bad gallery params, ...)."""


class OutOfDepthError(TreeShiftError):
    """An operation needs levels beyond the materialized/certified depth."""


class VertexCapError(TreeShiftError):
    """Materialization would exceed the vertex budget."""


class DeadTreeError(TreeShiftError):
    """Every vertex died out before the requested depth; the object is a finite tree."""


class LeaflessClaimError(TreeShiftError):
    """A spec claimed leaflessness but the degree rule produced a zero degree."""


class LeafObstructionError(TreeShiftError):
    """A construction that needs m-children hit a vertex without any."""


class BudgetError(TreeShiftError):
    """An exhaustive enumeration would exceed the stated budget."""
