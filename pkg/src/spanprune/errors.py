"""Exception types shared across the package."""

from __future__ import annotations


class GraphConstructionError(ValueError):
    """Base class for rejections during graph construction."""


class SelfLoop(GraphConstructionError):
    """An edge joins a vertex to itself."""


class DuplicateEdge(GraphConstructionError):
    """The same unordered vertex pair appears twice."""


class VertexOutOfRange(GraphConstructionError):
    """An endpoint index is not in [0, n)."""


class ParseError(ValueError):
    """Malformed input file; carries the 1-based line number."""

    def __init__(self, line: int, message: str) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line


class BadParameters(ValueError):
    """Instance generator called with invalid parameters."""


class PreconditionUnmet(ValueError):
    """A constructive routine was called below its guaranteed threshold."""


class InsufficientPaths(PreconditionUnmet):
    """Path family smaller than the disjoint-paths extraction threshold."""


class BudgetExceeded(RuntimeError):
    """Exhaustive enumeration would exceed the configured subset budget."""


class InternalAssertionFailed(AssertionError):
    """A guaranteed property failed at runtime; indicates a bug, never expected."""
