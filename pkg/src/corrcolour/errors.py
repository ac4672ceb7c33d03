"""Exception types shared across the package."""

from __future__ import annotations


class GraphError(ValueError):
    """Malformed graph, embedding, or subgraph reference."""


class BudgetExceeded(RuntimeError):
    """An enumeration would exceed its configured budget."""

    def __init__(self, message: str, needed: int | None = None, budget: int | None = None):
        super().__init__(message)
        self.needed = needed
        self.budget = budget


class PreconditionViolation(ValueError):
    """Hypotheses of an extension theorem are not met by the instance."""


class TheoremFalsified(AssertionError):
    """Preconditions held but an exhaustive search found no extension.

    Raised only if a cited theorem would be contradicted. Tests treat it as a
    hard failure.
    """
