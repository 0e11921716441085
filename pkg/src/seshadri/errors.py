"""Shared exception types."""

from __future__ import annotations


class PreconditionError(ValueError):
    """An arithmetic precondition of a constructor or bound is violated.

    `condition` names the violated requirement; the CLI maps this
    exception to exit code 3.
    """

    def __init__(self, condition: str):
        super().__init__(condition)
        self.condition = condition
