from __future__ import annotations

from typing import Optional


class WTreeError(ValueError):
    """Base class of every domain failure; `kind` is stable, `exit_code` feeds the CLI."""

    kind = "error"
    exit_code = 2


class TypeLiteralError(WTreeError):
    kind = "type_literal"

    def __init__(self, message: str, *, column: int):
        super().__init__(f"{message} (column {column})")
        self.column = column


class EmptySide(WTreeError):
    kind = "empty_side"


class NonPositiveWeight(WTreeError):
    kind = "non_positive_weight"


class SumMismatch(WTreeError):
    kind = "sum_mismatch"


class InvalidTree(WTreeError):
    kind = "invalid_tree"


class NonPositiveEdge(WTreeError):
    kind = "non_positive_edge"

    def __init__(self, message: str, *, edge_id: Optional[int] = None):
        super().__init__(message)
        self.edge_id = edge_id


class ResidualMismatch(WTreeError):
    kind = "residual_mismatch"
    exit_code = 3


class NotSimple(WTreeError):
    kind = "not_simple"


class NonIntegerResult(WTreeError):
    kind = "non_integer_result"
    exit_code = 3


class ResourceBudget(WTreeError):
    kind = "resource_budget"
    exit_code = 4

    def __init__(self, message: str, *, limit: int):
        super().__init__(message)
        self.limit = limit


class NoConvergence(WTreeError):
    kind = "no_convergence"
    exit_code = 5
