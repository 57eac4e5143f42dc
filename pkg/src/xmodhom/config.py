"""Resource budgets shared by the computational layers."""

from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Budget:
    """Limits that turn runaway computations into errors instead of hangs.

    ``bar_rank`` bounds the rank of one bar-complex chain group,
    ``level_order`` the order of one simplicial level group, and
    ``total_rank`` the rank of one degree of a totalized nerve complex.
    """

    bar_rank: int = 20000
    level_order: int = 4096
    total_rank: int = 200000
    max_total: int = 5

    def with_(self, **kw) -> "Budget":
        return replace(self, **kw)


DEFAULT_BUDGET = Budget()
