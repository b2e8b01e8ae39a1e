"""Search budgets shared by the exhaustive routines."""

from __future__ import annotations

import time

from .errors import BudgetExceeded

DEFAULT_MAX_STATES = 50_000_000


class Budget:
    """Counts search nodes and wall-clock time; raises when either runs out."""

    def __init__(self, max_states: int | None = DEFAULT_MAX_STATES, time_limit: float | None = None):
        if max_states is not None and max_states <= 0:
            raise ValueError("max_states must be positive")
        self.max_states = max_states
        self.deadline = None if time_limit is None else time.monotonic() + time_limit
        self.used = 0
        self._next_clock = 1024

    def tick(self, k: int = 1) -> None:
        self.used += k
        if self.max_states is not None and self.used > self.max_states:
            raise BudgetExceeded(f"search exceeded {self.max_states} states")
        if self.deadline is not None and self.used >= self._next_clock:
            # reading the clock on every tick is measurably slow
            self._next_clock = self.used + 1024
            if time.monotonic() > self.deadline:
                raise BudgetExceeded("search exceeded its wall-clock limit")


def unlimited() -> Budget:
    return Budget(max_states=None)
