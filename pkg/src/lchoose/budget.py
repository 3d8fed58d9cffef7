"""Search budgets: node counts are the reproducible primary limit, wall clock
is advisory (checked coarsely so reruns with the same node budget agree)."""

from __future__ import annotations

import time


class Budget:
    __slots__ = ("max_nodes", "max_seconds", "nodes", "_deadline", "exhausted")

    def __init__(self, max_nodes: int | None = None, max_seconds: float | None = None):
        if max_nodes is not None and max_nodes < 0:
            raise ValueError("max_nodes must be nonnegative")
        self.max_nodes = max_nodes
        self.max_seconds = max_seconds
        self.nodes = 0
        self._deadline = time.monotonic() + max_seconds if max_seconds else None
        self.exhausted = False

    def tick(self) -> bool:
        """Account one search node; False once the budget is spent."""
        if self.exhausted:
            return False
        self.nodes += 1
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            self.exhausted = True
        elif (
            self._deadline is not None
            and self.nodes % 1024 == 0
            and time.monotonic() > self._deadline
        ):
            self.exhausted = True
        return not self.exhausted

    def __repr__(self) -> str:
        return f"Budget(max_nodes={self.max_nodes}, max_seconds={self.max_seconds}, nodes={self.nodes})"
