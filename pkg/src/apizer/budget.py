"""Cooperative time budgets for the per-snippet pipeline."""

from __future__ import annotations

import time
from typing import Optional


class BudgetExceeded(Exception):
    pass


class Deadline:
    """Raises :class:`BudgetExceeded` from :meth:`check` once ``seconds`` elapse."""

    def __init__(self, seconds: Optional[float] = None):
        self.seconds = seconds
        self.start = time.monotonic()
        self.end = None if seconds is None else self.start + seconds

    def remaining(self) -> Optional[float]:
        return None if self.end is None else self.end - time.monotonic()

    def expired(self) -> bool:
        return self.end is not None and time.monotonic() > self.end

    def check(self) -> None:
        if self.expired():
            raise BudgetExceeded(f"time budget of {self.seconds:g}s exceeded")

    def elapsed(self) -> float:
        return time.monotonic() - self.start


UNLIMITED = Deadline(None)
