"""Exception types and the global size budget."""

from __future__ import annotations

import contextlib
import contextvars
from dataclasses import dataclass, replace


class WeakAdjError(Exception):
    """Base class for all library errors."""


class BudgetExceeded(WeakAdjError):
    """A size cap was hit; the result would otherwise be unknown."""


class PreconditionError(WeakAdjError):
    """Input data does not satisfy a documented precondition."""


class LawViolation(WeakAdjError):
    """A structure failed one of its axioms; ``violations`` locates it."""

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class InternalInconsistency(WeakAdjError):
    """Two independent computations disagreed (a kernel bug)."""


@dataclass(frozen=True)
class Budget:
    max_maps: int = 64          # maps enumerated by one hom computation
    max_objects: int = 10       # objects of a constructed category
    max_nodes: int = 2_000_000  # backtracking nodes per search
    max_elements: int = 4096    # elements of any constructed object
    max_table: int = 500_000    # composable pairs tabulated for one object


_BUDGET = contextvars.ContextVar("weakadj_budget", default=Budget())
_USAGE = contextvars.ContextVar("weakadj_usage", default=None)


def current_budget() -> Budget:
    return _BUDGET.get()


@contextlib.contextmanager
def budget(**kw):
    """Temporarily override budget fields, e.g. ``with budget(max_maps=10**4)``."""
    token = _BUDGET.set(replace(_BUDGET.get(), **kw))
    try:
        yield _BUDGET.get()
    finally:
        _BUDGET.reset(token)


def generous(scale: int = 1):
    """Budget suitable for fixtures and tests."""
    return budget(max_maps=200_000 * scale, max_objects=400 * scale,
                  max_nodes=50_000_000 * scale, max_elements=200_000 * scale,
                  max_table=2_000_000)


@contextlib.contextmanager
def track_usage():
    """Collect peak counts of maps/nodes/elements seen while active."""
    usage = {"maps": 0, "nodes": 0, "elements": 0, "searches": 0}
    token = _USAGE.set(usage)
    try:
        yield usage
    finally:
        _USAGE.reset(token)


def note_usage(key: str, value: int) -> None:
    usage = _USAGE.get()
    if usage is None:
        return
    if key == "searches":
        usage[key] += value
    else:
        usage[key] = max(usage[key], value)
