"""Resource limits: the determinisation state cap and wall-clock budgets."""
from __future__ import annotations

import os
import time
from dataclasses import dataclass

from .errors import InputError, ResourceLimitError

DEFAULT_MAX_STATES = 10_000
MAX_STATES_ENV = "TATTOO_MAX_STATES"
DEFAULT_BUDGET_SECONDS = 30.0
MAX_PROGRAM_BYTES = 1 << 20    # 1 MiB of program text
MAX_TYPES_BYTES = 256 << 10    # 256 KiB of type text


def resolve_max_states(explicit: int | None = None) -> int:
    """Pick the determinisation cap: explicit value, then the environment
    override, then the default."""
    if explicit is not None:
        return explicit
    env = os.environ.get(MAX_STATES_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise InputError(f"{MAX_STATES_ENV} must be an integer, got {env!r}") from None
    return DEFAULT_MAX_STATES


@dataclass
class Budget:
    """Wall-clock budget, checked from inside fixpoint loops.

    seconds=None means unlimited.
    """

    seconds: float | None = None

    def __post_init__(self):
        self._deadline = None if self.seconds is None else time.monotonic() + self.seconds

    def check(self, stage: str = "analysis") -> None:
        if self._deadline is not None and time.monotonic() > self._deadline:
            raise ResourceLimitError(f"{stage} exceeded the {self.seconds:g}s time budget")
