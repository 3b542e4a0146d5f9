"""Resource caps shared by the evaluators and checkers."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Caps:
    eval_vars: int = 4
    exhaustive_vars: int = 4
    max_team_size: int = 16
    inc_width: int = 6
    samples: int = 2000
    seed: int = 0


DEFAULT_CAPS = Caps()


class CapExceeded(ValueError):
    pass
