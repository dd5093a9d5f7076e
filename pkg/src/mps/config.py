"""Run settings shared by the CLI and the scripts."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError


@dataclass(frozen=True)
class RunConfig:
    """``seed`` feeds every randomized search; ``budget`` caps its draws."""

    field: str = "QQ"
    seed: int = 0
    budget: int = 20
    jobs: int = 1
    fmt: str = "text"
    out: str | None = None

    def __post_init__(self):
        if self.budget < 1 or self.jobs < 1:
            raise InputError("budget and jobs must be positive")
        if self.fmt not in ("text", "json"):
            raise InputError(f"unknown format {self.fmt!r}")
