"""Budgets for the exhaustive searches."""

from __future__ import annotations

import os
from dataclasses import dataclass


@dataclass(frozen=True)
class Budgets:
    max_n: int = 8
    coloring_cap: int = 2**24
    maxcut_exhaustive_n: int = 24
    bnb_node_limit: int = 5_000_000

    @classmethod
    def from_env(cls) -> "Budgets":
        return cls(max_n=int(os.environ.get("PPQUAD_MAX_N", cls.max_n)))


def budgets() -> Budgets:
    return Budgets.from_env()
