"""Size caps shared across the package."""

from __future__ import annotations

import os
from dataclasses import dataclass

HARD_ORDER_CAP = 64
MONOID_SIZE_CAP = 4096
ISOMORPHISM_CAP = 512
SERIES_CAP = 10_000

CONVENTION = "permutations compose left to right: (p*q)(x) = q(p(x)); cycles are 1-based"


def hard_order_cap() -> int:
    """Hard group-order cap, overridable through ``COSETLAB_CAP_ORDER``."""
    raw = os.environ.get("COSETLAB_CAP_ORDER")
    if raw is None:
        return HARD_ORDER_CAP
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"COSETLAB_CAP_ORDER must be an integer, got {raw!r}") from None


@dataclass(frozen=True)
class Caps:
    max_order: int = 24
    series: int = SERIES_CAP
    isomorphism: int = ISOMORPHISM_CAP
    # enumeration limits inside the verification checks
    full_series: int = 400
    series_pairs: int = 4000
    central_chains: int = 2000
    max_tuples: int = 200_000
