"""Generalized sumsets over Z and Z_m: computation, closed forms and exhaustive checks."""

__version__ = "0.1.0"

from .core import DomainError, IntSet, ZmSet  # noqa: E402
from .engine import (  # noqa: E402
    GenSumsetSpec,
    gen_sumset,
    gen_sumset_via_identity,
    iterated_sumset,
    minkowski_sum,
    restricted_sumset,
    support_oracle,
)

__all__ = [
    "__version__",
    "DomainError",
    "IntSet",
    "ZmSet",
    "GenSumsetSpec",
    "gen_sumset",
    "gen_sumset_via_identity",
    "iterated_sumset",
    "minkowski_sum",
    "restricted_sumset",
    "support_oracle",
]
