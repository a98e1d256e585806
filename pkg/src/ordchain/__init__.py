"""Exact order endomorphisms of countable chains and their factorization
into maps with image as large as the chain."""

from .chain import (
    CATALOG,
    FIN3_Q,
    INTEGERS,
    NATURALS,
    NEG_INTEGERS,
    OMEGA_OMEGA_STAR,
    Q_1_Q,
    RATIONALS,
    Z_ARROW,
    Bound,
    Card,
    ChainSpec,
    Element,
    Interval,
    Region,
    Segment,
    fin,
)
from .maps import PcMap, compose, evaluate, j_membership, normalize, step_map_from_image
from .factor import decide_generation, factorize, verify_factorization

__all__ = [
    "CATALOG", "FIN3_Q", "INTEGERS", "NATURALS", "NEG_INTEGERS", "OMEGA_OMEGA_STAR",
    "Q_1_Q", "RATIONALS", "Z_ARROW",
    "Bound", "Card", "ChainSpec", "Element", "Interval", "Region", "Segment", "fin",
    "PcMap", "compose", "evaluate", "j_membership", "normalize", "step_map_from_image",
    "decide_generation", "factorize", "verify_factorization",
]
