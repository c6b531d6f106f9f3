"""Exact combinatorics of cuspidal lines for classical p-adic groups."""
from .formal import FormalSum
from .glalg import ONE, M_star, Segment, StandardGL, e_exponent, m_star
from .lines import CuspidalSymbol, LinePoint, LineSet, Registry
from .params import (
    ClassicalStandard,
    DiscreteSeriesParam,
    JantzenFamily,
    LanglandsParam,
    SigmaSupport,
    TemperedParam,
)
from .unitarity import GenericParam, is_unitarizable_generic

__version__ = "0.1.0"

__all__ = [
    "ClassicalStandard",
    "CuspidalSymbol",
    "DiscreteSeriesParam",
    "FormalSum",
    "GenericParam",
    "JantzenFamily",
    "LanglandsParam",
    "LinePoint",
    "LineSet",
    "M_star",
    "ONE",
    "Registry",
    "Segment",
    "SigmaSupport",
    "StandardGL",
    "TemperedParam",
    "e_exponent",
    "is_unitarizable_generic",
    "m_star",
]
