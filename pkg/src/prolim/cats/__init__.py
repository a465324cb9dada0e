"""Finitely computable base categories and the arrow-category constructor."""

from .arrows import ArrowCategory, SquareMap
from .base import (
    BaseCategory,
    ColimitCocone,
    FiniteDiagram,
    LimitCone,
    colimit_is_universal,
    is_cocone,
    is_cone,
    limit_is_universal,
)
from .finab import FINAB, FinAb, FinAbMap
from .finset import FINSET, FinSet, FinSetMap
from .freeab import FREEAB, FreeAb, FreeAbMap, FreeAbObj, basis_range

__all__ = [
    "ArrowCategory",
    "BaseCategory",
    "ColimitCocone",
    "FINAB",
    "FINSET",
    "FREEAB",
    "FinAb",
    "FinAbMap",
    "FinSet",
    "FinSetMap",
    "FiniteDiagram",
    "FreeAb",
    "FreeAbMap",
    "FreeAbObj",
    "LimitCone",
    "SquareMap",
    "basis_range",
    "colimit_is_universal",
    "is_cocone",
    "is_cone",
    "limit_is_universal",
]
