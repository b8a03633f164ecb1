"""Finite computations with minions: presentations, function minions, constructions and the homomorphism order."""

from .base import (
    LIMITS,
    ConsistencyError,
    CutoffError,
    Element,
    ForeignElementError,
    Minion,
    MinionError,
    ResourceError,
    UnsupportedError,
    limits,
)
from .construct import ExponentialMinion, ProductMinion, SumMinion, UnknownVerdictError, product, subtract, sum
from .funmin import FunctionMinion
from .homsearch import Verdict, core, decide, order_compare, satisfies_pp
from .minors import MinorOp
from .morphisms import Hom
from .presented import Presentation, PresentedMinion, pp_parse
from .specfile import load, open_minion, parse

__version__ = "0.1.0"

__all__ = [
    "LIMITS",
    "ConsistencyError",
    "CutoffError",
    "Element",
    "ExponentialMinion",
    "ForeignElementError",
    "FunctionMinion",
    "Hom",
    "Minion",
    "MinionError",
    "MinorOp",
    "Presentation",
    "PresentedMinion",
    "ProductMinion",
    "ResourceError",
    "SumMinion",
    "UnknownVerdictError",
    "UnsupportedError",
    "Verdict",
    "core",
    "decide",
    "limits",
    "load",
    "open_minion",
    "order_compare",
    "parse",
    "pp_parse",
    "product",
    "satisfies_pp",
    "subtract",
    "sum",
]
