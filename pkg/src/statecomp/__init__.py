"""Exact state complexity of regular operations via modifiers and monsters."""

from .dfa import Cdfa, accessible_part, equivalent, minimize
from .engine import state_complexity, witness
from .errors import BudgetError, ParseError
from .modifier import Modifier, apply, builtin, compose, parse_modifier
from .monster import MonsterSpec, build
from .transform import Transformation

__all__ = [
    "BudgetError",
    "Cdfa",
    "Modifier",
    "MonsterSpec",
    "ParseError",
    "Transformation",
    "accessible_part",
    "apply",
    "build",
    "builtin",
    "compose",
    "equivalent",
    "minimize",
    "parse_modifier",
    "state_complexity",
    "witness",
]
