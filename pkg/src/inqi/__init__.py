"""Intuitionistic inquisitive logic: team semantics, normal forms, deciders and proof checking."""

from .errors import (
    DialectError,
    FormulaSyntaxError,
    InqError,
    KindMismatch,
    ModelError,
    ResolutionExplosion,
    SizeLimit,
    UnknownSuite,
)
from .models import KripkeModel, Kind, load_fixture, load_model
from .semantics import TruthValue, supports, supports_mt0, truth_at, truth_value
from .syntax import Dialect, parse_formula, render_formula

__version__ = "0.1.0"
