"""shiftsocle: socle analysis for unital subshift algebras.

Detects irrational paths of a subshift, builds the layered socle graph,
decides Condition (Y) and strong grading, runs a monomial rewriting
engine for the algebra over the rationals, and compares pairs of
subshifts through the graded-socle conjugacy invariant.
"""

from .points import (
    PointDesc,
    Status,
    UndecidableAtBound,
    UnknownFamily,
    Verdict,
    eventually_periodic,
    family_member,
    periodic,
)
from .sft import Cardinality, FollowerAutomaton, SftSpec
from .subshift import Bounds, Subshift
from .words import EMPTY, Word, format_word, parse_word, word

__all__ = [
    "Bounds",
    "Cardinality",
    "EMPTY",
    "FollowerAutomaton",
    "PointDesc",
    "SftSpec",
    "Status",
    "Subshift",
    "UndecidableAtBound",
    "UnknownFamily",
    "Verdict",
    "Word",
    "eventually_periodic",
    "family_member",
    "format_word",
    "parse_word",
    "periodic",
    "word",
]

__version__ = "0.1.0"
