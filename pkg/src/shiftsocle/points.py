"""Finitary descriptors for points of a subshift.

A point is an infinite one-sided sequence.  Two descriptor variants are
supported:

* eventually periodic points ``prefix * period^infinity``, stored in a
  canonical form (primitive period, shortest possible prefix), and
* members of registered parametric families (see :mod:`.families`),
  identified by a family id and an integer parameter tuple.

Canonical descriptors are hashable and compare equal exactly when they
describe the same point, which lets the rest of the library use ordinary
set operations for orbit bookkeeping.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Tuple

from .words import Symbol, Word, format_word, primitive_root, word_key


class DescribeError(Exception):
    """Base class for descriptor errors."""


class UnknownFamily(DescribeError):
    """A descriptor referenced a family id that is not registered."""


class UndecidableAtBound(DescribeError):
    """A comparison could not be settled within the search horizon."""

    def __init__(self, bound: int, message: str = ""):
        self.bound = bound
        super().__init__(message or f"undecidable within bound {bound}")


class Status(enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a bounded decision procedure.

    ``UNKNOWN`` verdicts always carry the bound at which the search
    stopped; decisive verdicts may carry a witness or a certificate
    description.
    """

    status: Status
    bound: Optional[int] = None
    witness: object = None
    reason: str = ""

    @staticmethod
    def holds(witness=None, reason: str = "", bound: Optional[int] = None) -> "Verdict":
        return Verdict(Status.HOLDS, bound, witness, reason)

    @staticmethod
    def fails(witness=None, reason: str = "", bound: Optional[int] = None) -> "Verdict":
        return Verdict(Status.FAILS, bound, witness, reason)

    @staticmethod
    def unknown(bound: int, reason: str = "") -> "Verdict":
        return Verdict(Status.UNKNOWN, bound, None, reason)

    @property
    def is_holds(self) -> bool:
        return self.status is Status.HOLDS

    @property
    def is_fails(self) -> bool:
        return self.status is Status.FAILS

    @property
    def is_unknown(self) -> bool:
        return self.status is Status.UNKNOWN

    @property
    def decisive(self) -> bool:
        return self.status is not Status.UNKNOWN


def canonical_ep(prefix: Word, period: Word) -> Tuple[Word, Word]:
    """Canonicalize an eventually periodic expansion ``prefix*period^inf``.

    The period is reduced to its primitive root and the prefix is made as
    short as possible: while the last prefix letter equals the last period
    letter the boundary can slide left one position without changing the
    point.  The result is the unique shortest-prefix primitive-period
    representation.
    """
    if not period:
        raise ValueError("period must be nonempty")
    period = primitive_root(period)
    prefix = tuple(prefix)
    while prefix and prefix[-1] == period[-1]:
        prefix = prefix[:-1]
        period = (period[-1],) + period[:-1]
    return prefix, period


@dataclass(frozen=True)
class PointDesc:
    """Canonical descriptor of a subshift point."""

    kind: str  # "ep" | "family"
    prefix: Word = ()
    period: Word = ()
    family_id: str = ""
    params: Tuple[int, ...] = ()

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"PointDesc({self})"

    def __str__(self) -> str:
        if self.kind == "ep":
            head = format_word(self.prefix) if self.prefix else ""
            return f"{head}({format_word(self.period)})^∞"
        args = ",".join(str(p) for p in self.params)
        return f"{self.family_id}[{args}]"

    def sort_key(self):
        if self.kind == "ep":
            return (0, word_key(self.prefix), word_key(self.period), "", ())
        return (1, (0, ()), (0, ()), self.family_id, self.params)


def eventually_periodic(prefix: Word, period: Word) -> PointDesc:
    pre, per = canonical_ep(prefix, period)
    return PointDesc(kind="ep", prefix=pre, period=per)


def periodic(period: Word) -> PointDesc:
    return eventually_periodic((), period)


def family_member(family_id: str, params: Tuple[int, ...]) -> PointDesc:
    return PointDesc(kind="family", family_id=family_id, params=tuple(params))


def ep_letter_at(p: PointDesc, n: int) -> Symbol:
    if n < len(p.prefix):
        return p.prefix[n]
    return p.period[(n - len(p.prefix)) % len(p.period)]


def ep_shift(p: PointDesc) -> PointDesc:
    if p.prefix:
        return eventually_periodic(p.prefix[1:], p.period)
    return eventually_periodic((), p.period[1:] + p.period[:1])


def ep_form(p: PointDesc) -> Optional[Tuple[Word, Word]]:
    """The canonical ``(prefix, period)`` pair for eventually periodic
    descriptors, ``None`` for family members (families describe points
    that are certified aperiodic; periodic family members are rewritten
    to ``ep`` descriptors at construction time)."""
    if p.kind == "ep":
        return (p.prefix, p.period)
    return None
