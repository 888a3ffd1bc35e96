"""Irrational path detection and tail-equivalence bookkeeping.

An irrational path is a point whose singleton is a clopen set (an
element of the generated Boolean algebra) and whose expansion is not
eventually periodic.  The detector scans generator sets up to a word
bound for singletons, then closes the findings under the shift and its
preimages; both closure steps stay inside the Boolean algebra because
the singleton of a shifted point is a relative range and the singleton
of a preimage is a prepend of a known singleton.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Set, Tuple

from . import usets
from .points import PointDesc, Status, UndecidableAtBound, Verdict
from .subshift import Subshift
from .usets import USet, WordNotInLanguage, cardinality, cylinder, generator
from .words import Word, rotations_equal


@dataclass(frozen=True)
class IrrationalWitness:
    """A detected irrational path with its clopen singleton."""

    point: PointDesc
    witness_set: USet
    certificate: str

    def reverify(self) -> bool:
        size = cardinality(self.witness_set)
        if not size.is_singleton:
            return False
        spec = self.witness_set.spec
        if not spec.equals(size.point, self.point):
            return False
        return spec.eventually_periodic_form(self.point) is None


@dataclass
class TailClass:
    """A tail-equivalence class of irrational witnesses."""

    representative: PointDesc
    members: List[IrrationalWitness] = field(default_factory=list)
    unresolved: bool = False  # an Unknown comparison forced a split

    @property
    def points(self) -> List[PointDesc]:
        return [w.point for w in self.members]


def find_irrational_singletons(
    X: Subshift,
    word_bound: Optional[int] = None,
    closure_budget: Optional[int] = None,
) -> List[IrrationalWitness]:
    """Scan generator sets for aperiodic singletons and close under the
    shift and its preimages.

    The scan is a semi-decision: it covers the generators over the scan
    vocabulary at the given bound, which captures every singleton the
    socle construction needs for the bundled presentations; deeper
    Boolean combinations are not searched.
    """
    word_bound = word_bound if word_bound is not None else X.bounds.word_bound
    closure_budget = (
        closure_budget if closure_budget is not None else X.bounds.closure_budget
    )
    vocab = X.scan_vocabulary(word_bound)
    found: Dict[PointDesc, IrrationalWitness] = {}
    for alpha in vocab:
        for beta in vocab:
            try:
                gen = generator(X, alpha, beta)
            except WordNotInLanguage:
                continue
            size = cardinality(gen)
            if not size.is_singleton:
                continue
            p = size.point
            if X.eventually_periodic_form(p) is not None:
                continue
            if p not in found:
                found[p] = IrrationalWitness(p, gen, "detected singleton generator")

    ordered = list(found.values())
    # closure rounds: apply shift and preimages to every known point;
    # each derived singleton is compacted to its resolved form so the
    # expression trees stay flat across closure depth
    for _ in range(max(8, closure_budget)):
        if len(ordered) >= closure_budget:
            break
        added = False
        for w in list(ordered):
            if len(ordered) >= closure_budget:
                break
            shifted = X.shift(w.point)
            if shifted not in found:
                first = (X.letter_at(w.point, 0),)
                wit = IrrationalWitness(
                    shifted,
                    _compact(usets.relative_range(w.witness_set, first)),
                    "shift of detected singleton",
                )
                found[shifted] = wit
                ordered.append(wit)
                added = True
            for q in sorted(X.preimages(w.point), key=lambda d: d.sort_key()):
                if q in found:
                    continue
                first = (X.letter_at(q, 0),)
                wit = IrrationalWitness(
                    q,
                    _compact(usets.prepend(first, w.witness_set)),
                    "shift preimage of detected singleton",
                )
                found[q] = wit
                ordered.append(wit)
                added = True
        if not added:
            break
    return ordered


def _compact(a: USet) -> USet:
    """Replace a clopen expression by its canonical-form skeleton
    (sound here: closure sets are derived from detected singletons, so
    they stay in the algebra)."""
    return usets.compact(a)


def is_line_path(X: Subshift, p: PointDesc, bound: Optional[int] = None) -> Verdict:
    """A line path is an aperiodic point pinned by its first letter."""
    bound = bound if bound is not None else X.bounds.cardinality_bound
    if X.eventually_periodic_form(p) is not None:
        return Verdict.fails(reason="eventually periodic point", bound=bound)
    z = cylinder(X, (X.letter_at(p, 0),))
    size = cardinality(z, bound)
    if size.is_singleton:
        if X.equals(size.point, p):
            return Verdict.holds(witness=z, reason="first-letter cylinder is {p}", bound=bound)
        return Verdict.fails(reason="first-letter cylinder pins another point", bound=bound)
    if size.kind == "atleast":
        return Verdict.fails(
            reason="first-letter cylinder has at least two points", bound=bound
        )
    if size.is_empty:  # pragma: no cover - p itself lies in the cylinder
        return Verdict.fails(reason="empty cylinder", bound=bound)
    return Verdict.unknown(bound, "cylinder cardinality unresolved")


def tail_equivalent(
    X: Subshift, p: PointDesc, q: PointDesc, bound: Optional[int] = None
) -> Verdict:
    """Decide whether some shifts of ``p`` and ``q`` agree.

    Holds carries a witness pair ``(m, n)``.  Fails requires a
    certificate: eventual periodicity on exactly one side, non-conjugate
    primitive periods on two periodic sides, or disjoint letter domains
    across families.  Everything else is Unknown at the bound.
    """
    bound = bound if bound is not None else X.bounds.tail_bound
    p_form = X.eventually_periodic_form(p)
    q_form = X.eventually_periodic_form(q)
    if (p_form is None) != (q_form is None):
        if (p_form is None and X.is_aperiodic(p)) or (
            q_form is None and X.is_aperiodic(q)
        ):
            return Verdict.fails(
                reason="tail equivalence preserves eventual periodicity", bound=bound
            )
        return Verdict.unknown(bound, "one side has no periodicity certificate")
    if p_form is not None and q_form is not None:
        if not rotations_equal(p_form[1], q_form[1]):
            return Verdict.fails(
                reason="primitive periods are not conjugate", bound=bound
            )
        horizon = len(p_form[0]) + len(q_form[0]) + len(p_form[1]) + 1
        hit = _search_tail_witness(X, p, q, horizon)
        if hit is not None:
            return Verdict.holds(witness=hit, bound=bound)
        return Verdict.fails(  # pragma: no cover - conjugate periods always meet
            reason="no alignment found", bound=bound
        )
    if p.kind == "family" and q.kind == "family":
        anchor_p = X.family(p.family_id).tail_anchor(p.params)
        anchor_q = X.family(q.family_id).tail_anchor(q.params)
        if anchor_p is not None and anchor_q is not None:
            key_p, depth_p = anchor_p
            key_q, depth_q = anchor_q
            if key_p == key_q:
                m = max(0, depth_q - depth_p)
                n = max(0, depth_p - depth_q)
                if X.equals(X.shift_iter(p, m), X.shift_iter(q, n)):
                    return Verdict.holds(witness=(m, n), bound=bound)
    if X.letter_domains_disjoint(p, q):
        return Verdict.fails(reason="letter domains are disjoint", bound=bound)
    hit = _search_tail_witness(X, p, q, bound)
    if hit is not None:
        return Verdict.holds(witness=hit, bound=bound)
    return Verdict.unknown(bound, "no witness within bound, no certificate")


def _search_tail_witness(
    X: Subshift, p: PointDesc, q: PointDesc, bound: int
) -> Optional[Tuple[int, int]]:
    p_shifts = [p]
    q_shifts = [q]
    for _ in range(bound):
        p_shifts.append(X.shift(p_shifts[-1]))
        q_shifts.append(X.shift(q_shifts[-1]))
    for total in range(2 * bound + 1):
        for m in range(min(total, bound) + 1):
            n = total - m
            if n > bound:
                continue
            try:
                if X.equals(p_shifts[m], q_shifts[n]):
                    return (m, n)
            except UndecidableAtBound:
                continue
    return None


def partition_classes(
    X: Subshift,
    witnesses: Sequence[IrrationalWitness],
    bound: Optional[int] = None,
) -> List[TailClass]:
    """Group witnesses into tail-equivalence classes.

    Unknown comparisons force distinct classes and set the diagnostic
    flag on the affected class.
    """
    bound = bound if bound is not None else X.bounds.tail_bound
    classes: List[TailClass] = []
    for w in witnesses:
        placed = False
        for cls in classes:
            verdict = tail_equivalent(X, w.point, cls.representative, bound)
            if verdict.is_holds:
                cls.members.append(w)
                placed = True
                break
            if verdict.is_unknown:
                cls.unresolved = True
        if not placed:
            classes.append(TailClass(representative=w.point, members=[w]))
    # prefer a declared base point as the representative of its class
    for cls in classes:
        for base in X.base_points:
            for w in cls.members:
                if w.point == base:
                    cls.representative = base
                    break
    return classes
