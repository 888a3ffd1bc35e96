"""Subshift presentations and point-level queries.

Two kinds of presentation are supported:

* finite type (``sft``): finite alphabet plus forbidden words, served
  exactly by the follower automaton of :mod:`.sft`;
* enumerated: an explicit countable point set given by parametric
  families and standalone eventually periodic points.

The enumerated engine assumes the declared providers are pairwise
disjoint (no point is described twice) and shift-closed; both are
light-checked at load time.  All point descriptors returned anywhere
are canonical, so hashing and ``==`` agree with point equality.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from . import families as fam
from .points import (
    PointDesc,
    UndecidableAtBound,
    UnknownFamily,
    ep_form,
    ep_letter_at,
    ep_shift,
    eventually_periodic,
)
from .sft import FollowerAutomaton, SftSpec
from .words import EMPTY, Symbol, Word, word_key

#: horizon for expansion comparisons that have no closing certificate
EQUALITY_HORIZON = 256


@dataclass(frozen=True)
class Bounds:
    """Search bounds shared by the analysis passes."""

    word_bound: int = 2
    scan_budget: int = 12
    cardinality_bound: int = 128
    orbit_len: int = 8
    depth: int = 4
    k_bound: int = 8
    n_bound: int = 8
    tail_bound: int = 16
    closure_budget: int = 24


class Subshift:
    """A subshift presentation with exact point-level services."""

    def __init__(
        self,
        kind: str,
        name: str = "",
        sft_spec: Optional[SftSpec] = None,
        families: Sequence[fam.PointFamily] = (),
        standalone_points: Sequence[PointDesc] = (),
        base_points: Sequence[PointDesc] = (),
        bounds: Bounds = Bounds(),
    ):
        if kind not in ("sft", "enumerated"):
            raise ValueError(f"unknown subshift kind {kind!r}")
        self.kind = kind
        self.name = name
        self.bounds = bounds
        self.families: Dict[str, fam.PointFamily] = {}
        self.standalone_points: Tuple[PointDesc, ...] = tuple(standalone_points)
        self.base_points: Tuple[PointDesc, ...] = tuple(base_points)
        self._preimage_cache: Dict[PointDesc, FrozenSet[PointDesc]] = {}
        self._prepend_cache: Dict[Tuple[Word, PointDesc], Optional[PointDesc]] = {}
        if kind == "sft":
            if sft_spec is None:
                raise ValueError("sft kind requires an SftSpec")
            self.sft_spec = sft_spec
            self.automaton = FollowerAutomaton(sft_spec)
        else:
            self.sft_spec = None
            self.automaton = None
            for f in families:
                if f.family_id in self.families:
                    raise ValueError(f"duplicate family id {f.family_id!r}")
                self.families[f.family_id] = f
                f.attach(self)
            self._validate_enumerated()

    # ------------------------------------------------------------------
    # validation

    def _validate_enumerated(self) -> None:
        for p in self.standalone_points:
            if p.kind != "ep":
                raise ValueError("standalone points must be eventually periodic")
            if not self.contains_point(ep_shift(p)):
                raise ValueError(f"standalone point {p} is not shift-closed")
        for p in self.base_points:
            if not self.contains_point(p):
                raise ValueError(f"base point {p} is not a declared point")

    @property
    def preimages_exact(self) -> bool:
        """Preimage queries enumerate the full set (true for built-ins)."""
        return True

    @property
    def stabilization_certified(self) -> bool:
        """Every registered family certifies that preimage chains are
        eventually singleton-or-empty, licensing for-all-depth claims."""
        if self.kind == "sft":
            return False
        return all(f.stabilization_certificate for f in self.families.values())

    def family(self, family_id: str) -> fam.PointFamily:
        try:
            return self.families[family_id]
        except KeyError:
            raise UnknownFamily(family_id) from None

    # ------------------------------------------------------------------
    # coordinates and dynamics

    def letter_at(self, p: PointDesc, n: int) -> Symbol:
        if n < 0:
            raise ValueError("position must be nonnegative")
        if p.kind == "ep":
            return ep_letter_at(p, n)
        return self.family(p.family_id).letter_at(p.params, n)

    def expansion(self, p: PointDesc, length: int) -> Word:
        return tuple(self.letter_at(p, i) for i in range(length))

    def shift(self, p: PointDesc) -> PointDesc:
        if p.kind == "ep":
            return ep_shift(p)
        return self.family(p.family_id).shift(p.params)

    def shift_iter(self, p: PointDesc, n: int) -> PointDesc:
        for _ in range(n):
            p = self.shift(p)
        return p

    def preimages(self, p: PointDesc) -> FrozenSet[PointDesc]:
        """Exactly the declared points mapping to ``p`` under the shift."""
        cached = self._preimage_cache.get(p)
        if cached is not None:
            return cached
        out: Set[PointDesc] = set()
        if self.kind == "sft":
            for a in self.sft_spec.alphabet:
                q = eventually_periodic((a,) + p.prefix, p.period)
                if self.contains_point(q):
                    out.add(q)
        else:
            for f in self.families.values():
                out |= f.preimages_of(p)
            for q in self.standalone_points:
                if ep_shift(q) == p:
                    out.add(q)
        result = frozenset(out)
        self._preimage_cache[p] = result
        return result

    def equals(self, p: PointDesc, q: PointDesc) -> bool:
        """Point equality of canonical descriptors.

        Canonical forms make this structural except across distinct
        aperiodic families, where a horizon comparison applies: a
        mismatch settles inequality, agreement to the horizon raises
        :class:`UndecidableAtBound` (providers are disjoint for all
        built-in presentations, so this does not arise in practice).
        """
        if p == q:
            return True
        if p.kind == "ep" and q.kind == "ep":
            return False  # canonical forms are unique
        if p.kind != q.kind:
            aperiodic = p if p.kind == "family" else q
            if self.family(aperiodic.family_id).certified_aperiodic:
                return False
            return self._horizon_compare(p, q)
        if p.family_id == q.family_id:
            return False  # canonical params are unique per family
        return self._horizon_compare(p, q)

    def _horizon_compare(self, p: PointDesc, q: PointDesc) -> bool:
        for i in range(EQUALITY_HORIZON):
            if self.letter_at(p, i) != self.letter_at(q, i):
                return False
        raise UndecidableAtBound(EQUALITY_HORIZON, f"equality of {p} and {q}")

    def eventually_periodic_form(self, p: PointDesc) -> Optional[Tuple[Word, Word]]:
        return ep_form(p)

    def is_aperiodic(self, p: PointDesc) -> bool:
        if p.kind == "ep":
            return False
        return self.family(p.family_id).certified_aperiodic

    # ------------------------------------------------------------------
    # membership and language

    def contains_point(self, p: PointDesc) -> bool:
        if self.kind == "sft":
            if p.kind != "ep":
                return False
            window = len(p.prefix) + len(p.period) + self.sft_spec.step + 1
            return self.automaton.factor_allowed(self.expansion(p, window))
        if p.kind == "family":
            f = self.families.get(p.family_id)
            return f is not None and f.is_valid(p.params)
        if p in self.standalone_points:
            return True
        for f in self.families.values():
            tag, pts = f.points_with_prefix(
                tuple(ep_letter_at(p, i) for i in range(len(p.prefix) + len(p.period)))
            )
            if tag == fam.FINITE and p in pts:
                return True
        return False

    def factor_allowed(self, w: Word) -> bool:
        """``w`` is a factor of some point of the subshift."""
        if self.kind == "sft":
            return self.automaton.factor_allowed(w)
        if not w:
            return True
        if any(f.occurs(w) for f in self.families.values()):
            return True
        return any(self._ep_occurs(q, w) for q in self.standalone_points)

    def _ep_occurs(self, q: PointDesc, w: Word) -> bool:
        window = len(q.prefix) + len(q.period) + len(w)
        expansion = self.expansion(q, window)
        return any(
            expansion[i : i + len(w)] == w for i in range(window - len(w) + 1)
        )

    def language(self, n: int) -> Set[Word]:
        if self.kind != "sft":
            raise ValueError("exact language enumeration requires an sft")
        return self.automaton.language(n)

    def scan_vocabulary(self, max_len: int, budget: Optional[int] = None) -> List[Word]:
        """Deterministic finite word list used by the generator scans."""
        budget = budget if budget is not None else self.bounds.scan_budget
        words: Set[Word] = {EMPTY}
        if self.kind == "sft":
            words |= self.automaton.language_upto(max_len)
        else:
            for f in self.families.values():
                words |= f.scan_words(max_len, budget)
            for q in self.standalone_points:
                window = len(q.prefix) + 2 * len(q.period)
                expansion = self.expansion(q, window + max_len)
                for i in range(window):
                    for ln in range(1, max_len + 1):
                        words.add(expansion[i : i + ln])
        return sorted((w for w in words if len(w) <= max_len), key=word_key)

    # ------------------------------------------------------------------
    # prefix solving (enumerated backend)

    def points_with_prefix(self, w: Word) -> Tuple[str, object]:
        """All declared points whose expansion starts with ``w``.

        Returns ``(FINITE, set)`` when every provider answers finitely,
        else ``(INFINITE, sampler)`` where the sampler interleaves the
        finite answers with the infinite providers' enumerations.
        """
        if self.kind == "sft":
            raise ValueError("prefix solving is for enumerated subshifts")
        finite: Set[PointDesc] = set()
        samplers = []
        for f in self.families.values():
            tag, ans = f.points_with_prefix(w)
            if tag == fam.FINITE:
                finite |= ans
            else:
                samplers.append(ans)
        for q in self.standalone_points:
            if all(ep_letter_at(q, i) == w[i] for i in range(len(w))):
                finite.add(q)
        if not samplers:
            return (fam.FINITE, finite)

        def sample():
            for p in sorted(finite, key=lambda d: d.sort_key()):
                yield p
            iters = [s() for s in samplers]
            for batch in itertools.zip_longest(*iters):
                for p in batch:
                    if p is not None:
                        yield p

        return (fam.INFINITE, sample)

    def prefixed_points(self, w: Word, budget: int) -> Tuple[bool, List[PointDesc]]:
        """Up to ``budget`` points starting with ``w``; the flag reports
        whether the list is exhaustive."""
        tag, ans = self.points_with_prefix(w)
        if tag == fam.FINITE:
            return True, sorted(ans, key=lambda d: d.sort_key())
        out = []
        for p in ans():
            out.append(p)
            if len(out) >= budget:
                break
        return False, out

    def contains_prepend(self, w: Word, p: PointDesc) -> Optional[PointDesc]:
        """Canonical descriptor of the point ``w . p`` when it belongs to
        the subshift, else None.  Works backward through exact preimage
        sets, so the answer is a certificate either way."""
        if not w:
            return p
        key = (tuple(w), p)
        if key in self._prepend_cache:
            return self._prepend_cache[key]
        current: Optional[PointDesc] = p
        for a in reversed(w):
            matches = [
                q for q in self.preimages(current) if self.letter_at(q, 0) == a
            ]
            if not matches:
                current = None
                break
            current = matches[0]  # at most one: q = a.current is one point
        self._prepend_cache[key] = current
        return current

    def sample_points(self, budget: int) -> List[PointDesc]:
        """Deterministic sample of declared points."""
        if self.kind == "sft":
            found = set()
            prefixes = sorted(self.automaton.language_upto(2), key=word_key)
            periods = sorted(
                (w for w in self.automaton.language_upto(3) if w), key=word_key
            )
            for prefix in prefixes:
                for period in periods:
                    q = eventually_periodic(prefix, period)
                    if self.contains_point(q):
                        found.add(q)
            return sorted(found, key=lambda d: d.sort_key())[:budget]
        out = list(self.standalone_points)
        iters = [f.members() for f in self.families.values()]
        for batch in itertools.zip_longest(*[
            itertools.islice(it, budget) for it in iters
        ]):
            for p in batch:
                if p is not None:
                    out.append(p)
            if len(out) >= budget:
                break
        seen = []
        for p in out:
            if p not in seen:
                seen.append(p)
        return seen[:budget]

    # ------------------------------------------------------------------

    def letter_domains_disjoint(self, p: PointDesc, q: PointDesc) -> bool:
        """Certificate that two family members can never share a tail."""
        if p.kind != "family" or q.kind != "family":
            return False
        d1 = self.family(p.family_id).letter_domain()
        d2 = self.family(q.family_id).letter_domain()
        return fam.domains_disjoint(d1, d2)

    def __repr__(self) -> str:  # pragma: no cover
        return f"Subshift({self.name or self.kind})"
