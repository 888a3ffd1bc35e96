"""Parametric point families for enumerated subshifts.

An enumerated subshift is presented as a finite collection of point
providers: parametric families (each describing a countable set of
points) plus standalone eventually periodic points.  Families answer a
small set of queries about their members: coordinate access, the shift
rule, preimages under the shift, prefix solving, factor occurrence, and
a scan vocabulary used by the singleton detector.

Built-ins:

* :class:`ArithmeticFamily` -- points ``(m, m+s, m+2s, ...)`` over an
  integer alphabet, optionally bounded below.
* :class:`PowerBlockFamily` -- the shifts of ``r s r^2 s r^3 s ...``
  (growing runs of a run symbol separated by a separator symbol).
* :class:`AlternatingPairFamily` -- the periodic points ``(l j)^inf``
  and ``(j l)^inf`` for integer ``j`` outside an exclusion set.  These
  are eventually periodic, so the family emits canonical ``ep``
  descriptors rather than family members.
* :class:`PrependFamily` -- a single point ``a . base`` obtained by
  prepending one letter to a registered base point.
"""

from __future__ import annotations

import math
from typing import Dict, Iterable, Iterator, List, Optional, Set, Tuple

from .points import (
    PointDesc,
    ep_letter_at,
    ep_shift,
    eventually_periodic,
    family_member,
    periodic,
)
from .words import Symbol, Word

# Result tags for prefix solving.
FINITE = "finite"
INFINITE = "infinite"

PrefixAnswer = Tuple[str, object]


class PointFamily:
    """Interface implemented by every point provider.

    Subclasses must keep every answer exact: the detection and graph
    layers treat family answers as certificates.  A family that cannot
    answer a query exactly must not be registered.
    """

    family_id: str
    #: no member is eventually periodic (families that describe periodic
    #: points emit ``ep`` descriptors instead and keep this True).
    certified_aperiodic = True
    #: preimage chains of members are eventually singleton-or-empty;
    #: licenses for-all-depth conclusions from bounded searches.
    stabilization_certificate = True

    def attach(self, subshift) -> None:
        self._subshift = subshift

    # -- membership ---------------------------------------------------
    def is_valid(self, params: Tuple[int, ...]) -> bool:
        raise NotImplementedError

    def members(self) -> Iterator[PointDesc]:
        """Deterministic (possibly partial) enumeration of members."""
        raise NotImplementedError

    # -- coordinates and dynamics -------------------------------------
    def letter_at(self, params: Tuple[int, ...], n: int) -> Symbol:
        raise NotImplementedError

    def shift(self, params: Tuple[int, ...]) -> PointDesc:
        raise NotImplementedError

    def preimages_of(self, p: PointDesc) -> Set[PointDesc]:
        """Members ``q`` of this family with ``shift(q) == p``."""
        raise NotImplementedError

    # -- language queries ----------------------------------------------
    def points_with_prefix(self, w: Word) -> PrefixAnswer:
        """Members whose expansion starts with ``w``.

        Returns ``(FINITE, set_of_points)`` or ``(INFINITE, sampler)``
        where the sampler yields members with that prefix.
        """
        raise NotImplementedError

    def occurs(self, w: Word) -> bool:
        """``w`` is a factor of some member."""
        raise NotImplementedError

    def scan_words(self, max_len: int, budget: int) -> Set[Word]:
        """Finite vocabulary of factors worth scanning for singletons."""
        raise NotImplementedError

    # -- certificates ---------------------------------------------------
    def tail_anchor(self, params: Tuple[int, ...]) -> Optional[Tuple[Tuple, int]]:
        """``(lineage key, depth)`` placing the member on the forward
        orbit of its tail class: members with equal keys satisfy
        ``sigma^(d2)(p1) == sigma^(d1)(p2)`` up to a common shift, so
        tail equivalence inside one lineage is exact at any depth.
        None when the family offers no anchor."""
        return None

    def letter_domain(self) -> Tuple:
        """Coarse descriptor of the letters used by members, for
        never-tail-equivalent certificates across families."""
        return ("unknown",)


def domains_disjoint(d1: Tuple, d2: Tuple) -> bool:
    """Conservative test that two letter domains share no symbol."""
    if d1[0] == "chars" and d2[0] == "chars":
        return not (d1[1] & d2[1])
    if d1[0] == "chars" or d2[0] == "chars":
        return d1[0] != d2[0] and "unknown" not in (d1[0], d2[0])
    if d1[0] == "arith" and d2[0] == "arith":
        _, a1, s1 = d1
        _, a2, s2 = d2
        g = math.gcd(s1, s2)
        return (a1 - a2) % g != 0
    return False


class ArithmeticFamily(PointFamily):
    """Points ``t_m = (m, m+step, m+2*step, ...)``.

    ``min_start=None`` allows every integer anchor (a two-sided ladder of
    members); an integer ``min_start`` keeps ``m >= min_start``.  Anchors
    are restricted to ``min_start + k*step`` so that families with equal
    step and different residues have disjoint letters.
    """

    def __init__(self, family_id: str, min_start: Optional[int] = 1, step: int = 1):
        if step < 1:
            raise ValueError("step must be positive")
        self.family_id = family_id
        self.min_start = min_start
        self.step = step
        self._residue = (min_start if min_start is not None else 0) % step

    def is_valid(self, params):
        if len(params) != 1:
            return False
        (m,) = params
        if m % self.step != self._residue:
            return False
        return self.min_start is None or m >= self.min_start

    def point(self, m: int) -> PointDesc:
        return family_member(self.family_id, (m,))

    def members(self):
        if self.min_start is not None:
            m = self.min_start
            while True:
                yield self.point(m)
                m += self.step
        else:
            yield self.point(0)
            k = self.step
            while True:
                yield self.point(k)
                yield self.point(-k)
                k += self.step

    def letter_at(self, params, n):
        return params[0] + n * self.step

    def shift(self, params):
        return self.point(params[0] + self.step)

    def preimages_of(self, p):
        if p.kind == "family" and p.family_id == self.family_id:
            m = p.params[0] - self.step
            if self.is_valid((m,)):
                return {self.point(m)}
        return set()

    def _match(self, w: Word) -> Optional[int]:
        """Anchor of the unique member starting with ``w``, if any."""
        if not all(isinstance(s, int) for s in w):
            return None
        for i in range(len(w) - 1):
            if w[i + 1] - w[i] != self.step:
                return None
        m = w[0]
        return m if self.is_valid((m,)) else None

    def points_with_prefix(self, w):
        if not w:
            return (INFINITE, self.members)
        m = self._match(w)
        return (FINITE, {self.point(m)} if m is not None else set())

    def occurs(self, w):
        if not w:
            return True
        if not all(isinstance(s, int) for s in w):
            return False
        for i in range(len(w) - 1):
            if w[i + 1] - w[i] != self.step:
                return False
        if self.min_start is None:
            return (w[0] - self._residue) % self.step == 0
        # w sits inside t_m at offset k iff w[0] = m + k*step for k >= 0
        return (w[0] - self._residue) % self.step == 0 and w[0] >= self.min_start

    def scan_words(self, max_len, budget):
        words: Set[Word] = set()
        anchors: List[int]
        if self.min_start is not None:
            anchors = [self.min_start + k * self.step for k in range(budget)]
        else:
            anchors = sorted(
                {k * self.step for k in range(-(budget // 2), budget // 2 + 1)}
            )
        for m in anchors:
            for ln in range(1, max_len + 1):
                words.add(tuple(m + j * self.step for j in range(ln)))
        return words

    def tail_anchor(self, params):
        origin = self.min_start if self.min_start is not None else self._residue
        return (("arith", self.family_id), (params[0] - origin) // self.step)

    def letter_domain(self):
        if self.min_start is None:
            return ("arith", self._residue, self.step)
        return ("arith", self.min_start % self.step, self.step)


class PowerBlockFamily(PointFamily):
    """The shifts of ``x = r s r^2 s r^3 s ...`` for run symbol ``r`` and
    separator ``s``; member ``(n,)`` is the ``n``-th shift of ``x``."""

    def __init__(self, family_id: str, run: Symbol = "b", sep: Symbol = "c"):
        self.family_id = family_id
        self.run = run
        self.sep = sep

    def is_valid(self, params):
        return len(params) == 1 and params[0] >= 0

    def point(self, n: int) -> PointDesc:
        return family_member(self.family_id, (n,))

    def members(self):
        n = 0
        while True:
            yield self.point(n)
            n += 1

    def base_letter(self, t: int) -> Symbol:
        """Letter of the base point at absolute position ``t``.

        Block ``k`` (``k >= 1``) consists of ``k`` run symbols and one
        separator, starting at position ``(k-1)(k+2)/2``.
        """
        k = 1
        start = 0
        while start + k + 1 <= t:
            start += k + 1
            k += 1
        return self.run if t - start < k else self.sep

    def expansion(self, length: int, offset: int = 0) -> Word:
        return tuple(self.base_letter(offset + j) for j in range(length))

    def letter_at(self, params, n):
        return self.base_letter(params[0] + n)

    def shift(self, params):
        return self.point(params[0] + 1)

    def preimages_of(self, p):
        if p.kind == "family" and p.family_id == self.family_id and p.params[0] >= 1:
            return {self.point(p.params[0] - 1)}
        return set()

    def _match_at(self, w: Word, offset: int) -> bool:
        return all(self.base_letter(offset + j) == w[j] for j in range(len(w)))

    def _horizon(self, ln: int) -> int:
        """Position after which a factor with two separators cannot
        first occur: covers blocks up to size ``ln + 2``."""
        k = ln + 3
        return (k - 1) * (k + 2) // 2

    def points_with_prefix(self, w):
        if not w:
            return (INFINITE, self.members)
        seps = sum(1 for s in w if s == self.sep)
        if any(s not in (self.run, self.sep) for s in w):
            return (FINITE, set())
        horizon = self._horizon(len(w))
        matches = [n for n in range(horizon) if self._match_at(w, n)]
        if seps >= 2:
            # two separators pin the block index, hence the offset
            return (FINITE, {self.point(n) for n in matches})
        if matches:
            def sampler():
                n = 0
                while True:
                    if self._match_at(w, n):
                        yield self.point(n)
                    n += 1

            return (INFINITE, sampler)
        return (FINITE, set())

    def occurs(self, w):
        if not w:
            return True
        if any(s not in (self.run, self.sep) for s in w):
            return False
        horizon = self._horizon(len(w))
        return any(self._match_at(w, n) for n in range(horizon))

    def scan_words(self, max_len, budget):
        horizon = min(self._horizon(max_len), budget * (max_len + 2))
        words: Set[Word] = set()
        for n in range(horizon):
            for ln in range(1, max_len + 1):
                words.add(self.expansion(ln, n))
        return words

    def tail_anchor(self, params):
        return (("power-block", self.family_id), params[0])

    def letter_domain(self):
        if isinstance(self.run, str):
            return ("chars", frozenset({self.run, self.sep}))
        return ("unknown",)


class AlternatingPairFamily(PointFamily):
    """Periodic points ``(l j)^inf`` and ``(j l)^inf`` over the positive
    integers, for ``j`` outside an exclusion set.  Emits canonical ``ep``
    descriptors; the family only serves language and preimage queries."""

    certified_aperiodic = True  # emits no aperiodic family members at all

    def __init__(self, family_id: str, low: int = 1, excluded: Iterable[int] = (2,)):
        self.family_id = family_id
        self.low = low
        self.excluded = frozenset(excluded)

    def _valid_j(self, j: int) -> bool:
        return j >= 1 and j not in self.excluded

    def is_valid(self, params):
        return False  # no family-member descriptors

    def pair(self, j: int) -> List[PointDesc]:
        if j == self.low:
            return [periodic((self.low,))]
        return [periodic((self.low, j)), periodic((j, self.low))]

    def members(self):
        j = 1
        while True:
            if self._valid_j(j):
                for p in self.pair(j):
                    yield p
            j += 1

    def letter_at(self, params, n):  # pragma: no cover - no members
        raise NotImplementedError("family emits ep descriptors only")

    def shift(self, params):  # pragma: no cover - no members
        raise NotImplementedError("family emits ep descriptors only")

    def preimages_of(self, p):
        if p.kind != "ep" or p.prefix:
            return set()
        per = p.period
        out: Set[PointDesc] = set()
        if per == (self.low,) and self._valid_j(self.low):
            out.add(p)
        elif len(per) == 2:
            a, b = per
            # sigma((b a)^inf) == (a b)^inf
            j = None
            if a == self.low and b != self.low:
                j = b
            elif b == self.low and a != self.low:
                j = a
            if j is not None and self._valid_j(j):
                out.add(periodic((b, a)))
        return out

    def _member_matches(self, point: PointDesc, w: Word) -> bool:
        return all(ep_letter_at(point, i) == w[i] for i in range(len(w)))

    def points_with_prefix(self, w):
        if not w:
            return (INFINITE, self.members)
        if not all(isinstance(s, int) for s in w):
            return (FINITE, set())
        if len(w) == 1:
            if w[0] == self.low:
                def sampler():
                    for p in self.members():
                        if self._member_matches(p, w):
                            yield p

                return (INFINITE, sampler)
            j = w[0]
            pts = {periodic((j, self.low))} if self._valid_j(j) and j != self.low else set()
            return (FINITE, pts)
        js = {s for s in w if s != self.low}
        if len(js) > 1:
            return (FINITE, set())
        j = js.pop() if js else self.low
        if not self._valid_j(j):
            return (FINITE, set())
        return (FINITE, {p for p in self.pair(j) if self._member_matches(p, w)})

    def occurs(self, w):
        if not w:
            return True
        if not all(isinstance(s, int) for s in w):
            return False
        js = {s for s in w if s != self.low}
        if len(js) > 1:
            return False
        j = js.pop() if js else self.low
        if not self._valid_j(j):
            return False
        return any(
            self._member_matches(p, w) for p in self.pair(j)
        ) or any(
            all(ep_letter_at(p, i + 1) == w[i] for i in range(len(w)))
            for p in self.pair(j)
        )

    def scan_words(self, max_len, budget):
        words: Set[Word] = set()
        j = 1
        produced = 0
        while produced < budget:
            if self._valid_j(j):
                for p in self.pair(j):
                    for ln in range(1, max_len + 1):
                        words.add(tuple(ep_letter_at(p, i) for i in range(ln)))
                produced += 1
            j += 1
        return words

    def letter_domain(self):
        return ("ints",)


class PrependFamily(PointFamily):
    """The single point ``letter . base`` for a registered base point."""

    def __init__(self, family_id: str, letter: Symbol, base: PointDesc):
        self.family_id = family_id
        self.letter = letter
        self.base = base

    def is_valid(self, params):
        return params == ()

    @property
    def member(self) -> PointDesc:
        return family_member(self.family_id, ())

    def members(self):
        yield self.member

    def letter_at(self, params, n):
        if n == 0:
            return self.letter
        return self._subshift.letter_at(self.base, n - 1)

    def shift(self, params):
        return self.base

    def preimages_of(self, p):
        return {self.member} if p == self.base else set()

    def points_with_prefix(self, w):
        if not w:
            return (FINITE, {self.member})
        if w[0] != self.letter:
            return (FINITE, set())
        rest = w[1:]
        ok = all(
            self._subshift.letter_at(self.base, i) == rest[i] for i in range(len(rest))
        )
        return (FINITE, {self.member} if ok else set())

    def occurs(self, w):
        # factors at offset >= 1 are factors of the base point and are
        # covered by the base point's own family
        tag, pts = self.points_with_prefix(w)
        return bool(pts)

    def scan_words(self, max_len, budget):
        words: Set[Word] = set()
        expansion = [self.letter] + [
            self._subshift.letter_at(self.base, i) for i in range(max_len - 1)
        ]
        for ln in range(1, max_len + 1):
            words.add(tuple(expansion[:ln]))
        return words

    def tail_anchor(self, params):
        if self.base.kind != "family":
            return None
        base_anchor = self._subshift.family(self.base.family_id).tail_anchor(
            self.base.params
        )
        if base_anchor is None:
            return None
        key, depth = base_anchor
        return (key, depth - 1)

    def letter_domain(self):
        base_dom = ("unknown",)
        fam = getattr(self, "_subshift", None)
        if fam is not None and self.base.kind == "family":
            base_dom = fam.families[self.base.family_id].letter_domain()
        if isinstance(self.letter, str) and base_dom[0] == "chars":
            return ("chars", base_dom[1] | {self.letter})
        return ("unknown",)
