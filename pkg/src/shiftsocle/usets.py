"""The Boolean algebra of clopen sets generated by the sets C(alpha, beta).

``C(alpha, beta)`` collects the points ``beta.x`` of the subshift such
that ``alpha.x`` also belongs to it; cylinders are ``C(empty, beta)``
and follower sets ``C(alpha, empty)``.  Expression trees over these
generators support membership, cardinality, relative range, prepending,
and canonical forms.

Canonical forms differ per backend:

* finite type: a set of same-length allowed prefixes at the minimal
  depth.  All Boolean operations and equality are exact.
* enumerated: either an explicit finite point set (resolved through the
  family prefix solvers), a reduced "meet of generators over a common
  prefix" form, or a sorted expression tree.  Equal canonical keys
  certify equal sets; distinct keys decide nothing.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from . import families as fam
from .points import PointDesc
from .sft import Cardinality, clopen_cardinality_of_words
from .subshift import Subshift
from .words import EMPTY, Word, word_key


class WordNotInLanguage(Exception):
    """A generator was requested for a word outside the language."""


# ----------------------------------------------------------------------
# expression nodes

GEN = "gen"
MEET = "meet"
JOIN = "join"
COMPL = "compl"
TOP = "top"
BOTTOM = "bottom"
FINITE = "finite"


class USet:
    """Immutable clopen-set expression with a cached canonical form."""

    __slots__ = ("spec", "op", "alpha", "beta", "children", "points", "_canon")

    def __init__(self, spec, op, alpha=EMPTY, beta=EMPTY, children=(), points=frozenset()):
        self.spec = spec
        self.op = op
        self.alpha = alpha
        self.beta = beta
        self.children = tuple(children)
        self.points = frozenset(points)
        self._canon = None

    # canonical-form identity
    def canonical(self):
        if self._canon is None:
            self._canon = _canonicalize(self)
        return self._canon

    def __eq__(self, other):
        if not isinstance(other, USet):
            return NotImplemented
        return self.spec is other.spec and self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())

    def __repr__(self):  # pragma: no cover - debugging aid
        return f"USet({describe(self)})"

    def is_empty(self) -> bool:
        return form_is_empty(self.canonical())


def form_is_empty(form) -> bool:
    """Emptiness of a canonical form (backend uniform)."""
    if form == (BOTTOM,):
        return True
    if form[0] in ("sft", "sft-finite"):
        return not form[-1]
    if form[0] == "finite":
        return not form[1]
    return False


def top(spec: Subshift) -> USet:
    return USet(spec, TOP)


def bottom(spec: Subshift) -> USet:
    return USet(spec, BOTTOM)


def generator(spec: Subshift, alpha: Word, beta: Word) -> USet:
    """The set ``{beta.x : alpha.x and beta.x in the subshift}``."""
    for w in (alpha, beta):
        if not spec.factor_allowed(w):
            raise WordNotInLanguage(f"word {w!r} is not in the language")
    return USet(spec, GEN, alpha=tuple(alpha), beta=tuple(beta))


def _gen(spec: Subshift, alpha: Word, beta: Word) -> USet:
    """Internal generator builder: out-of-language words give the empty set."""
    if not spec.factor_allowed(alpha) or not spec.factor_allowed(beta):
        return bottom(spec)
    return USet(spec, GEN, alpha=tuple(alpha), beta=tuple(beta))


def cylinder(spec: Subshift, beta: Word) -> USet:
    return generator(spec, EMPTY, beta)


def follower(spec: Subshift, alpha: Word) -> USet:
    return generator(spec, alpha, EMPTY)


def finite_set(spec: Subshift, points: Iterable[PointDesc]) -> USet:
    """Explicit finite point set.

    Only singletons known to lie in the Boolean algebra (detected
    singleton generators and their shift/preimage closure) should be
    wrapped this way; the constructor does not re-verify that fact.
    """
    return USet(spec, FINITE, points=frozenset(points))


def meet(*sets: USet) -> USet:
    spec = sets[0].spec
    return USet(spec, MEET, children=sets)


def join(*sets: USet) -> USet:
    spec = sets[0].spec
    return USet(spec, JOIN, children=sets)


def complement(a: USet) -> USet:
    return USet(a.spec, COMPL, children=(a,))


# ----------------------------------------------------------------------
# membership

def decide_membership(a: USet, p: PointDesc) -> bool:
    """Exact structural membership test for a declared point."""
    spec = a.spec
    if a.op == TOP:
        return True
    if a.op == BOTTOM:
        return False
    if a.op == FINITE:
        return p in a.points
    if a.op == MEET:
        return all(decide_membership(c, p) for c in a.children)
    if a.op == JOIN:
        return any(decide_membership(c, p) for c in a.children)
    if a.op == COMPL:
        return not decide_membership(a.children[0], p)
    # generator: p = beta.y with alpha.y in the subshift
    beta, alpha = a.beta, a.alpha
    if spec.expansion(p, len(beta)) != beta:
        return False
    tail = spec.shift_iter(p, len(beta))
    return spec.contains_prepend(alpha, tail) is not None


# ----------------------------------------------------------------------
# canonical forms

def _canonicalize(a: USet):
    if a.spec.kind == "sft":
        return _canon_sft(a)
    return _canon_enum(a)


# -- finite-type backend ------------------------------------------------

def _sft_depth_words(a: USet) -> Tuple[int, FrozenSet[Word]]:
    """(depth, words) with the set equal to the union of the cylinders
    on the depth-length words; not yet depth-minimal."""
    spec = a.spec
    aut = spec.automaton
    if a.op == TOP:
        return (0, frozenset({EMPTY}))
    if a.op == BOTTOM:
        return (0, frozenset())
    if a.op == FINITE:
        if not a.points:
            return (0, frozenset())
        # clopen only when every point is isolated: search for a cylinder
        # depth pinning each point
        pins = []
        for p in sorted(a.points, key=lambda d: d.sort_key()):
            pin = _pin_point(spec, p)
            if pin is None:
                raise _NotClopen(a.points)
            pins.append(pin)
        depth = max(d for d, _ in pins)
        words: Set[Word] = set()
        for d, w in pins:
            words |= _refine(spec, frozenset({w}), d, depth)
        return (depth, frozenset(words))
    if a.op == GEN:
        window = aut.window
        depth = len(a.beta) + window
        words = set()
        for u in aut.language(window):
            if aut.factor_allowed(a.alpha + u) and aut.factor_allowed(a.beta + u):
                words.add(a.beta + u)
        return (depth, frozenset(words))
    if a.op in (MEET, JOIN):
        forms = [c.canonical() for c in a.children]
        finite_parts = [f for f in forms if f[0] == "sft-finite"]
        word_parts = [f for f in forms if f[0] == "sft"]
        if finite_parts:
            return _sft_combine_finite(a, finite_parts, word_parts)
        if not word_parts:
            return (0, frozenset({EMPTY})) if a.op == MEET else (0, frozenset())
        depth = max(d for _, d, _ in word_parts)
        refined = [_refine(a.spec, words, d, depth) for _, d, words in word_parts]
        acc = set(refined[0])
        for words in refined[1:]:
            acc = acc & words if a.op == MEET else acc | words
        return (depth, frozenset(acc))
    if a.op == COMPL:
        form = a.children[0].canonical()
        if form[0] == "sft-finite":
            raise NotImplementedError(
                "complement of a non-clopen finite set over a finite-type subshift"
            )
        _, depth, words = form
        universe = aut.language(depth)
        return (depth, frozenset(universe - words))
    raise AssertionError(a.op)


def _sft_point_in_words(spec: Subshift, form, p: PointDesc) -> bool:
    _, depth, words = form
    return spec.expansion(p, depth) in words


def _sft_combine_finite(a: USet, finite_parts, word_parts):
    """Meets and joins whose children include non-clopen finite sets."""
    spec = a.spec
    if a.op == MEET:
        pts = set(finite_parts[0][1])
        for f in finite_parts[1:]:
            pts &= f[1]
        pts = {p for p in pts if all(_sft_point_in_words(spec, w, p) for w in word_parts)}
        raise _NotClopen(pts)
    # join: absorb the finite points into the clopen part when covered
    if not word_parts:
        pts = set()
        for f in finite_parts:
            pts |= f[1]
        raise _NotClopen(pts)
    depth = max(d for _, d, _ in word_parts)
    refined = [_refine(spec, words, d, depth) for _, d, words in word_parts]
    acc = set()
    for words in refined:
        acc |= words
    clopen = ("sft", depth, frozenset(acc))
    extras = {
        p
        for f in finite_parts
        for p in f[1]
        if not _sft_point_in_words(spec, clopen, p)
    }
    if extras:
        raise NotImplementedError(
            "union of a clopen set and uncovered isolated points is not supported"
        )
    return (depth, frozenset(acc))


class _NotClopen(Exception):
    """A finite point set with a non-isolated point is not clopen."""

    def __init__(self, points):
        self.points = frozenset(points)
        super().__init__(f"{len(self.points)} non-clopen points")


def _pin_point(spec: Subshift, p: PointDesc, max_depth: int = 24):
    """Smallest cylinder containing only ``p``, as ``(depth, word)``."""
    aut = spec.automaton
    for d in range(max_depth + 1):
        w = spec.expansion(p, d)
        state = aut.run(w)
        if state is None:
            return None
        kind, k = aut.count_paths(state)
        if kind == "finite" and k == 1:
            return (d, w)
    return None


def _refine(spec: Subshift, words: FrozenSet[Word], depth: int, target: int) -> Set[Word]:
    if depth == target:
        return set(words)
    out = set()
    for w in words:
        for v in _continuations(spec, w, target - depth):
            out.add(w + v)
    return out


def _continuations(spec: Subshift, w: Word, k: int) -> List[Word]:
    aut = spec.automaton
    state = aut.run(w)
    if state is None:
        return []
    level = [(EMPTY, state)]
    for _ in range(k):
        level = [
            (v + (sym,), t)
            for (v, s) in level
            for sym, t in aut.transitions[s].items()
        ]
    return [v for v, _ in level]


def _reduce_depth(spec: Subshift, depth: int, words: FrozenSet[Word]):
    aut = spec.automaton
    while depth > 0:
        stems: Dict[Word, List[Word]] = {}
        for w in aut.language(depth):
            stems.setdefault(w[:-1], []).append(w)
        collapsed = set()
        reducible = True
        for stem, extensions in stems.items():
            inside = sum(1 for w in extensions if w in words)
            if inside == len(extensions):
                collapsed.add(stem)
            elif inside != 0:
                reducible = False
                break
        if not reducible:
            break
        words = frozenset(collapsed)
        depth -= 1
    return ("sft", depth, frozenset(words))


def _canon_sft(a: USet):
    try:
        depth, words = _sft_depth_words(a)
    except _NotClopen as exc:
        # not an element of the Boolean algebra; keep the point set as
        # an opaque key (used only by formal tests over finite sets)
        return ("sft-finite", exc.points)
    return _reduce_depth(a.spec, depth, words)


# -- enumerated backend --------------------------------------------------

def _form_key(form):
    """Total deterministic order over canonical forms (frozensets are
    only partially ordered, so sorting needs an explicit key)."""
    if isinstance(form, frozenset):
        try:
            inner = sorted(_form_key(x) for x in form)
        except TypeError:  # pragma: no cover - defensive
            inner = sorted(repr(x) for x in form)
        return ("set", tuple(inner))
    if isinstance(form, PointDesc):
        return ("point", form.sort_key())
    if isinstance(form, tuple):
        return ("tuple", tuple(_form_key(x) for x in form))
    if form is None:
        return ("none",)
    return (type(form).__name__, form)


def _canon_enum(a: USet):
    spec = a.spec
    if a.op == TOP:
        return _meet_form(spec, EMPTY, ())
    if a.op == BOTTOM:
        return (BOTTOM,)
    if a.op == FINITE:
        return (BOTTOM,) if not a.points else ("finite", a.points)
    if a.op == GEN:
        return _meet_form(spec, a.beta, (a.alpha,))
    if a.op == MEET:
        return _canon_enum_meet([c.canonical() for c in a.children], spec)
    if a.op == JOIN:
        forms = [c.canonical() for c in a.children]
        flat: List = []
        for f in forms:
            if f == (BOTTOM,):
                continue
            if f[0] == JOIN:
                flat.extend(f[1])
            else:
                flat.append(f)
        if any(f == (TOP,) for f in flat):
            return (TOP,)
        finites = [f for f in flat if f[0] == "finite"]
        rest = [f for f in flat if f[0] != "finite"]
        if finites:
            merged = frozenset().union(*(f[1] for f in finites))
            rest.append(("finite", merged))
        rest = sorted(set(rest), key=_form_key)
        if not rest:
            return (BOTTOM,)
        if len(rest) == 1:
            return rest[0]
        return (JOIN, tuple(rest))
    if a.op == COMPL:
        inner = a.children[0].canonical()
        if inner == (BOTTOM,):
            return (TOP,)
        if inner == (TOP,):
            return (BOTTOM,)
        if inner[0] == COMPL:
            return inner[1]
        return (COMPL, inner)
    raise AssertionError(a.op)


def _meet_form(spec: Subshift, base: Word, firsts: Sequence[Word]):
    """Normalize a meet of generators sharing the prefix ``base``.

    The denoted set is ``{base.y in X : a.y in X for every a}``.
    Conditions implied by membership itself (suffixes of ``base``, the
    empty word) or by longer conditions (a condition that is a suffix of
    another is implied by it) are dropped, then a finite resolution is
    attempted through the prefix solvers.
    """
    kept: List[Word] = []
    for cond in firsts:
        if not cond:
            continue
        if len(cond) <= len(base) and base[len(base) - len(cond):] == cond:
            continue
        kept.append(tuple(cond))
    kept = sorted(set(kept), key=word_key)
    pruned = [
        c
        for c in kept
        if not any(
            d != c and len(c) <= len(d) and d[len(d) - len(c):] == c for d in kept
        )
    ]
    form = (MEET, tuple(base), tuple(pruned))
    resolved = _resolve_meet(spec, form)
    if resolved is not None:
        return (BOTTOM,) if not resolved else ("finite", frozenset(resolved))
    if form == (MEET, (), ()):
        return (TOP,)
    return form


def _resolve_meet(spec: Subshift, form) -> Optional[Set[PointDesc]]:
    """Exhaustive member list of a meet form, when some prefix solver
    answers finitely; None when the set may be infinite.

    Members are ``base.y`` with ``c.y`` in the subshift for every
    condition word ``c``.  Resolution can go through the base prefix or
    through any single condition, whichever is answered finitely.
    """
    _, base, firsts = form
    tag, pts = spec.points_with_prefix(base)
    if tag == fam.FINITE:
        out = set()
        for p in pts:
            tail = spec.shift_iter(p, len(base))
            if all(spec.contains_prepend(c, tail) is not None for c in firsts):
                out.add(p)
        return out
    for cond in firsts:
        tag, pts = spec.points_with_prefix(cond)
        if tag != fam.FINITE:
            continue
        out = set()
        for p in pts:
            y = spec.shift_iter(p, len(cond))
            member = spec.contains_prepend(base, y)
            if member is None:
                continue
            if all(
                c == cond or spec.contains_prepend(c, y) is not None for c in firsts
            ):
                out.add(member)
        return out
    return None


def _canon_enum_meet(forms: List, spec: Subshift):
    flat: List = []
    for f in forms:
        if f == (TOP,):
            continue
        if f == (BOTTOM,):
            return (BOTTOM,)
        if f[0] == MEET and isinstance(f[2], tuple):
            flat.append(f)
        elif f[0] == MEET:  # pragma: no cover - defensive
            flat.append(f)
        else:
            flat.append(f)
    if not flat:
        return (TOP,)

    finite_sets = [f[1] for f in flat if f[0] == "finite"]
    meets = [f for f in flat if f[0] == MEET]
    others = [f for f in flat if f[0] not in ("finite", MEET)]

    if finite_sets:
        acc = set(finite_sets[0])
        for s in finite_sets[1:]:
            acc &= s
        survivors = {
            p
            for p in acc
            if all(_member_of_form(spec, f, p) for f in meets + others)
        }
        return (BOTTOM,) if not survivors else ("finite", frozenset(survivors))

    if meets and not others:
        base = max((f[1] for f in meets), key=len)
        conds: List[Word] = []
        for _, b, firsts in meets:
            if base[: len(b)] != tuple(b):
                return (BOTTOM,)
            ext = base[len(b):]
            if ext:
                # rebase: members now carry the longer prefix
                conds.extend(tuple(c) + ext for c in firsts)
                conds.append(tuple(b) + ext)
            else:
                conds.extend(tuple(c) for c in firsts)
        return _meet_form(spec, base, conds)

    flat_sorted = tuple(sorted(set(flat), key=_form_key))
    if len(flat_sorted) == 1:
        return flat_sorted[0]
    return (MEET, None, flat_sorted)


def _member_of_form(spec: Subshift, form, p: PointDesc) -> bool:
    """Membership of a point in a canonical form."""
    if form == (TOP,):
        return True
    if form == (BOTTOM,):
        return False
    if form[0] == "finite":
        return p in form[1]
    if form[0] == MEET and form[1] is not None:
        _, base, firsts = form
        if spec.expansion(p, len(base)) != tuple(base):
            return False
        tail = spec.shift_iter(p, len(base))
        return all(spec.contains_prepend(c, tail) is not None for c in firsts)
    if form[0] == MEET:
        return all(_member_of_form(spec, f, p) for f in form[2])
    if form[0] == JOIN:
        return any(_member_of_form(spec, f, p) for f in form[1])
    if form[0] == COMPL:
        return not _member_of_form(spec, form[1], p)
    raise AssertionError(form)


def rebuild_from_form(spec: Subshift, form) -> USet:
    """Flat expression with the given canonical form.

    Collapses deep derivation trees (products chain relative ranges and
    prepends, which would otherwise grow without bound) into expressions
    whose size matches the canonical form itself.
    """
    out: USet
    if form == (TOP,):
        out = top(spec)
    elif form == (BOTTOM,):
        out = bottom(spec)
    elif form[0] == "finite":
        out = finite_set(spec, form[1])
    elif form[0] == "sft-finite":
        out = finite_set(spec, form[1])
    elif form[0] == "sft":
        _, depth, words = form
        if not words:
            out = bottom(spec)
        else:
            cylinders = [
                USet(spec, GEN, alpha=EMPTY, beta=w)
                for w in sorted(words, key=word_key)
            ]
            out = cylinders[0] if len(cylinders) == 1 else USet(
                spec, JOIN, children=cylinders
            )
    elif form[0] == MEET and form[1] is not None:
        _, base, firsts = form
        gens = [USet(spec, GEN, alpha=a, beta=tuple(base)) for a in firsts]
        if not gens:
            out = USet(spec, GEN, alpha=EMPTY, beta=tuple(base))
        elif len(gens) == 1:
            out = gens[0]
        else:
            out = USet(spec, MEET, children=gens)
    elif form[0] == MEET:
        out = USet(
            spec, MEET, children=[rebuild_from_form(spec, f) for f in form[2]]
        )
    elif form[0] == JOIN:
        out = USet(
            spec, JOIN, children=[rebuild_from_form(spec, f) for f in form[1]]
        )
    elif form[0] == COMPL:
        out = USet(spec, COMPL, children=(rebuild_from_form(spec, form[1]),))
    else:  # pragma: no cover - defensive
        raise AssertionError(form)
    out._canon = form
    return out


def compact(a: USet) -> USet:
    """Flatten an expression to the canonical-form skeleton."""
    return rebuild_from_form(a.spec, a.canonical())


# ----------------------------------------------------------------------
# derived operations

def relative_range(a: USet, alpha: Word) -> USet:
    """The set ``{x in X : alpha.x in a}``."""
    spec = a.spec
    alpha = tuple(alpha)
    if not alpha:
        return a
    if a.op == TOP:
        return _gen(spec, alpha, EMPTY)
    if a.op == BOTTOM:
        return a
    if a.op == FINITE:
        out = set()
        for p in a.points:
            if spec.expansion(p, len(alpha)) == alpha:
                out.add(spec.shift_iter(p, len(alpha)))
        return finite_set(spec, out)
    if a.op == MEET:
        return meet(*(relative_range(c, alpha) for c in a.children)) if a.children else _gen(spec, alpha, EMPTY)
    if a.op == JOIN:
        return join(*(relative_range(c, alpha) for c in a.children)) if a.children else bottom(spec)
    if a.op == COMPL:
        inside = relative_range(a.children[0], alpha)
        return meet(_gen(spec, alpha, EMPTY), complement(inside))
    # generator C(a', b'): alpha.x in C(a', b') needs alpha.x = b'.y
    aprime, bprime = a.alpha, a.beta
    if bprime[: len(alpha)] == alpha:
        c = bprime[len(alpha):]
        return meet(_gen(spec, aprime, c), _gen(spec, bprime, c))
    if alpha[: len(bprime)] == bprime:
        d = alpha[len(bprime):]
        return meet(_gen(spec, aprime + d, EMPTY), _gen(spec, alpha, EMPTY))
    return bottom(spec)


def prepend(w: Word, a: USet) -> USet:
    """The set ``{w.x in X : x in a}``."""
    spec = a.spec
    w = tuple(w)
    if not w:
        return a
    if a.op == TOP:
        return _gen(spec, EMPTY, w)
    if a.op == BOTTOM:
        return a
    if a.op == FINITE:
        out = set()
        for p in a.points:
            q = spec.contains_prepend(w, p)
            if q is not None:
                out.add(q)
        return finite_set(spec, out)
    if a.op == MEET:
        return meet(*(prepend(w, c) for c in a.children)) if a.children else _gen(spec, EMPTY, w)
    if a.op == JOIN:
        return join(*(prepend(w, c) for c in a.children)) if a.children else bottom(spec)
    if a.op == COMPL:
        return meet(_gen(spec, EMPTY, w), complement(prepend(w, a.children[0])))
    return _gen(spec, a.alpha, w + a.beta)


# ----------------------------------------------------------------------
# cardinality

@dataclass(frozen=True)
class SetSize:
    """Cardinality classes needed by the theory: 0, 1, more, or unknown."""

    kind: str  # "empty" | "singleton" | "atleast" | "unknown"
    point: Optional[PointDesc] = None
    count: int = 2
    bound: int = 0

    @property
    def is_empty(self):
        return self.kind == "empty"

    @property
    def is_singleton(self):
        return self.kind == "singleton"


def cardinality(a: USet, bound: Optional[int] = None) -> SetSize:
    """Resolve the size class of a clopen set.

    Exact over finite-type subshifts.  Over enumerated subshifts the
    prefix solvers give exact answers whenever every provider answers
    finitely; otherwise up to ``bound`` samples are drawn and the answer
    degrades to ``atleast``/``unknown``.
    """
    spec = a.spec
    bound = bound if bound is not None else spec.bounds.cardinality_bound
    if spec.kind == "sft":
        form = a.canonical()
        if form[0] == "sft-finite":
            pts = form[1]
            if not pts:
                return SetSize("empty")
            if len(pts) == 1:
                (p,) = pts
                return SetSize("singleton", point=p)
            return SetSize("atleast")
        _, depth, words = form
        card = clopen_cardinality_of_words(spec.automaton, set(words))
        if card.kind == "empty":
            return SetSize("empty")
        if card.kind == "singleton":
            return SetSize("singleton", point=card.point)
        return SetSize("atleast")
    form = a.canonical()
    return _enum_size(spec, form, bound)


def _enum_size(spec: Subshift, form, bound: int) -> SetSize:
    if form == (BOTTOM,):
        return SetSize("empty")
    if form[0] == "finite":
        pts = form[1]
        if len(pts) == 1:
            (p,) = pts
            return SetSize("singleton", point=p)
        return SetSize("atleast")
    if form == (TOP,) or (form[0] == MEET and form[1] is not None):
        base, firsts = (EMPTY, ()) if form == (TOP,) else (form[1], form[2])
        resolved = _resolve_meet(spec, (MEET, base, firsts))
        if resolved is not None:
            if not resolved:
                return SetSize("empty")
            if len(resolved) == 1:
                (p,) = resolved
                return SetSize("singleton", point=p)
            return SetSize("atleast")
        if not firsts:
            # the providers themselves report infinitely many members
            return SetSize("atleast")
        _, pts = spec.prefixed_points(tuple(base), bound)
        found = []
        for p in pts:
            tail = spec.shift_iter(p, len(base))
            if all(spec.contains_prepend(c, tail) is not None for c in firsts):
                found.append(p)
                if len(found) >= 2:
                    return SetSize("atleast")
        return SetSize("unknown", bound=bound)
    if form[0] == JOIN:
        sizes = [_enum_size(spec, f, bound) for f in form[1]]
        if all(s.is_empty for s in sizes):
            return SetSize("empty")
        nonempty = [s for s in sizes if not s.is_empty]
        if any(s.kind == "atleast" for s in nonempty):
            return SetSize("atleast")
        if any(s.kind == "unknown" for s in nonempty):
            return SetSize("unknown", bound=bound)
        points = {s.point for s in nonempty}
        if len(points) == 1:
            return SetSize("singleton", point=points.pop())
        return SetSize("atleast")
    # complement or unreduced meet: sample declared points
    found = []
    for p in spec.sample_points(bound):
        if _member_of_form(spec, form, p):
            found.append(p)
            if len(found) >= 2:
                return SetSize("atleast")
    return SetSize("unknown", bound=bound)


# ----------------------------------------------------------------------
# containment (used by the cycle classifier)

def contains(a: USet, b: USet, bound: Optional[int] = None) -> Optional[bool]:
    """Decide ``b`` a subset of ``a``; None when not certified."""
    spec = a.spec
    if spec.kind == "sft":
        fa, fb = a.canonical(), b.canonical()
        if fb[0] == "sft-finite":
            return all(decide_membership(a, p) for p in fb[1])
        if fa[0] == "sft-finite":
            size = cardinality(b)
            if size.is_empty:
                return True
            if size.is_singleton:
                return decide_membership(a, size.point)
            return None
        depth = max(fa[1], fb[1])
        wa = _refine(spec, fa[2], fa[1], depth)
        wb = _refine(spec, fb[2], fb[1], depth)
        return wb <= wa
    fb = b.canonical()
    if fb == (BOTTOM,):
        return True
    if fb[0] == "finite":
        return all(decide_membership(a, p) for p in fb[1])
    if a.canonical() == (TOP,):
        return True
    if fb == a.canonical():
        return True
    return None


# ----------------------------------------------------------------------
# display

def describe(a: USet) -> str:
    """Readable expression form used by reports and pretty printers."""
    from .words import format_word

    if a.op == TOP:
        return "X"
    if a.op == BOTTOM:
        return "∅"
    if a.op == GEN:
        if not a.alpha and not a.beta:
            return "X"
        if not a.alpha:
            return f"Z({format_word(a.beta)})"
        if not a.beta:
            return f"F({format_word(a.alpha)})"
        return f"C({format_word(a.alpha)},{format_word(a.beta)})"
    if a.op == FINITE:
        inner = ",".join(str(p) for p in sorted(a.points, key=lambda d: d.sort_key()))
        return "{" + inner + "}"
    if a.op == MEET:
        return "(" + " ∧ ".join(describe(c) for c in a.children) + ")"
    if a.op == JOIN:
        return "(" + " ∨ ".join(describe(c) for c in a.children) + ")"
    return "¬" + describe(a.children[0])
