"""Exact language engine for finite-type subshifts over finite alphabets.

The engine is a follower automaton: states are the allowed windows of
length ``M - 1`` (``M`` = longest forbidden word), plus the shorter
boundary windows seen while fewer than ``M - 1`` letters have been read.
Dead states (no infinite continuation) are pruned at build time, so a
word is in the language exactly when it labels a run from the root that
ends in a surviving state.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

from .points import PointDesc, eventually_periodic
from .words import Symbol, Word, word_key


@dataclass(frozen=True)
class SftSpec:
    """A subshift of finite type: finite alphabet plus forbidden words.

    The forbidden set is minimized on construction (a forbidden word
    containing another is redundant).
    """

    alphabet: Tuple[Symbol, ...]
    forbidden: FrozenSet[Word]

    def __init__(self, alphabet, forbidden=()):
        alphabet = tuple(sorted(set(alphabet), key=lambda s: (str(type(s)), s)))
        words = {tuple(w) for w in forbidden}
        if any(not w for w in words):
            raise ValueError("the empty word cannot be forbidden")
        minimal = {
            w
            for w in words
            if not any(v != w and _is_factor(v, w) for v in words)
        }
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "forbidden", frozenset(minimal))

    @property
    def step(self) -> int:
        return max((len(w) for w in self.forbidden), default=0)


def _is_factor(needle: Word, haystack: Word) -> bool:
    n = len(needle)
    return any(haystack[i : i + n] == needle for i in range(len(haystack) - n + 1))


class FollowerAutomaton:
    """Deterministic window automaton for an :class:`SftSpec`."""

    def __init__(self, spec: SftSpec):
        self.spec = spec
        self.window = max(spec.step - 1, 0)
        self._build()

    def _forbidden_suffix(self, w: Word) -> bool:
        return any(
            len(f) <= len(w) and w[len(w) - len(f) :] == f for f in self.spec.forbidden
        )

    def _build(self) -> None:
        trans: Dict[Word, Dict[Symbol, Word]] = {(): {}}
        frontier: List[Word] = [()]
        while frontier:
            state = frontier.pop()
            for a in self.spec.alphabet:
                grown = state + (a,)
                if self._forbidden_suffix(grown):
                    continue
                target = grown if len(grown) <= self.window else grown[1:]
                trans[state][a] = target
                if target not in trans:
                    trans[target] = {}
                    frontier.append(target)
        # prune states with no infinite continuation
        while True:
            dead = {s for s, out in trans.items() if not out}
            if not dead:
                break
            for s in dead:
                del trans[s]
            for out in trans.values():
                for a in [a for a, t in out.items() if t in dead]:
                    del out[a]
        self.transitions = trans
        self.live: Set[Word] = set(trans)
        self._count_cache: Dict[Word, Tuple[str, int]] = {}

    def run(self, w: Word, start: Word = ()) -> Optional[Word]:
        """State reached by reading ``w`` from ``start``; None if the run
        dies (a forbidden factor appeared or no live continuation)."""
        state = start
        if state not in self.transitions:
            return None
        for a in w:
            nxt = self.transitions[state].get(a)
            if nxt is None:
                return None
            state = nxt
        return state

    def factor_allowed(self, w: Word) -> bool:
        return self.run(w) is not None

    def language(self, n: int) -> Set[Word]:
        """All length-``n`` factors of points of the subshift."""
        if () not in self.transitions:
            return set()
        level: List[Tuple[Word, Word]] = [((), ())]
        for _ in range(n):
            level = [
                (w + (a,), t)
                for (w, s) in level
                for a, t in sorted(
                    self.transitions[s].items(), key=lambda kv: word_key((kv[0],))
                )
            ]
        return {w for w, _ in level}

    def language_upto(self, n: int) -> Set[Word]:
        out: Set[Word] = set()
        for k in range(n + 1):
            out |= self.language(k)
        return out

    # -- infinite path counting ---------------------------------------

    def _reachable(self, starts: Set[Word]) -> Set[Word]:
        seen = set(starts)
        stack = list(starts)
        while stack:
            s = stack.pop()
            for t in self.transitions[s].values():
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        return seen

    def _cycle_states(self, states: Set[Word]) -> Set[Word]:
        """States (within ``states``) that can reach themselves."""
        on_cycle = set()
        for s in states:
            frontier = {t for t in self.transitions[s].values() if t in states}
            seen = set(frontier)
            while frontier:
                nxt = set()
                for u in frontier:
                    for t in self.transitions[u].values():
                        if t in states and t not in seen:
                            seen.add(t)
                            nxt.add(t)
                frontier = nxt
            if s in seen:
                on_cycle.add(s)
        return on_cycle

    def count_paths(self, start: Word, cap: int = 64) -> Tuple[str, int]:
        """Number of infinite paths from ``start``.

        Returns ``("infinite", 0)``, or ``("finite", k)`` with ``k``
        capped at ``cap``.  After pruning, every state has at least one
        continuation, so a branching state on a cycle forces infinitely
        many paths; otherwise paths split only finitely often.
        """
        if start not in self.transitions:
            return ("finite", 0)
        cached = self._count_cache.get(start)
        if cached is not None:
            return cached
        reach = self._reachable({start})
        cycles = self._cycle_states(reach)
        if any(len(self.transitions[s]) >= 2 for s in cycles):
            result = ("infinite", 0)
            self._count_cache[start] = result
            return result

        memo: Dict[Word, int] = {}

        def count(s: Word) -> int:
            if s in cycles:
                return 1
            if s in memo:
                return memo[s]
            total = min(cap, sum(count(t) for t in self.transitions[s].values()))
            memo[s] = total
            return total

        result = ("finite", count(start))
        self._count_cache[start] = result
        return result

    def unique_path_point(self, prefix: Word, start: Word) -> PointDesc:
        """The single point with the given prefix when ``count_paths``
        returned one: follow the deterministic run until a state repeats
        and fold the loop into an eventually periodic descriptor."""
        labels: List[Symbol] = []
        seen: Dict[Word, int] = {start: 0}
        state = start
        while True:
            ((a, nxt),) = self.transitions[state].items()
            labels.append(a)
            if nxt in seen:
                split = seen[nxt]
                stem = tuple(labels[:split])
                loop = tuple(labels[split:])
                return eventually_periodic(prefix + stem, loop)
            seen[nxt] = len(labels)
            state = nxt


@dataclass
class Cardinality:
    """Exact cardinality class of a clopen set of an SFT."""

    kind: str  # "empty" | "singleton" | "finite" | "infinite"
    count: int = 0
    point: Optional[PointDesc] = None

    @staticmethod
    def empty() -> "Cardinality":
        return Cardinality("empty", 0)

    @staticmethod
    def singleton(p: PointDesc) -> "Cardinality":
        return Cardinality("singleton", 1, p)

    @staticmethod
    def finite(k: int) -> "Cardinality":
        return Cardinality("finite", k)

    @staticmethod
    def infinite() -> "Cardinality":
        return Cardinality("infinite", 0)


def clopen_cardinality_of_words(
    aut: FollowerAutomaton, depth_words: Set[Word]
) -> Cardinality:
    """Cardinality of a union of cylinders given by same-depth words."""
    if not depth_words:
        return Cardinality.empty()
    total = 0
    witness: Optional[Tuple[Word, Word]] = None
    for w in sorted(depth_words, key=word_key):
        state = aut.run(w)
        if state is None:
            continue
        kind, k = aut.count_paths(state)
        if kind == "infinite":
            return Cardinality.infinite()
        total += k
        if k == 1 and witness is None:
            witness = (w, state)
    if total == 0:
        return Cardinality.empty()
    if total == 1 and witness is not None:
        return Cardinality.singleton(aut.unique_path_point(*witness))
    return Cardinality.finite(total)
