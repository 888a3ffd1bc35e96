"""Symbols and finite words.

A symbol is either a single-character string (finite alphabets such as
``{a, b, c}``) or an integer (countable alphabets, encoded as subsets of
the integers).  A word is a tuple of symbols; the empty word is written
``ω`` in all user-facing output.
"""

from __future__ import annotations

from typing import Tuple, Union

Symbol = Union[int, str]
Word = Tuple[Symbol, ...]

EMPTY: Word = ()

OMEGA_GLYPH = "ω"


def word(*symbols: Symbol) -> Word:
    return tuple(symbols)


def parse_word(text: str, integer_alphabet: bool = False) -> Word:
    """Parse a word from its textual form.

    Character alphabets are written as plain strings (``"010"``), integer
    alphabets as comma-separated values (``"1,2,3"``).  ``ω`` (or the
    empty string) denotes the empty word.
    """
    text = text.strip()
    if text in ("", OMEGA_GLYPH, "w"):
        return EMPTY
    if integer_alphabet:
        return tuple(int(part) for part in text.split(","))
    return tuple(text)


def format_word(w: Word) -> str:
    if not w:
        return OMEGA_GLYPH
    if all(isinstance(s, str) for s in w):
        return "".join(w)  # type: ignore[arg-type]
    return ",".join(str(s) for s in w)


def symbol_key(s: Symbol):
    """Total order over mixed symbols (ints before strings)."""
    return (0, s, "") if isinstance(s, int) else (1, 0, s)


def word_key(w: Word):
    """Deterministic word order: by length, then symbol-wise."""
    return (len(w), tuple(symbol_key(s) for s in w))


def is_proper_power(w: Word) -> bool:
    """True iff ``w`` equals ``u^k`` for some shorter ``u`` and ``k >= 2``."""
    n = len(w)
    for d in range(1, n):
        if n % d == 0 and w == w[:d] * (n // d):
            return True
    return False


def primitive_root(w: Word) -> Word:
    """Shortest ``u`` with ``w == u^k``."""
    n = len(w)
    for d in range(1, n + 1):
        if n % d == 0 and w == w[:d] * (n // d):
            return w[:d]
    return w


def rotations_equal(u: Word, v: Word) -> bool:
    """True iff ``u`` and ``v`` are rotations of one another."""
    if len(u) != len(v):
        return False
    if not u:
        return True
    return any(v == u[i:] + u[:i] for i in range(len(u)))
