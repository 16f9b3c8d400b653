"""Words in free groups: parsing, free reduction, canonical forms, enumeration.

Text grammar::

    word := term ('*' term)* | <empty>
    term := var ('^' int)?
    var  := 'x' digits | 'x' | 'y' | 'z'
    int  := '-'? digits

Whitespace is ignored; ``x``, ``y``, ``z`` alias ``x1``, ``x2``, ``x3``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterator

from .errors import BudgetExceeded, WordSyntaxError

MAX_ENUM_RANK = 3
MAX_ENUM_LENGTH = 16

_ALIASES = {"x": 1, "y": 2, "z": 3}
_TOKEN = re.compile(r"\s*(?:(x\d+|[xyz])|(\^)|(\*)|(-?\d+))")


def _reduce(letters) -> tuple:
    out: list[list[int]] = []
    for v, e in letters:
        if e == 0:
            continue
        if out and out[-1][0] == v:
            out[-1][1] += e
            if out[-1][1] == 0:
                out.pop()
        else:
            out.append([v, e])
    return tuple((v, e) for v, e in out)


@dataclass(frozen=True)
class Word:
    """Freely reduced word as ``(variable, exponent)`` syllables."""

    letters: tuple = ()
    rank: int = 0

    def __post_init__(self):
        letters = _reduce(self.letters)
        object.__setattr__(self, "letters", letters)
        used = max((v for v, _ in letters), default=0)
        if self.rank < used:
            object.__setattr__(self, "rank", used)

    @classmethod
    def from_letters(cls, letters, rank: int = 0) -> "Word":
        return cls(tuple((int(v), int(e)) for v, e in letters), rank)

    def __str__(self) -> str:
        return "*".join(f"x{v}" if e == 1 else f"x{v}^{e}" for v, e in self.letters)

    def __len__(self) -> int:
        """Total letter count, the sum of absolute exponents."""
        return sum(abs(e) for _, e in self.letters)

    @property
    def variables(self) -> tuple:
        return tuple(sorted({v for v, _ in self.letters}))

    def with_rank(self, rank: int) -> "Word":
        return Word(self.letters, rank)


def parse(text: str, rank: int = 0) -> Word:
    """Parse word text; raises ``WordSyntaxError`` with a character position."""
    letters = []
    pos = 0
    expect_term = True
    text_end = len(text.rstrip())
    if text_end == 0:
        return Word((), rank)
    while pos < text_end:
        m = _TOKEN.match(text, pos)
        if not m:
            skipped = len(text[pos:]) - len(text[pos:].lstrip())
            raise WordSyntaxError("unexpected character", pos + skipped)
        var, caret, star, num = m.groups()
        start = m.start(m.lastindex)
        if expect_term:
            if var is None:
                raise WordSyntaxError("expected a variable", start)
            v = _ALIASES.get(var) or int(var[1:])
            if v < 1:
                raise WordSyntaxError("variable indices start at 1", start)
            pos = m.end()
            exp = 1
            m2 = _TOKEN.match(text, pos)
            if m2 and m2.group(2):
                pos = m2.end()
                m3 = _TOKEN.match(text, pos)
                if not (m3 and m3.group(4)):
                    raise WordSyntaxError("expected an integer exponent", pos)
                exp = int(m3.group(4))
                pos = m3.end()
            letters.append((v, exp))
            expect_term = False
        else:
            if star is None:
                raise WordSyntaxError("expected '*'", start)
            pos = m.end()
            expect_term = True
    if expect_term:
        raise WordSyntaxError("dangling '*'", text_end)
    return Word(tuple(letters), rank)


def invert(w: Word) -> Word:
    return Word(tuple((v, -e) for v, e in reversed(w.letters)), w.rank)


def cyclic_reduce(w: Word) -> Word:
    letters = list(w.letters)
    while len(letters) >= 2 and letters[0][0] == letters[-1][0]:
        v, a = letters[0]
        _, b = letters.pop()
        if a + b:
            letters[0] = (v, a + b)
        else:
            letters.pop(0)
    return Word(tuple(letters), w.rank)


def _key(letters) -> tuple:
    # positive exponents before negative ones of the same size
    return tuple((v, abs(e), e < 0) for v, e in letters)


def canonical_form(w: Word) -> Word:
    """Least representative under rotation, inversion, and variable renaming/flips."""
    base = cyclic_reduce(w)
    if not base.letters:
        return base
    r = base.rank
    seqs = [base.letters, invert(base).letters]
    best = None
    for perm in itertools.permutations(range(1, r + 1)):
        for signs in itertools.product((1, -1), repeat=r):
            for seq in seqs:
                mapped = [(perm[v - 1], e * signs[v - 1]) for v, e in seq]
                for i in range(len(mapped)):
                    cand = _key(mapped[i:] + mapped[:i])
                    if best is None or cand < best:
                        best = cand
    letters = tuple((v, -a if neg else a) for v, a, neg in best)
    return Word(letters, r)


def _syllable_sequences(rank: int, length: int) -> Iterator[tuple]:
    """Cyclically reduced syllable sequences of total length ``length``.

    Only sequences in a normal form for variable renaming and sign flips
    are produced: variables appear in order of first use and each first
    occurrence has positive exponent.
    """

    def rec(prefix, remaining, used):
        if remaining == 0:
            if len(prefix) >= 2 and prefix[0][0] == prefix[-1][0]:
                return
            yield tuple(prefix)
            return
        last = prefix[-1][0] if prefix else 0
        for v in range(1, min(used + 1, rank) + 1):
            if v == last:
                continue
            new = v > used
            for a in range(1, remaining + 1):
                for sign in ((1,) if new else (1, -1)):
                    prefix.append((v, sign * a))
                    yield from rec(prefix, remaining - a, max(used, v))
                    prefix.pop()

    yield from rec([], length, 0)


def enumerate_words(rank: int, max_total_length: int, start_length: int = 1) -> Iterator[Word]:
    """One representative per canonical class of nonempty cyclically reduced words.

    Words come in nondecreasing total length, lexicographic within a length.
    """
    if rank > MAX_ENUM_RANK or max_total_length > MAX_ENUM_LENGTH:
        raise BudgetExceeded(
            f"enumeration limited to rank <= {MAX_ENUM_RANK}, length <= {MAX_ENUM_LENGTH}",
            estimate=max_total_length, budget=MAX_ENUM_LENGTH)
    return (w for length in range(max(1, start_length), max_total_length + 1)
            for w in words_of_length(rank, length))


def words_of_length(rank: int, length: int) -> list:
    found = {}
    for seq in _syllable_sequences(rank, length):
        w = Word(seq)
        c = canonical_form(w)
        if c.letters == seq:
            found[_key(seq)] = c
    return [found[k] for k in sorted(found)]
