"""Alphabet, words and the balanced-word languages O_n.

Letters are single ASCII characters: ``a b c`` are the generators of the three
axes and ``A B C`` their inverses.  The canonical letter order used for every
enumeration and tie-break is ``a < A < b < B < c < C``.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import Iterator, Sequence, Union

from .errors import InvalidCharacter, ResourceBound

ALPHABET = "aAbBcC"
DEFAULT_CAP = 10**7


def enumeration_cap(cap=None):
    """Resolve the candidate-string cap: explicit value, then $MIXFORGE_CAP, then default."""
    if cap is not None:
        return int(cap)
    env = os.environ.get("MIXFORGE_CAP")
    if env:
        return int(env)
    return DEFAULT_CAP


def alphabet(n: int) -> str:
    if not 1 <= n <= 3:
        raise ValueError(f"dimension must be 1, 2 or 3, got {n}")
    return ALPHABET[: 2 * n]


@dataclass(frozen=True, order=True)
class Letter:
    axis: int
    sign: int

    def __post_init__(self):
        if not 1 <= self.axis <= 3:
            raise ValueError(f"axis out of range: {self.axis}")
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1: {self.sign}")

    @classmethod
    def from_char(cls, ch: str) -> "Letter":
        i = ALPHABET.index(ch)
        return cls(i // 2 + 1, 1 if i % 2 == 0 else -1)

    @property
    def char(self) -> str:
        return ALPHABET[2 * (self.axis - 1) + (0 if self.sign > 0 else 1)]

    def __str__(self):
        return self.char


def inverse_letter(letter):
    """Same axis, opposite sign.  Accepts a Letter or a one-character string."""
    if isinstance(letter, Letter):
        return Letter(letter.axis, -letter.sign)
    return letter.swapcase()


@dataclass(frozen=True)
class Word:
    """An immutable word over the O_n alphabet; ``text`` is its ASCII spelling."""

    text: str
    n: int = 2

    def __post_init__(self):
        allowed = alphabet(self.n)
        for i, ch in enumerate(self.text):
            if ch not in allowed:
                raise InvalidCharacter(i, ch, self.n)

    @property
    def letters(self) -> tuple:
        return tuple(Letter.from_char(ch) for ch in self.text)

    def __len__(self):
        return len(self.text)

    def __str__(self):
        return self.text

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, key):
        if isinstance(key, slice):
            return Word(self.text[key], self.n)
        return Letter.from_char(self.text[key])

    def __add__(self, other):
        if isinstance(other, Word):
            return Word(self.text + other.text, max(self.n, other.n))
        return Word(self.text + other, self.n)


WordLike = Union[Word, str]


def as_text(w: WordLike) -> str:
    return w.text if isinstance(w, Word) else w


def parse_word(text: str, n: int = 2) -> Word:
    return Word(text, n)


def format_word(w: WordLike) -> str:
    return as_text(w)


def _dimension_of(w: WordLike, n) -> int:
    if n is not None:
        return n
    if isinstance(w, Word):
        return w.n
    return 3 if any(ch in "cC" for ch in w) else 2


def displacement(w: WordLike, n: int | None = None) -> tuple:
    """Net lattice translation of the path spelled by ``w`` (one integer per axis)."""
    text = as_text(w)
    n = _dimension_of(w, n)
    out = [0] * n
    for ch in text:
        i = ALPHABET.index(ch)
        out[i // 2] += 1 if i % 2 == 0 else -1
    return tuple(out)


def in_On(w: WordLike, n: int | None = None) -> bool:
    text = as_text(w)
    return all(text.count(ch) == text.count(ch.upper()) for ch in "abc")


def _balanced(length: int, n: int) -> Iterator[str]:
    # depth-first in canonical letter order; prune when the remaining
    # letters cannot cancel the current displacement
    letters = alphabet(n)
    pos = [0] * n
    buf = []

    def rec(remaining):
        if remaining == 0:
            yield "".join(buf)
            return
        for ch in letters:
            i = ALPHABET.index(ch)
            axis, step = i // 2, (1 if i % 2 == 0 else -1)
            pos[axis] += step
            if sum(map(abs, pos)) <= remaining - 1:
                buf.append(ch)
                yield from rec(remaining - 1)
                buf.pop()
            pos[axis] -= step

    yield from rec(length)


def enumerate_On(length: int, n: int = 2, cap: int | None = None) -> list:
    """All words of exactly ``length`` letters in O_n, in canonical lexicographic order."""
    if length < 0:
        raise ValueError("length must be non-negative")
    cap = enumeration_cap(cap)
    if (2 * n) ** length > cap:
        raise ResourceBound(f"(2n)^length = {(2 * n) ** length} exceeds cap {cap}")
    if length % 2:
        return []
    return [Word(t, n) for t in _balanced(length, n)]


def enumerate_On_text(max_length: int, n: int = 2, cap: int | None = None) -> Iterator[str]:
    """Plain-string variant of :func:`enumerate_On` over all lengths up to ``max_length``."""
    cap = enumeration_cap(cap)
    for m in range(0, max_length + 1, 2):
        if (2 * n) ** m > cap:
            raise ResourceBound(f"(2n)^length = {(2 * n) ** m} exceeds cap {cap}")
        yield from _balanced(m, n)


def brute_force_On(length: int, n: int) -> list:
    """Filter every string of the given length; the slow reference for tests."""
    letters = alphabet(n)
    return [
        "".join(p)
        for p in itertools.product(letters, repeat=length)
        if in_On("".join(p))
    ]


def concat(parts: Sequence[WordLike]) -> str:
    return "".join(as_text(p) for p in parts)
