"""Free-group words over named generators.

Shared between the surface calculus (words in the pi_1 generators
a1..ag, b1..bg) and the finitely presented group engine, which allows
arbitrary generator names of the shape letter(s)+index.

A word is a tuple of (generator, sign) pairs with sign +1 or -1.

Text syntax, tokens separated by whitespace:

    a1 b2~ [a1,b1~]

A trailing ``~`` inverts the generator it follows.  ``[x,y]`` expands to
the commutator x y x~ y~ at parse time; the bracket entries may carry
``~`` themselves.  Commutators do not nest.
"""

from __future__ import annotations

import re

Letter = tuple[str, int]
Word = tuple[Letter, ...]

_NAME = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
_COMMUTATOR = re.compile(r"\[([^\[\],\s]+),([^\[\],\s]+)\]\Z")


class WordSyntaxError(ValueError):
    """A token could not be read as a generator, inverse, or commutator."""


def _inverse_letter(letter: Letter) -> Letter:
    return (letter[0], -letter[1])


def _parse_atom(token: str) -> Letter:
    if token.endswith("~"):
        name, sign = token[:-1], -1
    else:
        name, sign = token, 1
    if not _NAME.match(name):
        raise WordSyntaxError(f"bad generator token {token!r}")
    return (name, sign)


def parse_word(text: str) -> Word:
    """Parse whitespace-separated word tokens into a Word."""
    letters: list[Letter] = []
    for token in text.split():
        m = _COMMUTATOR.match(token)
        if m is not None:
            x = _parse_atom(m.group(1))
            y = _parse_atom(m.group(2))
            letters.extend((x, y, _inverse_letter(x), _inverse_letter(y)))
        else:
            letters.append(_parse_atom(token))
    return tuple(letters)


def format_word(word: Word) -> str:
    """Render a word back to token text (commutators stay expanded)."""
    return " ".join(name if sign > 0 else name + "~" for name, sign in word)


def invert_word(word: Word) -> Word:
    return tuple(_inverse_letter(letter) for letter in reversed(word))


def free_reduce(word: Word) -> Word:
    """Cancel adjacent x x~ pairs until none remain."""
    out: list[Letter] = []
    for letter in word:
        if out and out[-1][0] == letter[0] and out[-1][1] == -letter[1]:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def exponent_sums(word: Word) -> dict[str, int]:
    """Signed exponent sum per generator appearing in the word."""
    sums: dict[str, int] = {}
    for name, sign in word:
        sums[name] = sums.get(name, 0) + sign
    return sums
