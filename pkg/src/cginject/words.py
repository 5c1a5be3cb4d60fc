"""Words in a named generator alphabet.

A word is a tuple of ``(name, exponent)`` pairs with nonzero exponents. Text
form is whitespace-separated letters with optional ``^n`` exponents, e.g.
``"g1 g2^-1 g1^3"``.
"""

import re

from .errors import MalformedInputError

_LETTER = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:\^(-?\d+))?$")


def parse_word(text):
    word = []
    for tok in text.split():
        m = _LETTER.match(tok)
        if not m:
            raise MalformedInputError(f"bad letter {tok!r} in word {text!r}")
        exp = int(m.group(2)) if m.group(2) is not None else 1
        if exp:
            word.append((m.group(1), exp))
    return tuple(word)


def format_word(word):
    if not word:
        return "e"
    return " ".join(n if e == 1 else f"{n}^{e}" for n, e in word)


def invert_word(word):
    return tuple((n, -e) for n, e in reversed(word))


def letters(word):
    """Expand exponents into a sequence of ``(name, +-1)`` letters."""
    for n, e in word:
        s = 1 if e > 0 else -1
        for _ in range(abs(e)):
            yield n, s


def free_reduce(word):
    out = []
    for n, s in letters(word):
        if out and out[-1][0] == n and out[-1][1] == -s:
            out.pop()
        else:
            out.append((n, s))
    return tuple(out)
