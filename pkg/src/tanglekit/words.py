"""Words in free groups, with parsing, free and cyclic reduction."""

from __future__ import annotations

import re
from dataclasses import dataclass

_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<sym>[A-Za-z][A-Za-z]*_?\d*)"
    r"|(?P<pow>\^\s*\{?\s*(?P<exp>[+-]?\s*\d+)\s*\}?)"
    r"|(?P<open>\()|(?P<close>\))|(?P<one>1)|(?P<op>[*.])"
    r")"
)


@dataclass(frozen=True)
class Word:
    """A sequence of letters ``(symbol, +1|-1)``; stored exactly as written."""

    letters: tuple = ()

    @classmethod
    def gen(cls, symbol, exponent=1):
        sign = 1 if exponent > 0 else -1
        return cls(((symbol, sign),) * abs(exponent))

    @classmethod
    def parse(cls, text):
        return _parse(text)

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other):
        return Word(self.letters + other.letters)

    def __pow__(self, n):
        base = self if n >= 0 else self.inverse()
        return Word(base.letters * abs(n))

    def inverse(self):
        return Word(tuple((s, -e) for s, e in reversed(self.letters)))

    def reduced(self):
        out = []
        for letter in self.letters:
            if out and out[-1][0] == letter[0] and out[-1][1] == -letter[1]:
                out.pop()
            else:
                out.append(letter)
        return Word(tuple(out))

    @property
    def is_reduced(self):
        return self.reduced() == self

    def cyclically_reduced(self):
        w = list(self.reduced().letters)
        while len(w) >= 2 and w[0][0] == w[-1][0] and w[0][1] == -w[-1][1]:
            w = w[1:-1]
        return Word(tuple(w))

    def rotations(self):
        n = len(self.letters)
        return [Word(self.letters[k:] + self.letters[:k]) for k in range(max(n, 1))]

    def canonical(self):
        """Representative of the relator up to cyclic rotation and inversion."""
        w = self.cyclically_reduced()
        if not w.letters:
            return w
        cands = w.rotations() + w.inverse().rotations()
        return min(cands, key=lambda x: x.letters)

    def substitute(self, mapping):
        """Replace generators by words; ``mapping`` sends a symbol to a Word."""
        out = Word()
        for s, e in self.letters:
            piece = mapping.get(s)
            if piece is None:
                out = out * Word(((s, e),))
            else:
                out = out * (piece if e > 0 else piece.inverse())
        return out

    def symbols(self):
        return {s for s, _ in self.letters}

    def exponent_sums(self):
        sums = {}
        for s, e in self.letters:
            sums[s] = sums.get(s, 0) + e
        return sums

    def __str__(self):
        if not self.letters:
            return "1"
        parts = []
        k = 0
        letters = self.letters
        while k < len(letters):
            s, e = letters[k]
            run = 1
            while k + run < len(letters) and letters[k + run] == (s, e):
                run += 1
            exp = e * run
            parts.append(s if exp == 1 else f"{s}^{exp}")
            k += run
        return " ".join(parts)


EMPTY = Word()


def _parse(text):
    text = text.strip()
    pos = 0
    stack = [[]]
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip() == "":
                break
            raise ValueError(f"cannot parse word at {text[pos:]!r}")
        pos = m.end()
        if m.group("sym"):
            stack[-1].append(Word(((m.group("sym").replace("_", ""), 1),)))
        elif m.group("pow"):
            if not stack[-1]:
                raise ValueError("exponent without base")
            n = int(m.group("exp").replace(" ", ""))
            stack[-1][-1] = stack[-1][-1] ** n
        elif m.group("open"):
            stack.append([])
        elif m.group("close"):
            if len(stack) == 1:
                raise ValueError("unbalanced parenthesis")
            inner = stack.pop()
            w = Word()
            for x in inner:
                w = w * x
            stack[-1].append(w)
        elif m.group("one"):
            stack[-1].append(Word())
    if len(stack) != 1:
        raise ValueError("unbalanced parenthesis")
    w = Word()
    for x in stack[0]:
        w = w * x
    return w
