"""Free group words, finite presentations and the presentation text format.

A letter is a nonzero integer: ``+i`` is the i-th generator (1-based) and
``-i`` its inverse.  A :class:`Word` is a freely reduced tuple of letters.

Text grammar::

    file     := "gens:" namelist ";" "rels:" wordlist
    namelist := name ("," name)*
    wordlist := word ("," word)* | <empty>
    word     := factor+
    factor   := name | "1" | "(" word ")" | "[" word "," word "]" | factor "^" integer

``[u, v]`` is shorthand for ``u v u^-1 v^-1`` and ``1`` denotes the empty word.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ValidationError


class Word(tuple):
    """Freely reduced word; construction always reduces."""

    __slots__ = ()

    def __new__(cls, letters: Iterable[int] = ()):
        stack: list[int] = []
        for x in letters:
            if x == 0:
                raise ValueError("letter 0 is not a generator")
            if stack and stack[-1] == -x:
                stack.pop()
            else:
                stack.append(x)
        return super().__new__(cls, stack)

    @classmethod
    def _trusted(cls, letters: Iterable[int]) -> "Word":
        # caller guarantees the letters are already reduced
        return super().__new__(cls, letters)

    def __mul__(self, other: "Word") -> "Word":
        a, b = tuple(self), tuple(other)
        k = 0
        while k < len(a) and k < len(b) and a[-1 - k] == -b[k]:
            k += 1
        return Word._trusted(a[: len(a) - k] + b[k:])

    def inverse(self) -> "Word":
        return Word._trusted(-x for x in reversed(self))

    def __pow__(self, n: int) -> "Word":
        base = self if n >= 0 else self.inverse()
        out = Word()
        for _ in range(abs(n)):
            out = out * base
        return out

    def __repr__(self) -> str:
        return f"Word({list(self)!r})"

    def generators_used(self) -> set[int]:
        return {abs(x) for x in self}


def free_reduce(letters: Iterable[int | tuple[int, int]]) -> Word:
    """Freely reduce a raw letter sequence.

    Letters may be signed integers or ``(generator_index, exponent)`` pairs
    with exponent ``+1``/``-1``.
    """
    flat = []
    for x in letters:
        if isinstance(x, tuple):
            i, e = x
            if e not in (1, -1) or i < 1:
                raise ValueError(f"bad letter {x!r}")
            flat.append(i * e)
        else:
            flat.append(x)
    return Word(flat)


def commutator(g: Word, h: Word) -> Word:
    """``[g, h] = g h g^-1 h^-1``."""
    return g * h * g.inverse() * h.inverse()


def conjugate_relator_product(terms: Sequence[tuple[Word, Word, int]]) -> Word:
    """Ordered product of ``w^-1 R^sigma w`` over ``(w, R, sigma)`` triples."""
    out = Word()
    for w, rel, sigma in terms:
        if sigma not in (1, -1):
            raise ValueError("sigma must be +1 or -1")
        out = out * w.inverse() * (rel if sigma == 1 else rel.inverse()) * w
    return out


def exponent_sum_vector(w: Word, n: int) -> list[int]:
    vec = [0] * n
    for x in w:
        if abs(x) > n:
            raise ValueError(f"letter {x} outside alphabet of size {n}")
        vec[abs(x) - 1] += 1 if x > 0 else -1
    return vec


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...] = ()

    def __post_init__(self):
        gens = tuple(self.generators)
        rels = tuple(Word(r) for r in self.relators)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relators", rels)
        for g in gens:
            if not _NAME.fullmatch(g):
                raise ValidationError(f"invalid generator name {g!r}")
        if len(set(gens)) != len(gens):
            raise ValidationError("generator names must be distinct")
        n = len(gens)
        for j, r in enumerate(rels):
            if any(abs(x) > n for x in r):
                raise ValidationError(f"relator {j + 1} uses a letter outside the alphabet")

    @property
    def n(self) -> int:
        return len(self.generators)

    @property
    def m(self) -> int:
        return len(self.relators)

    def index(self, name: str) -> int:
        """1-based index of a generator name."""
        return self.generators.index(name) + 1

    def with_relators(self, extra: Iterable[Word]) -> "Presentation":
        return Presentation(self.generators, self.relators + tuple(extra))

    def word(self, text: str) -> Word:
        return parse_word(text, self.generators)

    def format_word(self, w: Word) -> str:
        return format_word(w, self.generators)

    def __str__(self) -> str:
        return format_presentation(self)


# ---------------------------------------------------------------- parsing

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>\d+)|(?P<punct>[:;,()\[\]^-]))")


class PresentationSyntaxError(ValidationError):
    def __init__(self, message: str, text: str, pos: int):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"line {line}, column {col}: {message}")
        self.pos = pos
        self.line = line
        self.column = col


class UnknownGeneratorError(ValidationError):
    pass


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if not m:
            rest = text[pos:]
            if rest.strip() == "":
                break
            bad = pos + (len(rest) - len(rest.lstrip()))
            raise PresentationSyntaxError(f"unexpected character {text[bad]!r}", text, bad)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, generators: Sequence[str] | None = None):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.lookup = {g: k + 1 for k, g in enumerate(generators or ())}

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def advance(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message: str, tok=None):
        tok = tok or self.peek()
        raise PresentationSyntaxError(message, self.text, tok[2])

    def expect(self, value: str) -> None:
        tok = self.advance()
        if tok[1] != value or tok[0] == "eof":
            self.fail(f"expected {value!r}, found {tok[1] or 'end of input'!r}", tok)

    def at(self, value: str) -> bool:
        kind, v, _ = self.peek()
        return kind != "eof" and v == value

    def integer(self) -> int:
        sign = 1
        if self.at("-"):
            self.advance()
            sign = -1
        kind, v, _ = self.peek()
        if kind != "int":
            self.fail("expected an integer exponent")
        self.advance()
        return sign * int(v)

    def word(self) -> Word:
        factors = []
        while True:
            kind, v, _ = self.peek()
            if kind == "name" or (kind == "int" and v == "1") or v in ("(", "["):
                factors.append(self.factor())
            else:
                break
        if not factors:
            self.fail("expected a word")
        out = Word()
        for f in factors:
            out = out * f
        return out

    def factor(self) -> Word:
        tok = self.advance()
        kind, v, _ = tok
        if kind == "name":
            if v not in self.lookup:
                raise UnknownGeneratorError(f"unknown generator {v!r}")
            base = Word._trusted((self.lookup[v],))
        elif kind == "int" and v == "1":
            base = Word()
        elif v == "(":
            base = self.word()
            self.expect(")")
        elif v == "[":
            left = self.word()
            self.expect(",")
            right = self.word()
            self.expect("]")
            base = commutator(left, right)
        else:
            self.fail(f"unexpected {v!r}", tok)
        while self.at("^"):
            self.advance()
            base = base ** self.integer()
        return base

    def wordlist(self, stop: Iterable[str] = ()) -> list[Word]:
        stop = set(stop)
        out: list[Word] = []
        if self.peek()[0] == "eof" or self.peek()[1] in stop:
            return out
        out.append(self.word())
        while self.at(","):
            self.advance()
            out.append(self.word())
        return out

    def namelist(self) -> list[str]:
        names = []
        while True:
            kind, v, _ = self.peek()
            if kind != "name":
                self.fail("expected a generator name")
            self.advance()
            names.append(v)
            if not self.at(","):
                return names
            self.advance()

    def keyword(self, word: str) -> None:
        kind, v, _ = self.peek()
        if kind != "name" or v != word:
            self.fail(f"expected {word!r}")
        self.advance()
        self.expect(":")

    def end(self) -> None:
        if self.peek()[0] != "eof":
            self.fail(f"unexpected trailing input {self.peek()[1]!r}")


def parse_presentation(text: str) -> Presentation:
    p = _Parser(text)
    p.keyword("gens")
    if p.at(";"):
        raise ValidationError("empty generator list")
    names = p.namelist()
    if len(set(names)) != len(names):
        raise ValidationError("duplicate generator name")
    p.expect(";")
    p.lookup = {g: k + 1 for k, g in enumerate(names)}
    p.keyword("rels")
    rels = p.wordlist()
    p.end()
    return Presentation(tuple(names), tuple(rels))


def parse_word(text: str, generators: Sequence[str]) -> Word:
    p = _Parser(text, generators)
    w = p.word()
    p.end()
    return w


def parse_word_list(text: str, generators: Sequence[str]) -> list[Word]:
    p = _Parser(text, generators)
    out = p.wordlist()
    p.end()
    return out


def parse_pairs(text: str, generators: Sequence[str]) -> list[tuple[Word, Word]]:
    """Parse ``(A, B)(A, B)...``."""
    p = _Parser(text, generators)
    pairs = []
    while p.at("("):
        p.advance()
        a = p.word()
        p.expect(",")
        b = p.word()
        p.expect(")")
        pairs.append((a, b))
    p.end()
    return pairs


def format_word(w: Word, generators: Sequence[str]) -> str:
    if not w:
        return "1"
    parts = []
    i = 0
    while i < len(w):
        j = i
        while j < len(w) and w[j] == w[i]:
            j += 1
        name = generators[abs(w[i]) - 1]
        e = (j - i) * (1 if w[i] > 0 else -1)
        parts.append(name if e == 1 else f"{name}^{e}")
        i = j
    return " ".join(parts)


def format_presentation(p: Presentation) -> str:
    rels = ", ".join(format_word(r, p.generators) for r in p.relators)
    return f"gens: {', '.join(p.generators)}; rels: {rels}"
