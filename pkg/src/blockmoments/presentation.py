"""Finitely presented groups, words in the free monoid, and power-relator detection.

Presentations are written ``<a, b | a^2, b^3, (ab)^2>``.  Generator names are
tokens of letters, digits and underscores starting with a letter; inside a
relator, juxtaposed names may be run together (``ab``) as long as the run
splits into declared generators.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

__all__ = [
    "Letter",
    "Word",
    "Presentation",
    "GeneratorSpec",
    "PresentationError",
    "ParseError",
    "parse_presentation",
    "parse_word",
    "serialize_presentation",
    "serialize_word",
    "free_reduce",
    "cyclic_reduce",
    "invert",
    "concat",
    "detect_power_order",
]

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class PresentationError(ValueError):
    """Invalid presentation data or a query about an undeclared generator."""


class ParseError(PresentationError):
    def __init__(self, message: str, line: int, column: int):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


@dataclass(frozen=True)
class Letter:
    generator: str
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"letter sign must be +1 or -1, got {self.sign!r}")

    def inverse(self) -> "Letter":
        return Letter(self.generator, -self.sign)

    def __str__(self):
        return self.generator if self.sign == 1 else f"{self.generator}^-1"


@dataclass(frozen=True)
class Word:
    """A finite sequence of letters; the empty sequence is the identity."""

    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))

    @classmethod
    def power(cls, generator: str, exponent: int) -> "Word":
        sign = 1 if exponent >= 0 else -1
        return cls((Letter(generator, sign),) * abs(exponent))

    def __len__(self):
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __bool__(self):
        return bool(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return concat(self, other)

    def is_freely_reduced(self) -> bool:
        return all(a != b.inverse() for a, b in zip(self.letters, self.letters[1:]))

    def __str__(self):
        return serialize_word(self)


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Word, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relators", tuple(self.relators))
        if not self.generators:
            raise PresentationError("a presentation needs at least one generator")
        seen = set()
        for name in self.generators:
            if not _NAME_RE.match(name):
                raise PresentationError(f"invalid generator name {name!r}")
            if name in seen:
                raise PresentationError(f"duplicate generator {name!r}")
            seen.add(name)
        for rel in self.relators:
            if not rel:
                raise PresentationError("relators must be nonempty words")
            for letter in rel:
                if letter.generator not in seen:
                    raise PresentationError(
                        f"relator {serialize_word(rel)} uses undeclared generator "
                        f"{letter.generator!r}"
                    )

    def __str__(self):
        return serialize_presentation(self)


@dataclass(frozen=True)
class GeneratorSpec:
    """A generator together with the exponent of its power relator.

    ``order is None`` means no power relator was found (the free case).
    """

    generator: Optional[str]
    order: Optional[int]

    def __post_init__(self):
        if self.order is not None and self.order < 1:
            raise ValueError(f"order must be a positive integer, got {self.order}")

    @classmethod
    def finite(cls, order: int, generator: Optional[str] = None) -> "GeneratorSpec":
        return cls(generator, order)

    @classmethod
    def infinite(cls, generator: Optional[str] = None) -> "GeneratorSpec":
        return cls(generator, None)

    @property
    def is_infinite(self) -> bool:
        return self.order is None

    @property
    def order_label(self) -> str:
        return "inf" if self.order is None else str(self.order)


# --- word operations -------------------------------------------------------


def concat(w1: Word, w2: Word) -> Word:
    return Word(w1.letters + w2.letters)


def invert(w: Word) -> Word:
    return Word(tuple(letter.inverse() for letter in reversed(w.letters)))


def free_reduce(w: Word) -> Word:
    stack: list[Letter] = []
    for letter in w:
        if stack and stack[-1] == letter.inverse():
            stack.pop()
        else:
            stack.append(letter)
    return Word(tuple(stack))


def cyclic_reduce(w: Word) -> Word:
    letters = free_reduce(w).letters
    lo, hi = 0, len(letters)
    while hi - lo >= 2 and letters[lo] == letters[hi - 1].inverse():
        lo += 1
        hi -= 1
    return Word(letters[lo:hi])


def detect_power_order(p: Presentation, g: str) -> GeneratorSpec:
    """Smallest ``k`` such that some relator is cyclically ``g^k`` or ``g^-k``.

    This reads the order off the relators; it does not check whether other
    relators force a smaller order in the group.
    """
    if g not in p.generators:
        raise PresentationError(f"unknown generator {g!r}")
    best = None
    for rel in p.relators:
        core = cyclic_reduce(rel).letters
        if core and core[0].generator == g and all(x == core[0] for x in core):
            if best is None or len(core) < best:
                best = len(core)
    return GeneratorSpec(g, best)


# --- serialization ---------------------------------------------------------


def _runs(w: Word) -> list[tuple[Letter, int]]:
    runs: list[tuple[Letter, int]] = []
    for letter in w:
        if runs and runs[-1][0] == letter:
            runs[-1] = (letter, runs[-1][1] + 1)
        else:
            runs.append((letter, 1))
    return runs


def serialize_word(w: Word, generators: Optional[Sequence[str]] = None) -> str:
    """Compact form: ``a^2b^-1ab``.

    When ``generators`` is given and the glued form would re-lex differently
    (e.g. generators ``a``, ``b`` and ``ab``), runs are separated by spaces.
    """
    if not w:
        return "()"
    pieces = []
    for letter, count in _runs(w):
        k = count * letter.sign
        pieces.append(letter.generator if k == 1 else f"{letter.generator}^{k}")
    compact = "".join(pieces)
    if generators is not None and parse_word(compact, generators) != w:
        return " ".join(pieces)
    return compact


def serialize_presentation(p: Presentation) -> str:
    gens = ", ".join(p.generators)
    rels = ", ".join(serialize_word(r, p.generators) for r in p.relators)
    return f"<{gens} | {rels}>"


# --- parsing ---------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r\n]+)|(?P<comment>#[^\n]*)|(?P<name>[A-Za-z][A-Za-z0-9_]*)"
    r"|(?P<int>[0-9]+)|(?P<punct>[<>|,()^\-])"
)


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    line: int
    column: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "punct":
            kind = m.group()
        if kind not in ("ws", "comment"):
            tokens.append(_Token(kind, m.group(), line, pos - line_start + 1))
        for i, ch in enumerate(m.group()):
            if ch == "\n":
                line, line_start = line + 1, pos + i + 1
        pos = m.end()
    tokens.append(_Token("eof", "", line, pos - line_start + 1))
    return tokens


def _split_name(run: str, generators: Iterable[str]) -> Optional[list[str]]:
    """Split an identifier run into declared generator names.

    An exact match wins; otherwise the longest-prefix-first split is used.
    """
    gens = set(generators)
    if run in gens:
        return [run]
    by_length = sorted(gens, key=len, reverse=True)
    memo: dict[int, Optional[list[str]]] = {}

    def split_from(i: int) -> Optional[list[str]]:
        if i == len(run):
            return []
        if i not in memo:
            memo[i] = None
            for g in by_length:
                if run.startswith(g, i):
                    rest = split_from(i + len(g))
                    if rest is not None:
                        memo[i] = [g] + rest
                        break
        return memo[i]

    return split_from(0)


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0
        self.generators: tuple[str, ...] = ()

    @property
    def tok(self) -> _Token:
        return self.tokens[self.i]

    def fail(self, message: str, tok: Optional[_Token] = None):
        tok = tok or self.tok
        raise ParseError(message, tok.line, tok.column)

    def expect(self, kind: str) -> _Token:
        tok = self.tok
        if tok.kind != kind:
            found = "end of input" if tok.kind == "eof" else repr(tok.text)
            self.fail(f"expected {kind!r}, found {found}")
        self.i += 1
        return tok

    def accept(self, kind: str) -> Optional[_Token]:
        if self.tok.kind == kind:
            self.i += 1
            return self.tokens[self.i - 1]
        return None

    def presentation(self) -> Presentation:
        self.expect("<")
        gens = []
        if self.tok.kind != "name":
            self.fail("empty generator list")
        while True:
            tok = self.expect("name")
            if tok.text in gens:
                self.fail(f"duplicate generator {tok.text!r}", tok)
            gens.append(tok.text)
            if not self.accept(","):
                break
        self.generators = tuple(gens)
        relators = []
        self.expect("|")
        if self.tok.kind != ">":
            while True:
                start = self.tok
                rel = self.word()
                if not rel:
                    self.fail("empty relator", start)
                relators.append(rel)
                if self.tok.kind == ")":
                    self.fail("unbalanced parentheses: unexpected ')'")
                if not self.accept(","):
                    break
        self.expect(">")
        self.expect("eof")
        return Presentation(self.generators, tuple(relators))

    def word(self) -> Word:
        letters: list[Letter] = []
        while self.tok.kind in ("name", "("):
            letters.extend(self.atom())
        if self.tok.kind not in (",", ">", ")", "eof"):
            self.fail(f"unexpected {self.tok.text!r}")
        return Word(tuple(letters))

    def atom(self) -> tuple[Letter, ...]:
        tok = self.tok
        if self.accept("("):
            inner = self.word()
            if self.tok.kind != ")":
                self.fail("unbalanced parentheses: '(' is never closed", tok)
            self.i += 1
            return self.exponent(inner)
        self.expect("name")
        names = _split_name(tok.text, self.generators)
        if names is None:
            self.fail(f"unknown generator {tok.text!r}", tok)
        # an exponent binds to the last generator of a glued run, as in ab^2 = a b b
        head = Word(tuple(Letter(n) for n in names[:-1]))
        return head.letters + self.exponent(Word((Letter(names[-1]),)))

    def exponent(self, base: Word) -> tuple[Letter, ...]:
        if not self.accept("^"):
            return base.letters
        negative = self.accept("-") is not None
        tok = self.tok
        if tok.kind != "int":
            self.fail("expected an integer exponent")
        self.i += 1
        k = int(tok.text)
        if k == 0:
            self.fail("exponent 0 is not allowed", tok)
        if negative:
            base = invert(base)
        return base.letters * k


def parse_presentation(text: str) -> Presentation:
    """Parse ``<gens | relators>``; ``#`` starts a line comment."""
    return _Parser(text).presentation()


def parse_word(text: str, generators: Sequence[str]) -> Word:
    """Parse a single word expression over ``generators``."""
    parser = _Parser(text)
    parser.generators = tuple(generators)
    w = parser.word()
    parser.expect("eof")
    return w
