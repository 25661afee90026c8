"""Propositional formulas over atoms, bottom, and/or/implies.

Negation is not a node type: ``~A`` is read as ``A -> bot`` by the parser
and printed back as ``~A``.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Iterator, Union

__all__ = [
    "Atom", "Bottom", "And", "Or", "Implies", "Formula", "BOT", "Not",
    "ParseError", "Token", "tokenize", "Parser", "parse", "unparse",
    "atoms", "subformulas", "depth", "size", "random_formula",
    "all_formulas", "disjoin",
]


@dataclass(frozen=True)
class Atom:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Bottom:
    def __str__(self) -> str:
        return "bot"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return unparse(self)


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return unparse(self)


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return unparse(self)


Formula = Union[Atom, Bottom, And, Or, Implies]

BOT = Bottom()


def Not(f: Formula) -> Implies:
    return Implies(f, BOT)


def is_negation(f: Formula) -> bool:
    return isinstance(f, Implies) and isinstance(f.right, Bottom)


# --------------------------------------------------------------------------
# tokens and parsing

class ParseError(ValueError):
    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}")


@dataclass(frozen=True)
class Token:
    kind: str  # "atom", "bot", or the operator text itself
    value: str
    pos: int


# order matters: longest operators first
_TOKEN_RE = re.compile(
    r"\s*(?:(?P<ident>[a-z][a-z0-9_]*)|(?P<op>=>\*|=>|->|[~&|(),;\[\]]))"
)

RESERVED = {"bot"}


def tokenize(text: str) -> list[Token]:
    """Split ``text`` into tokens; sequent punctuation is included."""
    tokens = []
    pos = 0
    end = len(text.rstrip())
    while pos < end:
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            # report the first non-space offending character
            bad = pos
            while bad < len(text) and text[bad].isspace():
                bad += 1
            raise ParseError(f"unexpected character {text[bad]!r}", bad, text)
        if m.group("ident") is not None:
            word = m.group("ident")
            kind = "bot" if word == "bot" else "atom"
            tokens.append(Token(kind, word, m.start("ident")))
        else:
            op = m.group("op")
            tokens.append(Token(op, op, m.start("op")))
        pos = m.end()
    return tokens


class Parser:
    """Recursive-descent parser over a token list.

    Precedence, tightest first: ``~``, ``&``, ``|``, ``->``.  ``&`` and ``|``
    associate to the left, ``->`` to the right.
    """

    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self) -> Token | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def at(self, *kinds: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.kind in kinds

    def next(self) -> Token:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", len(self.text), self.text)
        self.i += 1
        return tok

    def expect(self, kind: str) -> Token:
        tok = self.peek()
        if tok is None:
            raise ParseError(f"expected {kind!r} but input ended", len(self.text), self.text)
        if tok.kind != kind:
            raise ParseError(f"expected {kind!r}, found {tok.value!r}", tok.pos, self.text)
        self.i += 1
        return tok

    def done(self) -> None:
        tok = self.peek()
        if tok is not None:
            raise ParseError(f"unexpected {tok.value!r}", tok.pos, self.text)

    def formula(self) -> Formula:
        left = self.disjunction()
        if self.at("->"):
            self.next()
            return Implies(left, self.formula())
        return left

    def disjunction(self) -> Formula:
        f = self.conjunction()
        while self.at("|"):
            self.next()
            f = Or(f, self.conjunction())
        return f

    def conjunction(self) -> Formula:
        f = self.unary()
        while self.at("&"):
            self.next()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        tok = self.next()
        if tok.kind == "~":
            return Implies(self.unary(), BOT)
        if tok.kind == "atom":
            return Atom(tok.value)
        if tok.kind == "bot":
            return BOT
        if tok.kind == "(":
            f = self.formula()
            self.expect(")")
            return f
        raise ParseError(f"expected a formula, found {tok.value!r}", tok.pos, self.text)


def parse(text: str) -> Formula:
    if not text.strip():
        raise ParseError("empty formula", 0, text)
    p = Parser(text)
    f = p.formula()
    p.done()
    return f


# --------------------------------------------------------------------------
# printing

_PREC_IMP, _PREC_OR, _PREC_AND, _PREC_NOT, _PREC_ATOM = 1, 2, 3, 4, 5


def _prec(f: Formula) -> int:
    if isinstance(f, (Atom, Bottom)):
        return _PREC_ATOM
    if is_negation(f):
        return _PREC_NOT
    if isinstance(f, And):
        return _PREC_AND
    if isinstance(f, Or):
        return _PREC_OR
    return _PREC_IMP


def _wrap(f: Formula, needed: int) -> str:
    s = unparse(f)
    return s if _prec(f) >= needed else f"({s})"


def unparse(f: Formula) -> str:
    """Render ``f`` with the fewest parentheses that parse back to ``f``."""
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Bottom):
        return "bot"
    if is_negation(f):
        return "~" + _wrap(f.left, _PREC_NOT)
    if isinstance(f, And):
        return f"{_wrap(f.left, _PREC_AND)} & {_wrap(f.right, _PREC_AND + 1)}"
    if isinstance(f, Or):
        return f"{_wrap(f.left, _PREC_OR)} | {_wrap(f.right, _PREC_OR + 1)}"
    if isinstance(f, Implies):
        return f"{_wrap(f.left, _PREC_IMP + 1)} -> {_wrap(f.right, _PREC_IMP)}"
    raise TypeError(f"not a formula: {f!r}")


# --------------------------------------------------------------------------
# traversal

def _children(f: Formula) -> tuple[Formula, ...]:
    if isinstance(f, (And, Or, Implies)):
        return (f.left, f.right)
    return ()


def atoms(f: Formula) -> set[str]:
    out: set[str] = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Atom):
            out.add(g.name)
        stack.extend(_children(g))
    return out


def subformulas(*fs: Formula) -> list[Formula]:
    """Distinct subtrees of ``fs``, children always before their parents."""
    seen: set[Formula] = set()
    order: list[Formula] = []

    def visit(g: Formula) -> None:
        if g in seen:
            return
        for c in _children(g):
            visit(c)
        seen.add(g)
        order.append(g)

    for f in fs:
        visit(f)
    return order


def depth(f: Formula) -> int:
    kids = _children(f)
    return 0 if not kids else 1 + max(depth(c) for c in kids)


def size(f: Formula) -> int:
    return 1 + sum(size(c) for c in _children(f))


def disjoin(fs: list[Formula]) -> Formula:
    """Right-nested disjunction ``f1 | (f2 | (... | fn))``."""
    if not fs:
        raise ValueError("cannot disjoin an empty list")
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = Or(f, out)
    return out


# --------------------------------------------------------------------------
# generators

def random_formula(rng: random.Random, names: list[str], max_depth: int,
                   p_leaf: float = 0.3, p_bot: float = 0.1) -> Formula:
    """Sample a formula of depth at most ``max_depth`` over ``names``."""
    if max_depth == 0 or rng.random() < p_leaf:
        if rng.random() < p_bot:
            return BOT
        return Atom(rng.choice(names))
    r = rng.random()
    if r < 0.2:
        return Not(random_formula(rng, names, max_depth - 1, p_leaf, p_bot))
    cls = (And, Or, Implies)[int((r - 0.2) / 0.8 * 3)]
    return cls(random_formula(rng, names, max_depth - 1, p_leaf, p_bot),
               random_formula(rng, names, max_depth - 1, p_leaf, p_bot))


def all_formulas(names: list[str], max_depth: int) -> Iterator[Formula]:
    """Every formula of depth <= ``max_depth`` over ``names`` and bot."""
    layers: list[list[Formula]] = [[Atom(n) for n in names] + [BOT]]
    yield from layers[0]
    for d in range(1, max_depth + 1):
        below = [f for layer in layers for f in layer]
        prev = layers[-1]
        new: list[Formula] = []
        # at least one child must come from the previous layer
        for cls in (And, Or, Implies):
            for l in below:
                for r in below:
                    if l in prev or r in prev:
                        new.append(cls(l, r))
        layers.append(new)
        yield from new
