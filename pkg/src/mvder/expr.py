"""Parser for algebra expressions such as ``L2 x L3`` or ``B4 x (L3 x L2)``.

Grammar::

    Expr   := Factor ('x' Factor)*
    Factor := 'L' INT | 'B' INT | '(' Expr ')'

Whitespace is ignored and ``×`` may be used instead of ``x``.  Offsets in
errors are byte offsets into the UTF-8 encoded input.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import make_chain, make_product
from .errors import ParseError


@dataclass(frozen=True)
class Chain:
    n: int


@dataclass(frozen=True)
class Boolean:
    n: int


@dataclass(frozen=True)
class Product:
    factors: tuple


class _Parser:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def offset(self, pos=None):
        return len(self.text[: self.pos if pos is None else pos].encode("utf-8"))

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def fail(self, message, expected, pos=None):
        raise ParseError(message, self.offset(pos), expected)

    def expr(self):
        factors = [self.factor()]
        while self.peek() in ("x", "×"):
            self.pos += 1
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def factor(self):
        c = self.peek()
        if c == "(":
            self.pos += 1
            inner = self.expr()
            if self.peek() != ")":
                self.fail("unclosed parenthesis", ("')'", "'x'"))
            self.pos += 1
            return inner
        if c in ("L", "B"):
            self.pos += 1
            start = self.pos
            n = self.integer()
            if n < 2:
                self.fail(f"{c}{n}: size must be at least 2", ("INT >= 2",), start)
            if c == "B":
                if n & (n - 1):
                    self.fail(f"B{n}: size must be a power of two", ("power of two",), start)
                return Boolean(n)
            return Chain(n)
        what = "end of input" if not c else repr(c)
        self.fail(f"unexpected {what}", ("'L'", "'B'", "'('"))

    def integer(self):
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.fail("missing size", ("INT",))
        return int(self.text[start:self.pos])


def parse_expr(text):
    p = _Parser(text)
    tree = p.expr()
    if p.peek():
        p.fail(f"unexpected {p.peek()!r}", ("'x'", "end of input"))
    return tree


def _leaves(tree):
    if isinstance(tree, Chain):
        return [tree.n]
    if isinstance(tree, Boolean):
        return [2] * (tree.n.bit_length() - 1)
    out = []
    for f in tree.factors:
        out.extend(_leaves(f))
    return out


def evaluate(tree, max_size=None):
    """Build the algebra.  Nested products are flattened, factor order kept."""
    chains = _leaves(tree)
    if len(chains) == 1:
        return make_chain(chains[0])
    return make_product([make_chain(n) for n in chains], max_size=max_size)


def build(text, max_size=None):
    return evaluate(parse_expr(text), max_size)
