"""Concrete syntax for conditional expressions.

Grammar, loosest binding first::

    top      := compound [ "|" compound ]
    compound := condexp { "&&" condexp }
    condexp  := boolexp [ "|" boolexp ] | "(" top ")"
    boolexp  := conj { "or" conj }
    conj     := lit { "and" lit }
    lit      := "not" lit | ATOM | "true" | "false" | "(" boolexp ")"

``|`` does not associate: ``A|B|C`` is rejected, nesting needs parentheses.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping

from .compound import Cond, Conj, Iter, build_table, canonical_key, iterated_of
from .errors import AmbiguousBar, DSLSyntaxError
from .eventspace import FALSE, TRUE, And, Atom, EventSpace, Formula, Not, Or, format_formula
from .quantity import ValueTable, parse_rational

_SPACE = re.compile(r"\s*")
_TOKEN = re.compile(r"\s*(?:(&&)|(\|)|(\()|(\))|([A-Za-z][A-Za-z0-9_]*))")
KEYWORDS = {"and", "or", "not", "true", "false"}


@dataclass(frozen=True)
class Token:
    kind: str  # "&&", "|", "(", ")", "id", "kw", "eof"
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    while True:
        m = _SPACE.match(text, pos)
        pos = m.end()
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise DSLSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        start = m.start(m.lastindex)
        word = m.group(m.lastindex)
        if m.lastindex == 5:
            kind = "kw" if word in KEYWORDS else "id"
        else:
            kind = word
        out.append(Token(kind, word, start))
        pos = m.end()
    out.append(Token("eof", "", len(text)))
    return out


@dataclass(frozen=True)
class SourceExpr:
    text: str
    ast: object

    def __str__(self):
        return format_expr(self.ast)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.depth = 0
        self.bars = []  # paren depth of every bar consumed inside a condexp

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg, tok=None, cls=DSLSyntaxError):
        tok = tok or self.tok
        return cls(msg, self.text, tok.pos)

    def describe(self, tok: Token) -> str:
        return "end of input" if tok.kind == "eof" else repr(tok.text)

    def expect(self, kind: str):
        if self.tok.kind != kind:
            raise self.error(f"expected {kind!r}, found {self.describe(self.tok)}")
        t = self.tok
        self.i += 1
        return t

    def end_of(self, start_tok: Token) -> tuple:
        prev = self.toks[self.i - 1]
        return (start_tok.pos, prev.pos + len(prev.text))

    # boolean layer
    def boolexp(self) -> Formula:
        parts = [self.conj()]
        while self.tok.kind == "kw" and self.tok.text == "or":
            self.i += 1
            parts.append(self.conj())
        return parts[0] if len(parts) == 1 else Or(tuple(parts))

    def conj(self) -> Formula:
        parts = [self.lit()]
        while self.tok.kind == "kw" and self.tok.text == "and":
            self.i += 1
            parts.append(self.lit())
        return parts[0] if len(parts) == 1 else And(tuple(parts))

    def lit(self) -> Formula:
        t = self.tok
        if t.kind == "kw" and t.text == "not":
            self.i += 1
            return Not(self.lit())
        if t.kind == "kw" and t.text in ("true", "false"):
            self.i += 1
            return TRUE if t.text == "true" else FALSE
        if t.kind == "id":
            self.i += 1
            return Atom(t.text)
        if t.kind == "(":
            self.i += 1
            f = self.boolexp()
            self.expect(")")
            return f
        raise self.error(f"expected an event, found {self.describe(t)}")

    # conditional layer
    def _bare_bar_since(self, mark: int) -> bool:
        return any(d == self.depth for d in self.bars[mark:])

    def top(self):
        start = self.tok
        mark = len(self.bars)
        left = self.compound()
        if self.tok.kind != "|":
            return left
        if self._bare_bar_since(mark):
            raise self.error("chained '|' needs parentheses", cls=AmbiguousBar)
        bar = self.tok
        self.i += 1
        mark = len(self.bars)
        right = self.compound()
        if self.tok.kind == "|" or self._bare_bar_since(mark):
            raise self.error("chained '|' needs parentheses", bar, cls=AmbiguousBar)
        node = iterated_of(left, right)
        return _with_span(node, self.end_of(start))

    def compound(self):
        start = self.tok
        items = [self.condexp()]
        while self.tok.kind == "&&":
            self.i += 1
            items.append(self.condexp())
        if len(items) == 1:
            return items[0]
        return Conj(tuple(items), span=self.end_of(start))

    def condexp(self):
        start = self.tok
        if start.kind == "(":
            save, nbars = self.i, len(self.bars)
            try:
                return self._barred()
            except AmbiguousBar:
                raise
            except DSLSyntaxError as e1:
                err1 = e1
                self.i = save
                del self.bars[nbars:]
            try:
                self.i += 1
                self.depth += 1
                node = self.top()
                self.expect(")")
                self.depth -= 1
                return node
            except DSLSyntaxError as e2:
                if isinstance(e2, AmbiguousBar) or e2.pos >= err1.pos:
                    raise
                raise err1
        return self._barred()

    def _barred(self):
        start = self.tok
        cons = self.boolexp()
        if self.tok.kind != "|":
            return Cond(cons, TRUE, span=self.end_of(start))
        save = self.i
        self.i += 1
        try:
            ante = self.boolexp()
        except DSLSyntaxError:
            # the antecedent is not a plain event; leave the bar to ``top``
            self.i = save
            return Cond(cons, TRUE, span=self.end_of(start))
        if self.tok.kind == "|":
            raise self.error("chained '|' needs parentheses", cls=AmbiguousBar)
        self.bars.append(self.depth)
        return Cond(cons, ante, span=self.end_of(start))


def _with_span(node, span):
    if isinstance(node, Cond):
        return Cond(node.consequent, node.antecedent, span=span)
    return Iter(node.consequent, node.antecedent, span=span)


def parse(text: str) -> SourceExpr:
    p = _Parser(text)
    node = p.top()
    if p.tok.kind != "eof":
        raise p.error(f"unexpected {p.describe(p.tok)}")
    return SourceExpr(text, node)


def parse_formula(text: str) -> Formula:
    p = _Parser(text)
    f = p.boolexp()
    if p.tok.kind != "eof":
        raise p.error(f"unexpected {p.describe(p.tok)}")
    return f


def format_expr(node) -> str:
    """Print so that parsing the result rebuilds the same tree."""
    if isinstance(node, Cond):
        c = format_formula(node.consequent)
        if node.antecedent == TRUE:
            return c
        return f"{c}|{format_formula(node.antecedent)}"
    if isinstance(node, Conj):
        return " && ".join(f"({format_expr(i)})" if isinstance(i, (Conj, Iter)) else format_expr(i) for i in node.items)
    if isinstance(node, Iter):
        return f"{_side(node.consequent)}|{_side(node.antecedent)}"
    raise TypeError(f"not an expression: {node!r}")


def _side(node) -> str:
    if isinstance(node, Cond) and node.antecedent == TRUE:
        return format_expr(node)
    return f"({format_expr(node)})"


def key_of(text: str) -> str:
    """Canonical context key of an expression given as text."""
    return canonical_key(parse(text).ast)


def context_from(mapping: Mapping) -> dict:
    """Context with canonical keys from a mapping of expression text to value."""
    out = {}
    for k, v in mapping.items():
        key = key_of(k) if isinstance(k, str) else canonical_key(k)
        v = parse_rational(v)
        if key in out and out[key] != v:
            raise ValueError(f"conflicting values for {key}")
        out[key] = v
    return out


def elaborate(e, space: EventSpace, ctx: Mapping) -> ValueTable:
    """Value table of a parsed expression (or expression text)."""
    if isinstance(e, str):
        e = parse(e)
    node = e.ast if isinstance(e, SourceExpr) else e
    return build_table(node, space, ctx)
