"""Text formats: the algebra DSL and representation files.

Algebra files::

    # comments run to end of line
    algebra kxy;                      # optional name
    generator x : 0;
    generator y : 0;
    generator t : -1;
    d t = x*y - y*x;                  # unspecified differentials are 0

Expressions are sums of rational multiples (``3``, ``-1/2``) of products
(``*``) of generator names, with parentheses and ``^k`` powers.

Representation files::

    n = 2
    x = [[0, 1], [0, 0]]
    y = [[1/2, 0], [0, -3]]
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .ncalg import Generator, NCPoly, Resolution, format_ncpoly


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int, source: str = "<input>"):
        super().__init__(f"{source}:{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col


_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+) |
    (?P<nl>\n) |
    (?P<comment>\#[^\n]*) |
    (?P<num>\d+) |
    (?P<name>[A-Za-z_][A-Za-z0-9_']*) |
    (?P<op>[-+*/^():;=,\[\]])
""", re.VERBOSE)


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str, source: str = "<input>") -> List[Token]:
    out: List[Token] = []
    line, col, pos = 1, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col, source)
        kind = m.lastgroup
        s = m.group()
        if kind == "nl":
            line += 1
            col = 1
        elif kind not in ("ws", "comment"):
            out.append(Token(kind, s, line, col))
            col += len(s)
        else:
            col += len(s)
        pos = m.end()
    out.append(Token("eof", "", line, col))
    return out


class _Stream:
    def __init__(self, tokens: List[Token], source: str):
        self.toks = tokens
        self.i = 0
        self.source = source

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def next(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, message: str, tok: Optional[Token] = None):
        tok = tok or self.tok
        raise ParseError(message, tok.line, tok.col, self.source)

    def expect(self, text: str) -> Token:
        if self.tok.text != text:
            found = self.tok.text or "end of input"
            self.error(f"expected {text!r}, found {found!r}")
        return self.next()

    def expect_kind(self, kind: str, what: str) -> Token:
        if self.tok.kind != kind:
            found = self.tok.text or "end of input"
            self.error(f"expected {what}, found {found!r}")
        return self.next()

    def accept(self, text: str) -> bool:
        if self.tok.text == text:
            self.i += 1
            return True
        return False


def _integer(s: _Stream) -> int:
    neg = s.accept("-")
    if not neg:
        s.accept("+")
    t = s.expect_kind("num", "an integer")
    return -int(t.text) if neg else int(t.text)


class _ExprParser:
    def __init__(self, stream: _Stream, gens: Tuple[Generator, ...]):
        self.s = stream
        self.gens = gens
        self.index = {g.name: i for i, g in enumerate(gens)}

    def expr(self) -> NCPoly:
        s = self.s
        sign = 1
        if s.accept("-"):
            sign = -1
        else:
            s.accept("+")
        acc = self.term().scale(sign)
        while s.tok.text in ("+", "-"):
            op = s.next().text
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> NCPoly:
        acc = self.factor()
        while self.s.accept("*"):
            acc = acc * self.factor()
        return acc

    def factor(self) -> NCPoly:
        base = self.atom()
        if self.s.accept("^"):
            e = int(self.s.expect_kind("num", "an exponent").text)
            out = NCPoly.one(self.gens)
            for _ in range(e):
                out = out * base
            return out
        return base

    def atom(self) -> NCPoly:
        s = self.s
        t = s.tok
        if t.kind == "num":
            s.next()
            val = Fraction(int(t.text))
            if s.accept("/"):
                den = s.expect_kind("num", "a denominator")
                if int(den.text) == 0:
                    s.error("zero denominator", den)
                val /= int(den.text)
            return NCPoly(self.gens, {(): val})
        if t.kind == "name":
            if t.text not in self.index:
                s.error(f"undeclared generator {t.text!r}", t)
            s.next()
            return NCPoly(self.gens, {(self.index[t.text],): 1})
        if s.accept("("):
            e = self.expr()
            s.expect(")")
            return e
        s.error(f"unexpected {t.text or 'end of input'!r} in expression")


def parse_algebra(text: str, source: str = "<input>") -> Resolution:
    """Parse an algebra file into a Resolution (not validated)."""
    s = _Stream(tokenize(text, source), source)
    name = ""
    gens: List[Generator] = []
    seen: Dict[str, Token] = {}
    diffs: List[Tuple[Token, int]] = []  # (name token, token index of expression start)
    while s.tok.kind != "eof":
        t = s.tok
        if t.text == "algebra":
            s.next()
            name = s.expect_kind("name", "an algebra name").text
            s.expect(";")
        elif t.text == "generator":
            s.next()
            names = [s.expect_kind("name", "a generator name")]
            while s.accept(","):
                names.append(s.expect_kind("name", "a generator name"))
            s.expect(":")
            deg = _integer(s)
            s.expect(";")
            for nt in names:
                if nt.text in seen:
                    s.error(f"duplicate declaration of {nt.text!r}", nt)
                seen[nt.text] = nt
                gens.append(Generator(nt.text, deg))
        elif t.text == "d":
            s.next()
            nt = s.expect_kind("name", "a generator name")
            s.expect("=")
            diffs.append((nt, s.i))
            # skip to the terminating semicolon; parsed once all generators are known
            while s.tok.text != ";":
                if s.tok.kind == "eof":
                    s.error("missing ';' after differential")
                s.next()
            s.next()
        else:
            s.error(f"expected 'generator', 'd' or 'algebra', found {t.text!r}")
    gens_t = tuple(gens)
    diff: Dict[str, NCPoly] = {}
    for nt, start in diffs:
        if nt.text not in seen:
            s.error(f"differential of undeclared generator {nt.text!r}", nt)
        if nt.text in diff:
            s.error(f"duplicate differential for {nt.text!r}", nt)
        s.i = start
        p = _ExprParser(s, gens_t).expr()
        if s.tok.text != ";":
            s.error(f"unexpected {s.tok.text!r} in expression")
        diff[nt.text] = p
    return Resolution(gens_t, diff, name)


def print_algebra(res: Resolution) -> str:
    lines = []
    if res.name:
        lines.append(f"algebra {res.name};")
    for g in res.generators:
        lines.append(f"generator {g.name} : {g.degree};")
    for g in res.generators:
        p = res.diff.get(g.name)
        if p is not None and not p.is_zero():
            lines.append(f"d {g.name} = {format_ncpoly(p)};")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- rep files


def _rational(s: _Stream) -> Fraction:
    neg = s.accept("-")
    if not neg:
        s.accept("+")
    num = s.expect_kind("num", "a rational entry")
    val = Fraction(int(num.text))
    if s.accept("/"):
        den = s.expect_kind("num", "a denominator")
        if int(den.text) == 0:
            s.error("zero denominator", den)
        val /= int(den.text)
    return -val if neg else val


def _matrix(s: _Stream) -> List[List[Fraction]]:
    s.expect("[")
    rows = []
    while True:
        s.expect("[")
        row = [_rational(s)]
        while s.accept(","):
            row.append(_rational(s))
        s.expect("]")
        rows.append(row)
        if not s.accept(","):
            break
    s.expect("]")
    return rows


def parse_rep(text: str, source: str = "<input>") -> Tuple[int, Dict[str, List[List[Fraction]]]]:
    """Parse a representation file into ``(n, {generator: matrix})``."""
    s = _Stream(tokenize(text, source), source)
    t = s.expect_kind("name", "'n'")
    if t.text != "n":
        s.error("representation files start with 'n = N'", t)
    s.expect("=")
    n = int(s.expect_kind("num", "the matrix size").text)
    if n < 1:
        s.error("matrix size must be positive")
    values: Dict[str, List[List[Fraction]]] = {}
    while s.tok.kind != "eof":
        nt = s.expect_kind("name", "a generator name")
        if nt.text in values:
            s.error(f"duplicate matrix for {nt.text!r}", nt)
        s.expect("=")
        start = s.tok
        mat = _matrix(s)
        if len(mat) != n or any(len(r) != n for r in mat):
            s.error(f"matrix for {nt.text!r} is not {n}x{n}", start)
        values[nt.text] = mat
        s.accept(";")
    return n, values


def print_rep(n: int, values: Dict[str, List[List[Fraction]]]) -> str:
    def fmt(x: Fraction) -> str:
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    lines = [f"n = {n}"]
    for name, mat in values.items():
        rows = ", ".join("[" + ", ".join(fmt(x) for x in row) + "]" for row in mat)
        lines.append(f"{name} = [{rows}]")
    return "\n".join(lines) + "\n"
