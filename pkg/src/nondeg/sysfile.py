"""Text format for polynomial systems.

::

    # comments run to the end of the line
    p 65521
    vars x, y, z
    x^2 + 3*y - 1
    (x - y)^2*z

The ``p`` and ``vars`` lines come first, then one polynomial per line.
Products need an explicit ``*``; ``^`` takes a nonnegative integer literal.
LF and CRLF line endings are accepted.  :func:`format_system` prints
polynomials canonically (terms in decreasing order, coefficients in
``[0, p)``), so print-then-parse is the identity.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .poly import Polynomial, PolyRing, is_prime


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.message = message
        self.line = line
        self.col = col


@dataclass
class SystemFile:
    ring: PolyRing
    polys: list[Polynomial]
    comments: list[str] = field(default_factory=list)

    def meta(self) -> dict[str, str]:
        """``key: value`` pairs found in comment lines."""
        out = {}
        for c in self.comments:
            m = re.match(r"\s*([A-Za-z_][\w.-]*)\s*:\s*(.*?)\s*$", c)
            if m:
                out[m.group(1)] = m.group(2)
        return out


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokens(text: str, lineno: int, col0: int):
    pos = 0
    out = []
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        if m.group(1) is not None:
            out.append(("int", m.group(1), m.start(1) + col0))
        elif m.group(2) is not None:
            out.append(("id", m.group(2), m.start(2) + col0))
        else:
            ch = m.group(3)
            if ch.isspace():
                pos = m.end()
                continue
            if ch not in "+-*^()":
                raise ParseError(f"unexpected character {ch!r}", lineno, m.start(3) + col0 + 1)
            out.append((ch, ch, m.start(3) + col0))
        pos = m.end()
    out.append(("end", "", n + col0))
    return out


class _Parser:
    def __init__(self, ring: PolyRing, toks, lineno: int):
        self.ring = ring
        self.toks = toks
        self.i = 0
        self.lineno = lineno

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.lineno, tok[2] + 1)

    def parse(self) -> Polynomial:
        if self.peek()[0] == "end":
            self.fail("empty polynomial")
        f = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            if tok[0] in ("int", "id", "("):
                self.fail("implicit multiplication is not allowed; use '*'")
            self.fail(f"unexpected {tok[1]!r}")
        return f

    def expr(self) -> Polynomial:
        f = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            g = self.term()
            f = f + g if op == "+" else f - g
        return f

    def term(self) -> Polynomial:
        f = self.unary()
        while self.peek()[0] == "*":
            self.take()
            f = f * self.unary()
        return f

    def unary(self) -> Polynomial:
        tok = self.peek()
        if tok[0] == "-":
            self.take()
            return -self.unary()
        if tok[0] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            tok = self.peek()
            if tok[0] != "int":
                self.fail("exponent must be a nonnegative integer literal")
            self.take()
            return base ** int(tok[1])
        return base

    def atom(self) -> Polynomial:
        tok = self.take()
        kind = tok[0]
        if kind == "int":
            return self.ring.constant(int(tok[1]))
        if kind == "id":
            if tok[1] not in self.ring.variables:
                self.fail(f"unknown identifier {tok[1]!r}", tok)
            return self.ring.gen(tok[1])
        if kind == "(":
            f = self.expr()
            if self.peek()[0] != ")":
                self.fail("expected ')'")
            self.take()
            return f
        if kind == "end":
            self.fail("unexpected end of line", tok)
        self.fail(f"unexpected {tok[1]!r}", tok)


def parse_polynomial(ring: PolyRing, text: str, lineno: int = 1) -> Polynomial:
    return _Parser(ring, _tokens(text, lineno, 0), lineno).parse()


def parse_system(text: str, order="drl") -> SystemFile:
    if text.startswith("\ufeff"):
        text = text[1:]
    p = None
    names = None
    ring = None
    polys: list[Polynomial] = []
    comments: list[str] = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw[:-1] if raw.endswith("\r") else raw
        if "#" in line:
            cut = line.index("#")
            note = line[cut + 1:]
            comments.append(note[1:] if note.startswith(" ") else note)
            line = line[:cut]
        stripped = line.strip()
        if not stripped:
            continue
        col0 = len(line) - len(line.lstrip())
        if p is None:
            m = re.fullmatch(r"p\s+(\S+)", stripped)
            if not m:
                raise ParseError("expected 'p <prime>'", lineno, col0 + 1)
            col = col0 + m.start(1) + 1
            if not m.group(1).isdigit():
                raise ParseError(f"characteristic {m.group(1)!r} is not an integer", lineno, col)
            p = int(m.group(1))
            if not is_prime(p) or p == 2 or p >= 2**31:
                raise ParseError(f"characteristic {p} is not an odd prime below 2^31", lineno, col)
            continue
        if names is None:
            m = re.fullmatch(r"vars\b(.*)", stripped)
            if not m:
                raise ParseError("expected 'vars <name>, <name>, ...'", lineno, col0 + 1)
            body = m.group(1)
            names = [v.strip() for v in body.split(",")] if body.strip() else []
            offset = col0 + 4
            for v in names:
                if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", v):
                    raise ParseError(f"bad variable name {v!r}", lineno, offset + 1)
            if not names:
                raise ParseError("no variables declared", lineno, col0 + 1)
            if len(set(names)) != len(names):
                raise ParseError("duplicate variable name", lineno, col0 + 1)
            ring = PolyRing(names, p, order)
            continue
        polys.append(_Parser(ring, _tokens(line, lineno, 0), lineno).parse())
    if p is None:
        raise ParseError("missing 'p <prime>' line", 1, 1)
    if names is None:
        raise ParseError("missing 'vars' line", 1, 1)
    return SystemFile(ring, polys, comments)


def format_polynomial(f: Polynomial) -> str:
    return f.ring.format(f)


def format_system(ring: PolyRing, polys, comments=()) -> str:
    lines = [f"# {c}" if c else "#" for c in comments]
    lines.append(f"p {ring.p}")
    lines.append("vars " + ", ".join(ring.variables))
    lines.extend(format_polynomial(f) for f in polys)
    return "\n".join(lines) + "\n"


def read_system(path: str, order="drl") -> SystemFile:
    with open(path, "rb") as fh:
        data = fh.read()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError("file is not valid UTF-8", 1, 1) from exc
    return parse_system(text, order)


__all__ = [
    "ParseError",
    "SystemFile",
    "format_polynomial",
    "format_system",
    "parse_polynomial",
    "parse_system",
    "read_system",
]
