"""Textual pipeline notation for traversals.

Grammar (whitespace between tokens is ignored)::

    pipeline  := [ step ( "|" step )* ]
    step      := "outE" | "inE" | "outV" | "inV"
               | "props" "(" key ")"
               | "labelFilter" "(" sign "," label ")"
               | "propFilter" "(" sign "," key "," comparator "," value ")"
               | "elementFilter" "(" sign "," element ")"
    sign      := "+" | "-"
    comparator:= "=" | "!=" | "<" | "<=" | ">" | ">="
    element   := vertex id, written "3" or "v3"; edge id written "e10"

``outV`` is the tail of each edge and ``inV`` the head. Values follow the
graph text format, except that bare words are read as strings.

Example::

    outE | labelFilter(+,friend) | inV | props(name)
"""

from __future__ import annotations

import re

from .errors import InvalidProperty, ParseError
from .graph import Graph
from .textformat import format_value, parse_value
from .traversal import EIn, ElementFilter, EOut, LabelFilter, PropFilter, Props, Traversal, VIn, VOut, compose

_LEX = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<string>"(?:[^"\\]|\\.)*")
  | (?P<op><=|>=|!=|==|[|(),=<>≤≥≠])
  | (?P<word>[^\s|(),="<>≤≥≠]+)
  | (?P<bad>.)
    """,
    re.VERBOSE,
)

_SIMPLE = {"outE": EOut, "inE": EIn, "outV": VOut, "inV": VIn}
_ARITY = {"props": 1, "labelFilter": 2, "propFilter": 4, "elementFilter": 2}
_CMP_TOKENS = {"=", "==", "!=", "<", "<=", ">", ">=", "≤", "≥", "≠"}


def _lex(text: str):
    tokens = []
    for m in _LEX.finditer(text):
        kind = m.lastgroup
        if kind == "ws":
            continue
        if kind == "bad":
            raise ParseError(f"unexpected character {m.group()!r}", column=m.start() + 1)
        tokens.append((kind, m.group(), m.start() + 1))
    return tokens


class _Parser:
    def __init__(self, text: str, graph: Graph | None):
        self.tokens = _lex(text)
        self.pos = 0
        self.graph = graph
        self.end = len(text) + 1

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else ("eof", "", self.end)

    def take(self, value=None):
        tok = self.peek()
        if tok[0] == "eof" or (value is not None and tok[1] != value):
            want = repr(value) if value else "a token"
            raise ParseError(f"expected {want}, found {tok[1] or 'end of input'!r}", column=tok[2])
        self.pos += 1
        return tok

    def pipeline(self) -> Traversal:
        steps = []
        if self.peek()[0] == "eof":
            return Traversal(())
        steps.append(self.step())
        while self.peek()[1] == "|":
            self.take("|")
            steps.append(self.step())
        tok = self.peek()
        if tok[0] != "eof":
            raise ParseError(f"unexpected {tok[1]!r}", column=tok[2])
        return compose(*steps)

    def args(self, name, col):
        self.take("(")
        args = []
        while True:
            arg = []
            while self.peek()[1] not in (",", ")") and self.peek()[0] != "eof":
                arg.append(self.take())
            if not arg:
                raise ParseError(f"empty argument to {name}", column=self.peek()[2])
            args.append(arg)
            if self.peek()[1] == ",":
                self.take(",")
                continue
            self.take(")")
            break
        if len(args) != _ARITY[name]:
            raise ParseError(f"{name} takes {_ARITY[name]} arguments, got {len(args)}", column=col)
        return args

    def step(self):
        kind, name, col = self.take()
        if kind != "word":
            raise ParseError(f"expected a step name, found {name!r}", column=col)
        if name in _SIMPLE:
            return _SIMPLE[name]()
        if name not in _ARITY:
            raise ParseError(f"unknown step {name!r}", column=col)
        args = self.args(name, col)
        try:
            if name == "props":
                return Props(self.word(args[0]))
            allow = self.sign(args[0])
            if name == "labelFilter":
                return LabelFilter(self.word(args[1]), allow)
            if name == "propFilter":
                op = self.single(args[2])
                if op[1] not in _CMP_TOKENS:
                    raise ParseError(f"unknown comparator {op[1]!r}", column=op[2])
                return PropFilter(self.word(args[1]), op[1], self.value(args[3]), allow)
            return ElementFilter(self.element(args[1]), allow)
        except (ValueError, InvalidProperty) as exc:
            raise ParseError(str(exc), column=col) from exc

    def single(self, arg):
        if len(arg) != 1:
            raise ParseError("expected a single token", column=arg[1][2])
        return arg[0]

    def word(self, arg) -> str:
        kind, text, col = self.single(arg)
        if kind == "string":
            return parse_value(text)
        if kind != "word":
            raise ParseError(f"expected a name, found {text!r}", column=col)
        return text

    def value(self, arg):
        kind, text, col = self.single(arg)
        try:
            return parse_value(text, bare_strings=True)
        except ValueError as exc:
            raise ParseError(str(exc), column=col) from None

    def sign(self, arg) -> bool:
        kind, text, col = self.single(arg)
        if text in ("+", "allow"):
            return True
        if text in ("-", "−", "deny"):
            return False
        raise ParseError(f"expected + or -, found {text!r}", column=col)

    def element(self, arg):
        kind, text, col = self.single(arg)
        m = re.fullmatch(r"([ve]?)(\d+)", text)
        if not m:
            raise ParseError(f"bad element reference {text!r}", column=col)
        if self.graph is None:
            raise ParseError("elementFilter needs a graph to resolve ids", column=col)
        table = self.graph.edges if m.group(1) == "e" else self.graph.vertices
        ident = int(m.group(2))
        if ident not in table:
            raise ParseError(f"no element {text!r} in graph", column=col)
        return table[ident]


def parse_traversal(text: str, graph: Graph | None = None) -> Traversal:
    """Parse pipeline notation; raises ParseError or KindMismatch."""
    return _Parser(text, graph).pipeline()


def format_traversal(t: Traversal) -> str:
    parts = []
    for s in t.steps:
        if isinstance(s, (EOut, EIn, VOut, VIn)):
            parts.append(s.name)
        elif isinstance(s, Props):
            parts.append(f"props({s.key})")
        elif isinstance(s, LabelFilter):
            parts.append(f"labelFilter({'+' if s.allow else '-'},{s.label})")
        elif isinstance(s, PropFilter):
            parts.append(f"propFilter({'+' if s.allow else '-'},{s.key},{s.op},{format_value(s.value)})")
        elif isinstance(s, ElementFilter):
            parts.append(f"elementFilter({'+' if s.allow else '-'},{s.element.kind}{s.element.id})")
    return " | ".join(parts)
