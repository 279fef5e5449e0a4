"""Line-oriented graph text format.

    # comment
    V <id> [key=value]...
    E <id> <label> <tail-id> <head-id> [key=value]...

Values are bare integers, floats, ``true``/``false``, or double-quoted
strings with backslash escapes.
"""

from __future__ import annotations

import io
import math
import re
from pathlib import Path
from typing import Iterable, TextIO

from .errors import GraphError, ParseError
from .graph import INT64_MAX, INT64_MIN, Graph

_INT = re.compile(r"[+-]?\d+\Z")
_FLOAT = re.compile(r"[+-]?(\d+\.\d*|\.\d+|\d+)([eE][+-]?\d+)?\Z|[+-]?(inf|nan)\Z")
_ESCAPES = {"n": "\n", "t": "\t", "r": "\r", "\\": "\\", '"': '"'}

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<prop>(?P<key>[^\s=#"]+)=(?P<value>"(?:[^"\\]|\\.)*"|[^\s"]*))
  | (?P<word>[^\s="]+)
  | (?P<bad>.)
    """,
    re.VERBOSE,
)


def _unescape(body: str) -> str:
    return re.sub(r"\\(.)", lambda m: _ESCAPES.get(m.group(1), m.group(1)), body)


def parse_value(text: str, *, bare_strings: bool = False):
    """Decode one value literal. Raises ValueError on malformed input."""
    if len(text) >= 2 and text[0] == '"' and text[-1] == '"':
        return _unescape(text[1:-1])
    if text == "true":
        return True
    if text == "false":
        return False
    if _INT.match(text):
        value = int(text)
        if not INT64_MIN <= value <= INT64_MAX:
            raise ValueError(f"integer {text} does not fit in 64 bits")
        return value
    if _FLOAT.match(text):
        return float(text)
    if bare_strings and text:
        return text
    raise ValueError(f"cannot read value {text!r} (strings must be double-quoted)")


def format_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return repr(value)
    escaped = value.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n").replace("\t", "\\t").replace("\r", "\\r")
    return f'"{escaped}"'


def _tokenize(line: str, lineno: int, source):
    words, props = [], []
    for m in _TOKEN.finditer(line):
        col = m.start() + 1
        if m.group("ws"):
            continue
        if m.group("bad"):
            raise ParseError(f"unexpected character {m.group('bad')!r}", lineno, col, source)
        if m.group("prop"):
            props.append((m.group("key"), m.group("value"), col))
        else:
            if props:
                raise ParseError("positional field after properties", lineno, col, source)
            words.append((m.group("word"), col))
    return words, props


def _parse_id(word, lineno, source, what):
    text, col = word
    if not re.fullmatch(r"\d+", text):
        raise ParseError(f"{what} must be a non-negative integer, got {text!r}", lineno, col, source)
    return int(text)


def _parse_props(props, lineno, source):
    out = {}
    for key, raw, col in props:
        if key in out:
            raise ParseError(f"duplicate key {key!r}", lineno, col, source)
        try:
            out[key] = parse_value(raw)
        except ValueError as exc:
            raise ParseError(str(exc), lineno, col + len(key) + 1, source) from None
    return out


def read_graph(lines: Iterable[str], source: str | None = None) -> Graph:
    graph = Graph()
    for lineno, line in enumerate(lines, 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        words, props = _tokenize(line.rstrip("\n"), lineno, source)
        if not words:
            raise ParseError("missing record type", lineno, 1, source)
        tag, col = words[0]
        attrs = _parse_props(props, lineno, source)
        try:
            if tag == "V":
                if len(words) != 2:
                    raise ParseError("expected: V <id> [key=value]...", lineno, col, source)
                graph.add_vertex(_parse_id(words[1], lineno, source, "vertex id"), attrs)
            elif tag == "E":
                if len(words) != 5:
                    raise ParseError("expected: E <id> <label> <tail> <head> [key=value]...", lineno, col, source)
                eid = _parse_id(words[1], lineno, source, "edge id")
                tail = _parse_id(words[3], lineno, source, "tail id")
                head = _parse_id(words[4], lineno, source, "head id")
                graph.add_edge(eid, words[2][0], tail, head, attrs)
            else:
                raise ParseError(f"unknown record type {tag!r}", lineno, col, source)
        except ParseError:
            raise
        except GraphError as exc:
            raise ParseError(str(exc), lineno, col, source) from exc
    return graph


def loads(text: str, source: str | None = None) -> Graph:
    return read_graph(io.StringIO(text), source)


def load(path: str | Path) -> Graph:
    path = Path(path)
    with path.open(encoding="utf-8") as fh:
        return read_graph(fh, str(path))


_SAFE = re.compile(r'[^\s="#]+\Z')


def _safe(text: str, what: str) -> str:
    if not _SAFE.match(text):
        raise ValueError(f"{what} {text!r} cannot be written in the text format")
    return text


def _props_text(props) -> str:
    return "".join(f" {_safe(k, 'key')}={format_value(v)}" for k, v in props.items())


def write_graph(graph: Graph, out: TextIO) -> None:
    for v in graph.iter_vertices():
        out.write(f"V {v.id}{_props_text(v.properties)}\n")
    for e in graph.iter_edges():
        out.write(f"E {e.id} {_safe(e.label, 'label')} {e.tail.id} {e.head.id}{_props_text(e.properties)}\n")


def dumps(graph: Graph) -> str:
    buf = io.StringIO()
    write_graph(graph, buf)
    return buf.getvalue()


def dump(graph: Graph, path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8") as fh:
        write_graph(graph, fh)
