"""Text formats for clause instances (MAE) and digraphs (DG).

MAE::

    c optional comment lines
    p mae <n> <m>
    <nonzero signed ints> 0        # m clause lines; "0" alone is the empty clause

DG::

    p dg <n> <m>
    a <u> <v>                      # m arc lines, loops and repeats allowed

Repeated literals and repeated arcs are kept: both formats are multisets.
"""

from __future__ import annotations

from typing import Iterable, Iterator

from maxandeven.graphs import Digraph
from maxandeven.model import Clause, Instance, Literal

__all__ = [
    "ParseError",
    "parse_digraph",
    "parse_instance",
    "render_digraph",
    "render_instance",
    "sniff_format",
]


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _content_lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if not tokens or tokens[0] == "c":
            continue
        yield lineno, tokens


def _ints(tokens: Iterable[str], lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError as exc:
        raise ParseError(f"expected integers, got {' '.join(tokens)!r}", lineno) from exc


def _header(lineno: int, tokens: list[str], kind: str) -> tuple[int, int]:
    if len(tokens) != 4 or tokens[0] != "p" or tokens[1] != kind:
        raise ParseError(f"malformed header, expected 'p {kind} <n> <m>'", lineno)
    n, m = _ints(tokens[2:], lineno)
    if n < 0 or m < 0:
        raise ParseError("header counts must be nonnegative", lineno)
    return n, m


def sniff_format(text: str) -> str:
    """``"mae"`` or ``"dg"`` from the header line."""
    for lineno, tokens in _content_lines(text):
        if tokens[0] == "p" and len(tokens) > 1 and tokens[1] in ("mae", "dg"):
            return tokens[1]
        raise ParseError("expected a 'p mae' or 'p dg' header", lineno)
    raise ParseError("empty input: no header found")


def parse_instance(text: str) -> Instance:
    header: tuple[int, int] | None = None
    clauses: list[Clause] = []
    last = 0
    for lineno, tokens in _content_lines(text):
        last = lineno
        if header is None:
            header = _header(lineno, tokens, "mae")
            continue
        if tokens[0] == "p":
            raise ParseError("duplicate header", lineno)
        n, m = header
        lits = _ints(tokens, lineno)
        if lits[-1] != 0:
            raise ParseError("clause is missing its terminating 0", lineno)
        body = lits[:-1]
        if 0 in body:
            raise ParseError("literal 0 inside clause body", lineno)
        for x in body:
            if abs(x) > n:
                raise ParseError(f"variable {abs(x)} out of range 1..{n}", lineno)
        if len(clauses) == m:
            raise ParseError(f"more than the {m} clauses declared in the header", lineno)
        clauses.append(Clause(tuple(Literal.from_int(x) for x in body)))
    if header is None:
        raise ParseError("missing 'p mae <n> <m>' header")
    if len(clauses) != header[1]:
        raise ParseError(
            f"header declares {header[1]} clauses but {len(clauses)} were found", last or None
        )
    return Instance(header[0], tuple(clauses))


def parse_digraph(text: str) -> Digraph:
    header: tuple[int, int] | None = None
    arcs: list[tuple[int, int]] = []
    last = 0
    for lineno, tokens in _content_lines(text):
        last = lineno
        if header is None:
            header = _header(lineno, tokens, "dg")
            continue
        if tokens[0] == "p":
            raise ParseError("duplicate header", lineno)
        n, m = header
        if tokens[0] != "a" or len(tokens) != 3:
            raise ParseError("arc lines must read 'a <u> <v>'", lineno)
        u, v = _ints(tokens[1:], lineno)
        for x in (u, v):
            if not 1 <= x <= n:
                raise ParseError(f"vertex {x} out of range 1..{n}", lineno)
        if len(arcs) == m:
            raise ParseError(f"more than the {m} arcs declared in the header", lineno)
        arcs.append((u, v))
    if header is None:
        raise ParseError("missing 'p dg <n> <m>' header")
    if len(arcs) != header[1]:
        raise ParseError(
            f"header declares {header[1]} arcs but {len(arcs)} were found", last or None
        )
    return Digraph(header[0], tuple(arcs))


def _comment_lines(comments: Iterable[str]) -> list[str]:
    return [f"c {line}".rstrip() for c in comments for line in c.splitlines() or [""]]


def render_instance(inst: Instance, comments: Iterable[str] = ()) -> str:
    lines = _comment_lines(comments)
    lines.append(f"p mae {inst.n} {inst.m}")
    for clause in inst.clauses:
        lines.append(" ".join(str(x) for x in clause.to_ints() + [0]))
    return "\n".join(lines) + "\n"


def render_digraph(g: Digraph, comments: Iterable[str] = ()) -> str:
    lines = _comment_lines(comments)
    lines.append(f"p dg {g.n} {g.m}")
    lines.extend(f"a {u} {v}" for u, v in g.arcs)
    return "\n".join(lines) + "\n"
