"""Plain-text files for ribbon graphs and framed graph matrices.

Ribbon files name the edge count, optional twisted edges, and one
vertex line per cyclic word:

    ribbon
    edges 3
    twist 2
    vertex 1 2 1 3
    vertex 2 3

Graph files name the vertex count, optional framed vertices, and one
line per edge:

    graph
    vertices 3
    frame 1 3
    edge 1 2

Everything from a '#' to the end of its line is a comment; blank lines
are skipped.  Numbers are 1-based everywhere.
"""

from __future__ import annotations

from .errors import ParseError, PreconditionError
from .matrixops import FramedGraphMatrix
from .ribbon import RibbonGraph, RotationSystem, from_rotation, to_rotation

__all__ = [
    "parse_rotation",
    "parse_ribbon",
    "serialize_rotation",
    "serialize_ribbon",
    "parse_graph",
    "serialize_graph",
]


def _significant_lines(text: str):
    for num, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield num, line


def _ints(fields: list[str], num: int) -> list[int]:
    out = []
    for f in fields:
        try:
            out.append(int(f))
        except ValueError:
            raise ParseError(f"expected an integer, got {f!r}", num) from None
    return out


def _header(lines, expected: str):
    try:
        num, line = next(lines)
    except StopIteration:
        raise ParseError(f"empty file, expected a {expected!r} header") from None
    if line != expected:
        raise ParseError(f"expected {expected!r} header, got {line!r}", num)


def _count_line(lines, keyword: str) -> int:
    try:
        num, line = next(lines)
    except StopIteration:
        raise ParseError(f"missing '{keyword} <n>' line") from None
    fields = line.split()
    if len(fields) != 2 or fields[0] != keyword:
        raise ParseError(f"expected '{keyword} <n>', got {line!r}", num)
    (n,) = _ints(fields[1:], num)
    if n < 0:
        raise ParseError(f"{keyword} count must not be negative", num)
    return n


def parse_rotation(text: str) -> RotationSystem:
    lines = _significant_lines(text)
    _header(lines, "ribbon")
    n = _count_line(lines, "edges")
    words: list[tuple[int, ...]] = []
    twists: set[int] = set()
    for num, line in lines:
        fields = line.split()
        values = _ints(fields[1:], num)
        if fields[0] == "vertex":
            if not values:
                raise ParseError("vertex line needs at least one edge label", num)
            words.append(tuple(values))
        elif fields[0] == "twist":
            twists.update(values)
        else:
            raise ParseError(f"expected 'vertex' or 'twist', got {fields[0]!r}", num)
    try:
        return RotationSystem(n, tuple(words), frozenset(twists))
    except PreconditionError as exc:
        raise ParseError(str(exc)) from exc


def parse_ribbon(text: str) -> RibbonGraph:
    return from_rotation(parse_rotation(text))


def serialize_rotation(rs: RotationSystem) -> str:
    lines = ["ribbon", f"edges {rs.n}"]
    if rs.twists:
        lines.append("twist " + " ".join(str(e) for e in sorted(rs.twists)))
    for word in rs.words:
        lines.append("vertex " + " ".join(str(e) for e in word))
    return "\n".join(lines) + "\n"


def serialize_ribbon(G: RibbonGraph) -> str:
    return serialize_rotation(to_rotation(G))


def parse_graph(text: str) -> FramedGraphMatrix:
    lines = _significant_lines(text)
    _header(lines, "graph")
    n = _count_line(lines, "vertices")
    rows = [0] * n

    def check(v: int, num: int) -> int:
        if not 1 <= v <= n:
            raise ParseError(f"vertex {v} out of range 1..{n}", num)
        return v

    seen: set[tuple[int, int]] = set()
    for num, line in lines:
        fields = line.split()
        values = _ints(fields[1:], num)
        if fields[0] == "frame":
            for v in values:
                check(v, num)
                if rows[v - 1] >> (v - 1) & 1:
                    raise ParseError(f"vertex {v} framed twice", num)
                rows[v - 1] |= 1 << (v - 1)
        elif fields[0] == "edge":
            if len(values) != 2:
                raise ParseError("expected 'edge <i> <j>'", num)
            i, j = (check(v, num) for v in values)
            if i == j:
                raise ParseError("edge endpoints must differ (use 'frame' for framings)", num)
            if (min(i, j), max(i, j)) in seen:
                raise ParseError(f"edge {i} {j} repeated", num)
            seen.add((min(i, j), max(i, j)))
            rows[i - 1] |= 1 << (j - 1)
            rows[j - 1] |= 1 << (i - 1)
        else:
            raise ParseError(f"expected 'edge' or 'frame', got {fields[0]!r}", num)
    return FramedGraphMatrix(n, tuple(rows))


def serialize_graph(M: FramedGraphMatrix) -> str:
    lines = ["graph", f"vertices {M.n}"]
    framed = [str(i) for i in range(1, M.n + 1) if M.entry(i, i)]
    if framed:
        lines.append("frame " + " ".join(framed))
    for i in range(1, M.n + 1):
        for j in range(i + 1, M.n + 1):
            if M.entry(i, j):
                lines.append(f"edge {i} {j}")
    return "\n".join(lines) + "\n"
