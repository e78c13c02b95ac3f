"""Graph file ingestion: edge list, DIMACS, and Matrix Market readers.

All readers drop self-loops and duplicate edges, so the returned graph is
simple. Vertex indexing is deterministic: first appearance for edge lists,
1..n declaration order for the indexed formats.
"""

from __future__ import annotations

from typing import IO, Iterable

from .errors import GraphError, ParseError
from .graphs import Graph

FORMATS = ("edgelist", "dimacs", "matrixmarket")


def load_graph(source: str | IO[str], fmt: str = "edgelist") -> Graph:
    """Parse ``source`` (text content or a text stream) as ``fmt``."""
    if hasattr(source, "read"):
        text = source.read()
    else:
        text = source
    lines = text.splitlines()
    if fmt == "edgelist":
        return _parse_edgelist(lines)
    if fmt == "dimacs":
        return _parse_dimacs(lines)
    if fmt == "matrixmarket":
        return _parse_matrixmarket(lines)
    raise ParseError(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}")


def _parse_edgelist(lines: Iterable[str]) -> Graph:
    pairs: list[tuple[str, str]] = []
    for no, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise ParseError(f"expected two labels, got {len(tokens)} tokens", line=no)
        pairs.append((tokens[0], tokens[1]))
    if not pairs:
        raise ParseError("empty graph: no edges found")
    return Graph.from_labeled_edges(pairs)


def _parse_dimacs(lines: Iterable[str]) -> Graph:
    n = None
    edges: list[tuple[int, int]] = []
    for no, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tokens = line.split()
        if tokens[0] == "p":
            if n is not None:
                raise ParseError("duplicate problem line", line=no)
            if len(tokens) != 4 or tokens[1] != "edge":
                raise ParseError("expected 'p edge <n> <m>'", line=no)
            try:
                n = int(tokens[2])
                int(tokens[3])
            except ValueError:
                raise ParseError("non-integer size in problem line", line=no) from None
            if n < 1:
                raise ParseError("empty graph: vertex count must be positive", line=no)
        elif tokens[0] == "e":
            if n is None:
                raise ParseError("edge before problem line", line=no)
            if len(tokens) != 3:
                raise ParseError("expected 'e <u> <v>'", line=no)
            try:
                u, v = int(tokens[1]), int(tokens[2])
            except ValueError:
                raise ParseError("non-integer endpoint", line=no) from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"endpoint out of range 1..{n}", line=no)
            edges.append((u - 1, v - 1))
        else:
            raise ParseError(f"unknown line type {tokens[0]!r}", line=no)
    if n is None:
        raise ParseError("missing problem line")
    return Graph([str(i) for i in range(1, n + 1)], edges)


def _parse_matrixmarket(lines: Iterable[str]) -> Graph:
    it = iter(enumerate(lines, start=1))
    try:
        no, header = next(it)
    except StopIteration:
        raise ParseError("empty file") from None
    tokens = header.strip().split()
    if len(tokens) != 5 or tokens[0] != "%%MatrixMarket":
        raise ParseError("expected '%%MatrixMarket matrix coordinate pattern symmetric'", line=no)
    if [t.lower() for t in tokens[1:]] != ["matrix", "coordinate", "pattern", "symmetric"]:
        raise ParseError("only 'matrix coordinate pattern symmetric' is supported", line=no)
    size = None
    edges: list[tuple[int, int]] = []
    expected = 0
    for no, raw in it:
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        tokens = line.split()
        if size is None:
            if len(tokens) != 3:
                raise ParseError("expected '<rows> <cols> <entries>'", line=no)
            try:
                rows, cols, expected = (int(t) for t in tokens)
            except ValueError:
                raise ParseError("non-integer size line", line=no) from None
            if rows != cols:
                raise ParseError("adjacency matrix must be square", line=no)
            if rows < 1:
                raise ParseError("empty graph: matrix has no rows", line=no)
            size = rows
        else:
            if len(tokens) != 2:
                raise ParseError("expected '<row> <col>'", line=no)
            try:
                i, j = int(tokens[0]), int(tokens[1])
            except ValueError:
                raise ParseError("non-integer entry", line=no) from None
            if not (1 <= i <= size and 1 <= j <= size):
                raise ParseError(f"entry out of range 1..{size}", line=no)
            edges.append((i - 1, j - 1))
    if size is None:
        raise ParseError("missing size line")
    if len(edges) != expected:
        raise ParseError(f"declared {expected} entries but found {len(edges)}")
    return Graph([str(i) for i in range(1, size + 1)], edges)


def dump_edgelist(g: Graph) -> str:
    """Serialize ``g`` as edge list text (one 'u v' line per edge)."""
    for lab in g.labels:
        if any(ch.isspace() for ch in lab) or lab.startswith("#"):
            raise GraphError(f"label {lab!r} cannot be written as edge list")
    lines = [f"{g.labels[u]} {g.labels[v]}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"
