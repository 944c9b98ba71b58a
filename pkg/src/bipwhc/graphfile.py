"""Plain-text graph files.

Grammar (one record per line, 1-based indices within each part)::

    c <anything>        comment, ignored
    p bip <a> <b>       header: part sizes; mandatory, must precede edges
    e <x> <y>           edge between x_<x> and y_<y>

Blank lines are ignored. The writer emits edges in lexicographic order, so
``parse_graph_file(write_graph_file(g)) == g``.
"""
from __future__ import annotations

from pathlib import Path
from typing import Optional

from .graph import BipartiteGraph, GraphError, from_edge_list


class GraphFileError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _int(token: str, line: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise GraphFileError(line, f"expected an integer, got {token!r}") from None


def parse_graph_file(text: str) -> BipartiteGraph:
    header: Optional[tuple[int, int]] = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if not tokens or tokens[0] == "c":
            continue
        kind = tokens[0]
        if kind == "p":
            if header is not None:
                raise GraphFileError(lineno, "duplicate header")
            if len(tokens) != 4 or tokens[1] != "bip":
                raise GraphFileError(lineno, "header must read 'p bip <a> <b>'")
            a, b = _int(tokens[2], lineno), _int(tokens[3], lineno)
            if a < 0 or b < 0:
                raise GraphFileError(lineno, "part sizes must be nonnegative")
            header = (a, b)
        elif kind == "e":
            if header is None:
                raise GraphFileError(lineno, "edge before 'p bip' header")
            if len(tokens) != 3:
                raise GraphFileError(lineno, "edge must read 'e <x> <y>'")
            x, y = _int(tokens[1], lineno), _int(tokens[2], lineno)
            if not (1 <= x <= header[0] and 1 <= y <= header[1]):
                raise GraphFileError(lineno, f"edge ({x}, {y}) outside parts of size {header}")
            edges.append((x - 1, y - 1))
        else:
            raise GraphFileError(lineno, f"unknown record type {kind!r}")
    if header is None:
        raise GraphFileError(len(text.splitlines()) + 1, "missing 'p bip <a> <b>' header before end of input")
    try:
        return from_edge_list(header[0], header[1], edges)
    except GraphError as exc:  # pragma: no cover - ranges are checked above
        raise GraphFileError(0, str(exc)) from exc


def write_graph_file(g: BipartiteGraph, comment: Optional[str] = None) -> str:
    lines = []
    if comment:
        lines.extend(f"c {part}" for part in comment.splitlines())
    lines.append(f"p bip {g.a} {g.b}")
    lines.extend(f"e {i + 1} {j + 1}" for i, j in g.edges())
    return "\n".join(lines) + "\n"


def read_graph(path: str | Path) -> BipartiteGraph:
    return parse_graph_file(Path(path).read_text())
