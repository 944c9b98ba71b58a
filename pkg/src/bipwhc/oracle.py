"""Brute-force ground truth for weak Hamilton-connectedness.

Two independent search strategies back the oracle: a bitmask DP over
``(visited set, last vertex)`` states for ``2n <= 24`` and a pruned DFS
beyond that (and on request). Paths are reported as tuples of
``(part, index)`` with ``part in {"x", "y"}`` and 0-based indices.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import _kernels
from .graph import BipartiteGraph, GraphError, require_balanced

DP_MAX_VERTICES = 24
HARD_MAX_VERTICES = 32

Vertex = tuple[str, int]
Path = tuple[Vertex, ...]


class OracleSizeError(ValueError):
    pass


@dataclass(frozen=True)
class OracleResult:
    weakly_hc: bool
    witness_paths: dict[tuple[int, int], Path] = field(default_factory=dict)
    failing_pair: Optional[tuple[int, int]] = None


def _pick_method(n: int, method: str) -> str:
    if 2 * n > HARD_MAX_VERTICES:
        raise OracleSizeError(f"Hamilton search refuses 2n = {2 * n} > {HARD_MAX_VERTICES} vertices")
    if method == "auto":
        return "dp" if 2 * n <= DP_MAX_VERTICES else "dfs"
    if method not in ("dp", "dfs"):
        raise ValueError(f"unknown search method {method!r}")
    if method == "dp" and 2 * n > DP_MAX_VERTICES:
        raise OracleSizeError(f"bitmask DP is limited to 2n <= {DP_MAX_VERTICES}")
    return method


def _to_vertex(v: int, n: int) -> Vertex:
    return ("x", v) if v < n else ("y", v - n)


def _reconstruct(nbr: np.ndarray, reach: np.ndarray, start: int, end: int, nv: int) -> list[int]:
    mask = (1 << nv) - 1
    v = end
    seq = [v]
    while mask != 1 << start:
        prev = mask ^ (1 << v)
        ends = int(reach[prev]) & int(nbr[v])
        u = (ends & -ends).bit_length() - 1
        seq.append(u)
        mask, v = prev, u
    seq.reverse()
    return seq


def _dfs_order(nbr: np.ndarray) -> np.ndarray:
    degrees = [int(m).bit_count() for m in nbr]
    return np.array(sorted(range(len(nbr)), key=lambda v: (degrees[v], v)), dtype=np.int64)


class _Searcher:
    """Per-graph search state shared across many pair queries."""

    def __init__(self, g: BipartiteGraph, method: str):
        self.n = require_balanced(g)
        self.method = _pick_method(self.n, method)
        self.nv = 2 * self.n
        self.nbr = _kernels.vertex_masks(g.row_array(), self.n)
        self._reach = None
        self._reach_start = -1
        self._order = None

    def _reach_from(self, start: int) -> np.ndarray:
        if self._reach is None:
            self._reach = np.zeros(1 << self.nv, dtype=np.int64)
        if self._reach_start != start:
            _kernels.hamilton_reach(self.nbr, self.nv, start, self._reach)
            self._reach_start = start
        return self._reach

    def endpoints_from(self, x: int) -> int:
        """Bit set of Y-indices reachable by a Hamilton path from ``x``."""
        if self.method == "dp":
            ends = int(self._reach_from(x)[(1 << self.nv) - 1])
            return ends >> self.n
        return sum(1 << y for y in range(self.n) if self.path(x, y) is not None)

    def path(self, x: int, y: int) -> Optional[list[int]]:
        s, t = x, self.n + y
        if self.method == "dp":
            reach = self._reach_from(s)
            if not (int(reach[(1 << self.nv) - 1]) >> t) & 1:
                return None
            return _reconstruct(self.nbr, reach, s, t, self.nv)
        if self._order is None:
            self._order = _dfs_order(self.nbr)
        buf = np.zeros(self.nv, dtype=np.int64)
        if _kernels.hamilton_path_dfs(self.nbr, self.nv, s, t, self._order, buf):
            return [int(v) for v in buf]
        return None


def hamilton_path_between(g: BipartiteGraph, x: int, y: int, method: str = "auto") -> Optional[Path]:
    """A Hamilton path from ``x_x`` to ``y_y``, or ``None``."""
    n = require_balanced(g)
    if not (0 <= x < n and 0 <= y < n):
        raise GraphError(f"pair ({x}, {y}) out of range for n={n}")
    seq = _Searcher(g, method).path(x, y)
    if seq is None:
        return None
    return tuple(_to_vertex(v, n) for v in seq)


def is_weakly_hc(g: BipartiteGraph, witnesses: bool = True, method: str = "auto") -> OracleResult:
    """Decide weak Hamilton-connectedness over all ``n^2`` cross pairs.

    Pairs are examined in lexicographic order and the search stops at the
    first pair without a Hamilton path. With ``witnesses`` every pair found
    connectable gets its path recorded.
    """
    n = require_balanced(g)
    search = _Searcher(g, method)
    if n == 0:
        return OracleResult(True)
    if not witnesses and search.method == "dp":
        reach = np.zeros(1 << (2 * n), dtype=np.int64)
        code = int(_kernels.first_failing_pair(g.row_array(), n, reach))
        if code < 0:
            return OracleResult(True)
        return OracleResult(False, failing_pair=(code // n, code % n))
    paths: dict[tuple[int, int], Path] = {}
    for x in range(n):
        for y in range(n):
            seq = search.path(x, y)
            if seq is None:
                return OracleResult(False, paths, (x, y))
            if witnesses:
                paths[(x, y)] = tuple(_to_vertex(v, n) for v in seq)
    return OracleResult(True, paths)


def hamilton_cycle_through_edge(g: BipartiteGraph, edge: tuple[int, int], method: str = "auto") -> bool:
    """Whether some Hamilton cycle of ``g`` uses ``edge``.

    Such a cycle is the edge plus a Hamilton path between its ends that
    avoids it.
    """
    n = require_balanced(g)
    i, j = edge
    if not (0 <= i < n and 0 <= j < n) or not g.has_edge(i, j):
        raise GraphError(f"({i}, {j}) is not an edge of the graph")
    if n < 2:
        return False
    return hamilton_path_between(g.remove_edge(i, j), i, j, method) is not None


def validate_path(g: BipartiteGraph, path: Path, x: int, y: int) -> bool:
    """Independent check that ``path`` is a Hamilton path from ``x_x`` to ``y_y``."""
    n = require_balanced(g)
    if len(path) != 2 * n or len(set(path)) != 2 * n:
        return False
    if path[0] != ("x", x) or path[-1] != ("y", y):
        return False
    for (p, u), (q, v) in zip(path, path[1:]):
        if p == q:
            return False
        i, j = (u, v) if p == "x" else (v, u)
        if not g.has_edge(i, j):
            return False
    return True


def whc_table(n: int, codes: np.ndarray) -> np.ndarray:
    """Oracle verdicts for a batch of graph codes (see ``BipartiteGraph.from_code``)."""
    _pick_method(n, "dp")
    out = np.zeros(len(codes), dtype=np.bool_)
    _kernels.whc_codes(n, np.asarray(codes, dtype=np.int64), out)
    return out
