"""Immutable bipartite graphs stored as one bit row per X-vertex.

``rows[i]`` is an ``int`` whose bit ``j`` is set when ``x_i y_j`` is an edge.
Indices are 0-based everywhere in code; human-facing labels are 1-based
(``x1 .. xn``, ``y1 .. yn``), see :func:`vertex_label`.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

MAX_PART = 64


class GraphError(ValueError):
    """Raised for malformed graph construction input."""


class UnbalancedGraphError(ValueError):
    """Raised when a balanced-only query receives parts of different size."""


def vertex_label(part: str, index: int) -> str:
    """1-based human label, e.g. ``vertex_label("x", 0) == "x1"``."""
    return f"{part}{index + 1}"


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class BipartiteGraph:
    a: int
    b: int
    rows: tuple[int, ...]

    def __post_init__(self):
        # numpy integers would leak into hashing and bit tricks
        object.__setattr__(self, "rows", tuple(int(r) for r in self.rows))
        if not (0 <= self.a <= MAX_PART and 0 <= self.b <= MAX_PART):
            raise GraphError(f"part sizes must lie in [0, {MAX_PART}], got ({self.a}, {self.b})")
        if len(self.rows) != self.a:
            raise GraphError(f"expected {self.a} rows, got {len(self.rows)}")
        limit = 1 << self.b
        for i, r in enumerate(self.rows):
            if r < 0 or r >= limit:
                raise GraphError(f"row {i} has bits outside Y (b={self.b})")

    # -- constructors -----------------------------------------------------

    @classmethod
    def empty(cls, a: int, b: int) -> "BipartiteGraph":
        return cls(a, b, (0,) * a)

    @classmethod
    def from_code(cls, n: int, code: int) -> "BipartiteGraph":
        """Balanced graph whose edge ``x_i y_j`` is bit ``i*n + j`` of ``code``."""
        mask = (1 << n) - 1
        return cls(n, n, tuple((code >> (i * n)) & mask for i in range(n)))

    @classmethod
    def from_matrix(cls, matrix) -> "BipartiteGraph":
        m = np.asarray(matrix, dtype=bool)
        if m.ndim != 2:
            raise GraphError("biadjacency matrix must be 2-dimensional")
        rows = tuple(sum(1 << j for j in np.flatnonzero(row)) for row in m)
        return cls(m.shape[0], m.shape[1], rows)

    # -- basic queries ----------------------------------------------------

    @property
    def n(self) -> int:
        """Part size of a balanced graph."""
        require_balanced(self)
        return self.a

    @property
    def balanced(self) -> bool:
        return self.a == self.b

    @property
    def code(self) -> int:
        require_balanced(self)
        return sum(r << (i * self.a) for i, r in enumerate(self.rows))

    @cached_property
    def cols(self) -> tuple[int, ...]:
        """Bit column per Y-vertex: bit ``i`` set when ``x_i`` is a neighbour."""
        cols = [0] * self.b
        for i, r in enumerate(self.rows):
            for j in _bits(r):
                cols[j] |= 1 << i
        return tuple(cols)

    @cached_property
    def x_degrees(self) -> tuple[int, ...]:
        return tuple(r.bit_count() for r in self.rows)

    @cached_property
    def y_degrees(self) -> tuple[int, ...]:
        return tuple(c.bit_count() for c in self.cols)

    @cached_property
    def edge_count(self) -> int:
        return sum(self.x_degrees)

    @cached_property
    def matrix(self) -> np.ndarray:
        """Dense ``a x b`` biadjacency matrix (read-only)."""
        m = np.zeros((self.a, self.b), dtype=np.int8)
        for i, r in enumerate(self.rows):
            for j in _bits(r):
                m[i, j] = 1
        m.setflags(write=False)
        return m

    def has_edge(self, i: int, j: int) -> bool:
        return bool((self.rows[i] >> j) & 1)

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(i, j)`` pairs in lexicographic order."""
        return [(i, j) for i, r in enumerate(self.rows) for j in _bits(r)]

    def neighbors_x(self, i: int) -> list[int]:
        return list(_bits(self.rows[i]))

    def neighbors_y(self, j: int) -> list[int]:
        return list(_bits(self.cols[j]))

    def row_array(self) -> np.ndarray:
        """Rows as ``int64`` for the kernels (requires ``b <= 62``)."""
        return np.array(self.rows, dtype=np.int64)

    # -- edits (always return new graphs) --------------------------------

    def add_edge(self, i: int, j: int) -> "BipartiteGraph":
        _check_pair(self.a, self.b, i, j)
        rows = list(self.rows)
        rows[i] |= 1 << j
        return BipartiteGraph(self.a, self.b, tuple(rows))

    def remove_edge(self, i: int, j: int) -> "BipartiteGraph":
        _check_pair(self.a, self.b, i, j)
        rows = list(self.rows)
        rows[i] &= ~(1 << j)
        return BipartiteGraph(self.a, self.b, tuple(rows))

    def transpose(self) -> "BipartiteGraph":
        """Same graph with the roles of X and Y exchanged."""
        return BipartiteGraph(self.b, self.a, self.cols)

    def relabel(self, x_perm: Sequence[int], y_perm: Sequence[int]) -> "BipartiteGraph":
        """Move ``x_i`` to ``x_{x_perm[i]}`` and ``y_j`` to ``y_{y_perm[j]}``."""
        rows = [0] * self.a
        for i, j in self.edges():
            rows[x_perm[i]] |= 1 << y_perm[j]
        return BipartiteGraph(self.a, self.b, tuple(rows))

    def is_subgraph_of(self, other: "BipartiteGraph") -> bool:
        """Labeled containment on identical parts."""
        return (self.a, self.b) == (other.a, other.b) and all(
            r & ~s == 0 for r, s in zip(self.rows, other.rows)
        )

    def components(self) -> list[tuple[int, int]]:
        """Connected components as ``(x_mask, y_mask)`` pairs; isolated
        vertices form their own components."""
        seen_x = seen_y = 0
        out = []
        for start in range(self.a):
            if seen_x >> start & 1:
                continue
            xs, ys = 1 << start, 0
            frontier_x, frontier_y = xs, 0
            while frontier_x or frontier_y:
                new_y = 0
                for i in _bits(frontier_x):
                    new_y |= self.rows[i]
                new_y &= ~ys
                new_x = 0
                for j in _bits(frontier_y):
                    new_x |= self.cols[j]
                new_x &= ~xs
                xs |= new_x
                ys |= new_y
                frontier_x, frontier_y = new_x, new_y
            seen_x |= xs
            seen_y |= ys
            out.append((xs, ys))
        for j in range(self.b):
            if not seen_y >> j & 1:
                out.append((0, 1 << j))
        return out

    def __str__(self) -> str:
        edges = " ".join(f"{vertex_label('x', i)}{vertex_label('y', j)}" for i, j in self.edges())
        return f"BipartiteGraph({self.a}x{self.b}, e={self.edge_count}: {edges})"


def _check_pair(a: int, b: int, i: int, j: int) -> None:
    if not (0 <= i < a and 0 <= j < b):
        raise GraphError(f"edge ({i}, {j}) out of range for parts of size ({a}, {b})")


def require_balanced(g: BipartiteGraph) -> int:
    if g.a != g.b:
        raise UnbalancedGraphError(f"balanced graph required, got parts ({g.a}, {g.b})")
    return g.a


def from_edge_list(a: int, b: int, edges: Iterable[tuple[int, int]]) -> BipartiteGraph:
    """Build a graph from 0-based ``(i, j)`` pairs; duplicates collapse."""
    if a < 0 or b < 0:
        raise GraphError(f"part sizes must be nonnegative, got ({a}, {b})")
    rows = [0] * a
    for pair in edges:
        i, j = pair
        _check_pair(a, b, i, j)
        rows[i] |= 1 << j
    return BipartiteGraph(a, b, tuple(rows))


def edge_count(g: BipartiteGraph) -> int:
    return g.edge_count


@dataclass(frozen=True)
class DegreeSequence:
    """Ascending degree list ``d_1 <= ... <= d_{a+b}``.

    ``values`` is 0-based, so the 1-based ``d_k`` is ``values[k-1]``;
    use :meth:`d` to index 1-based.
    """

    values: tuple[int, ...]
    x_degrees: tuple[int, ...]
    y_degrees: tuple[int, ...]

    def d(self, k: int) -> int:
        if not 1 <= k <= len(self.values):
            raise IndexError(f"d_{k} outside 1..{len(self.values)}")
        return self.values[k - 1]

    @property
    def min_degree(self) -> int:
        return self.values[0] if self.values else 0

    def __len__(self) -> int:
        return len(self.values)


def degree_sequence(g: BipartiteGraph) -> DegreeSequence:
    return DegreeSequence(tuple(sorted(g.x_degrees + g.y_degrees)), g.x_degrees, g.y_degrees)


def min_degree(g: BipartiteGraph) -> int:
    return degree_sequence(g).min_degree


def sigma(g: BipartiteGraph) -> Optional[int]:
    """Minimum ``d(x) + d(y)`` over nonadjacent cross pairs; ``None`` when
    the graph is complete bipartite."""
    n = require_balanced(g)
    dx, dy = g.x_degrees, g.y_degrees
    full = (1 << n) - 1
    best = None
    for i, r in enumerate(g.rows):
        missing = full & ~r
        if not missing:
            continue
        s = dx[i] + min(dy[j] for j in _bits(missing))
        if best is None or s < best:
            best = s
    return best


def quasi_complement(g: BipartiteGraph) -> BipartiteGraph:
    full = (1 << g.b) - 1
    return BipartiteGraph(g.a, g.b, tuple(full & ~r for r in g.rows))


def is_complete_bipartite(g: BipartiteGraph) -> bool:
    return g.edge_count == g.a * g.b


def full_side_count(g: BipartiteGraph) -> tuple[int, int]:
    """Number of X- and Y-vertices adjacent to the whole opposite part.

    ``K_{n, n-k+1}`` sits inside ``g`` with one side spanning a whole part
    exactly when either count reaches ``n - k + 1``.
    """
    n = require_balanced(g)
    return sum(d == n for d in g.x_degrees), sum(d == n for d in g.y_degrees)


# --------------------------------------------------------------------------
# isomorphism


@dataclass(frozen=True)
class Isomorphism:
    """Vertex bijection from ``G`` onto ``H``.

    Without ``swapped``, ``x_i -> x_{x_map[i]}`` and ``y_j -> y_{y_map[j]}``.
    With ``swapped``, X-vertices of ``G`` land in Y of ``H``:
    ``x_i -> y_{x_map[i]}`` and ``y_j -> x_{y_map[j]}``.
    """

    x_map: tuple[int, ...]
    y_map: tuple[int, ...]
    swapped: bool = False


def apply_isomorphism(g: BipartiteGraph, iso: Isomorphism) -> BipartiteGraph:
    if not iso.swapped:
        return g.relabel(iso.x_map, iso.y_map)
    return g.relabel(iso.x_map, iso.y_map).transpose()


def _same_part_match(g: BipartiteGraph, h: BipartiteGraph) -> Optional[Isomorphism]:
    if (g.a, g.b) != (h.a, h.b) or g.edge_count != h.edge_count:
        return None
    if sorted(g.x_degrees) != sorted(h.x_degrees) or sorted(g.y_degrees) != sorted(h.y_degrees):
        return None
    # most constrained X-vertices first: rare degrees, then high degree
    g_deg_count = Counter(g.x_degrees)
    order = sorted(range(g.a), key=lambda i: (g_deg_count[g.x_degrees[i]], -g.x_degrees[i], i))
    gcols, hcols = g.cols, h.cols
    assign: list[int] = []
    used = [False] * h.a

    def profile(cols, chosen) -> Counter:
        # pattern of each Y-vertex over the assigned prefix, plus its degree
        return Counter(
            (c.bit_count(), tuple((c >> v) & 1 for v in chosen)) for c in cols
        )

    def extend(depth: int) -> bool:
        if depth == g.a:
            return True
        gi = order[depth]
        for hi in range(h.a):
            if used[hi] or h.x_degrees[hi] != g.x_degrees[gi]:
                continue
            assign.append(hi)
            if profile(gcols, order[: depth + 1]) == profile(hcols, assign):
                used[hi] = True
                if extend(depth + 1):
                    return True
                used[hi] = False
            assign.pop()
        return False

    if not extend(0):
        return None
    x_map = [0] * g.a
    for gi, hi in zip(order, assign):
        x_map[gi] = hi
    # every Y-vertex is now pinned by its neighbour set under x_map
    buckets: dict[int, list[int]] = {}
    for hj, c in enumerate(hcols):
        buckets.setdefault(c, []).append(hj)
    y_map = [0] * g.b
    for gj, c in enumerate(gcols):
        image = 0
        for i in _bits(c):
            image |= 1 << x_map[i]
        bucket = buckets.get(image)
        if not bucket:
            return None
        y_map[gj] = bucket.pop()
    return Isomorphism(tuple(x_map), tuple(y_map), False)


def is_isomorphic(
    g: BipartiteGraph, h: BipartiteGraph, allow_part_swap: bool = False
) -> Optional[Isomorphism]:
    """Find a part-respecting (or, if allowed, part-swapping) isomorphism
    from ``g`` onto ``h``; ``None`` when there is none."""
    if (g.a, g.b) == (h.a, h.b):
        iso = _same_part_match(g, h)
        if iso is not None:
            return iso
    if allow_part_swap and (g.a, g.b) == (h.b, h.a):
        iso = _same_part_match(g, h.transpose())
        if iso is not None:
            return Isomorphism(iso.x_map, iso.y_map, True)
    return None
