"""The degree-sum ``n+2`` closure for balanced bipartite graphs."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import _kernels
from .graph import BipartiteGraph, require_balanced


@dataclass(frozen=True)
class ClosureTrace:
    result: BipartiteGraph
    added_edges: tuple[tuple[int, int], ...]
    rounds: int


def b_closure(g: BipartiteGraph, order: Optional[Sequence[tuple[int, int]]] = None) -> ClosureTrace:
    """Repeatedly join nonadjacent ``x, y`` with ``d(x) + d(y) >= n + 2``.

    Candidate pairs are scanned in ``order`` (default: lexicographic) and the
    scan repeats until a full pass adds nothing. The fixed point does not
    depend on the order; ``added_edges`` records the order actually used.
    """
    n = require_balanced(g)
    if order is None:
        pair_order = np.arange(n * n, dtype=np.int64)
    else:
        pair_order = np.array([i * n + j for i, j in order], dtype=np.int64)
        if sorted(pair_order.tolist()) != list(range(n * n)):
            raise ValueError("order must list every cross pair exactly once")
    rows = g.row_array()
    added = np.zeros(max(n * n, 1), dtype=np.int64)
    count, rounds = _kernels.closure_fixpoint(rows, n, pair_order, added)
    pairs = tuple((int(p) // n, int(p) % n) for p in added[:count])
    result = BipartiteGraph(n, n, tuple(int(r) for r in rows))
    return ClosureTrace(result, pairs, int(rounds))


def is_closed(g: BipartiteGraph) -> bool:
    n = require_balanced(g)
    dx, dy = g.x_degrees, g.y_degrees
    threshold = n + 2
    for i, r in enumerate(g.rows):
        for j in range(n):
            if not (r >> j) & 1 and dx[i] + dy[j] >= threshold:
                return False
    return True
