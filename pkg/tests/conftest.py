from __future__ import annotations

import itertools
import os

import numpy as np
import pytest
from hypothesis import HealthCheck, assume, settings
from hypothesis import strategies as st

from bipwhc.graph import BipartiteGraph, from_edge_list, min_degree

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

C6_EDGES = [(0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (0, 2)]


@pytest.fixture
def c6() -> BipartiteGraph:
    return from_edge_list(3, 3, C6_EDGES)


@st.composite
def balanced_graphs(draw, min_n: int = 1, max_n: int = 5, min_deg: int = 0):
    n = draw(st.integers(min_n, max_n))
    rows = tuple(draw(st.integers(0, (1 << n) - 1)) for _ in range(n))
    g = BipartiteGraph(n, n, rows)
    assume(min_degree(g) >= min_deg)
    return g


@st.composite
def bipartite_graphs(draw, max_side: int = 5):
    a = draw(st.integers(1, max_side))
    b = draw(st.integers(1, max_side))
    rows = tuple(draw(st.integers(0, (1 << b) - 1)) for _ in range(a))
    return BipartiteGraph(a, b, rows)


def random_graph(rng: np.random.Generator, n: int, p: float = 0.5) -> BipartiteGraph:
    return BipartiteGraph.from_matrix(rng.random((n, n)) < p)


def brute_hamilton_path(g: BipartiteGraph, x: int, y: int) -> bool:
    """Independent oracle: try every alternating order x=a1 b1 a2 b2 ... an bn=y."""
    n = g.a
    xs = [i for i in range(n) if i != x]
    ys = [j for j in range(n) if j != y]
    for xo in itertools.permutations(xs):
        order_x = (x,) + xo
        for yo in itertools.permutations(ys):
            order_y = yo + (y,)
            if all(g.has_edge(order_x[i], order_y[i]) for i in range(n)) and all(
                g.has_edge(order_x[i + 1], order_y[i]) for i in range(n - 1)
            ):
                return True
    return False


def brute_weakly_hc(g: BipartiteGraph) -> bool:
    return all(brute_hamilton_path(g, x, y) for x in range(g.a) for y in range(g.a))


def brute_isomorphic(g: BipartiteGraph, h: BipartiteGraph) -> bool:
    """Part-preserving isomorphism by trying every pair of permutations."""
    if (g.a, g.b) != (h.a, h.b) or g.edge_count != h.edge_count:
        return False
    target = set(h.edges())
    for px in itertools.permutations(range(g.a)):
        for py in itertools.permutations(range(g.b)):
            if all((px[i], py[j]) in target for i, j in g.edges()):
                return True
    return False


# -- acceptance summary ------------------------------------------------

ACCEPTANCE_LINES: dict[int, str] = {}


def record_acceptance(number: int, passed: bool, summary: str) -> None:
    line = f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {summary}"
    ACCEPTANCE_LINES[number] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[number])
