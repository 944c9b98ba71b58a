"""Graph enumeration and the certificate-versus-oracle sweep harness."""
from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional, Union

import numpy as np

from .closure import is_closed
from .conditions import ALL_CONDITIONS, ConditionId, DEFAULT_BAND, matches_sandwich, run_checkers
from .graph import BipartiteGraph, full_side_count, min_degree, sigma
from .graphfile import write_graph_file
from .oracle import is_weakly_hc, whc_table
from .spectral import DEFAULT_TOL

EXHAUSTIVE_MAX_N = 4
RANDOM_MAX_N = 12
SANDWICH = "sandwich"
GROUPS: dict[str, tuple[ConditionId, ...]] = {
    "all": ALL_CONDITIONS,
    "spectral": tuple(c for c in ALL_CONDITIONS if c.value.startswith(("spectral_", "closed_"))),
}
SWEEP_CONDITIONS = tuple(c.value for c in ALL_CONDITIONS) + tuple(GROUPS) + (SANDWICH,)

GraphFilter = Callable[[BipartiteGraph], bool]


class SweepRefused(ValueError):
    pass


def min_degree_at_least(k: int) -> GraphFilter:
    def accept(g: BipartiteGraph) -> bool:
        return min_degree(g) >= k

    accept.__name__ = f"min_degree>={k}"
    return accept


def _random_rows(rng: np.random.Generator, n: int) -> tuple[int, ...]:
    bits = rng.integers(0, 2, size=(n, n), dtype=np.int64)
    weights = 1 << np.arange(n, dtype=np.int64)
    return tuple(int(v) for v in bits @ weights)


def enumerate_graphs(
    n: int,
    filter: Optional[GraphFilter] = None,
    mode: str = "exhaustive",
    samples: int = 0,
    seed: int = 0,
    allow_large: bool = False,
) -> Iterator[BipartiteGraph]:
    """Stream balanced graphs on ``n + n`` vertices.

    ``exhaustive`` yields every biadjacency bit code ``0 .. 2^(n^2) - 1`` once,
    in code order (see ``BipartiteGraph.from_code``). It is refused beyond
    ``n = 4`` unless ``allow_large`` (``n = 5`` alone is 2^25 graphs and takes
    hours). ``random`` draws independent fair edge indicators from numpy's
    PCG64 generator seeded with ``seed`` and yields the first ``samples``
    graphs that pass ``filter``.
    """
    if mode == "exhaustive":
        if n > EXHAUSTIVE_MAX_N and not allow_large:
            raise SweepRefused(f"exhaustive enumeration refused for n={n} > {EXHAUSTIVE_MAX_N} (pass allow_large)")
        for code in range(1 << (n * n)):
            g = BipartiteGraph.from_code(n, code)
            if filter is None or filter(g):
                yield g
    elif mode == "random":
        if n > RANDOM_MAX_N:
            raise SweepRefused(f"random sampling supports n <= {RANDOM_MAX_N}, got {n}")
        if samples < 0:
            raise ValueError("samples must be nonnegative")
        rng = np.random.default_rng(seed)
        produced = attempts = 0
        limit = max(1000, 1000 * samples)
        while produced < samples:
            attempts += 1
            if attempts > limit:
                raise SweepRefused(f"filter accepted only {produced} of {attempts - 1} random graphs")
            g = BipartiteGraph(n, n, _random_rows(rng, n))
            if filter is None or filter(g):
                produced += 1
                yield g
    else:
        raise ValueError(f"unknown enumeration mode {mode!r}")


@dataclass
class SweepReport:
    condition: str
    n: int
    mode: str
    samples: Optional[int]
    seed: Optional[int]
    filter: Optional[str]
    examined: int = 0
    certificates: dict[str, int] = field(default_factory=dict)
    oracle_calls: int = 0
    violations: list[dict] = field(default_factory=list)
    sandwich_checked: int = 0
    sandwich_discrepancies: list[dict] = field(default_factory=list)
    containment_checked: int = 0
    containment_discrepancies: list[dict] = field(default_factory=list)
    elapsed_seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not (self.violations or self.sandwich_discrepancies or self.containment_discrepancies)

    def merge(self, other: "SweepReport") -> None:
        self.examined += other.examined
        for key, count in other.certificates.items():
            self.certificates[key] = self.certificates.get(key, 0) + count
        self.oracle_calls += other.oracle_calls
        self.violations.extend(other.violations)
        self.sandwich_checked += other.sandwich_checked
        self.sandwich_discrepancies.extend(other.sandwich_discrepancies)
        self.containment_checked += other.containment_checked
        self.containment_discrepancies.extend(other.containment_discrepancies)


def _graph_record(g: BipartiteGraph, **extra) -> dict:
    return {**extra, "graph": write_graph_file(g)}


def containment_requirement(g: BipartiteGraph) -> Optional[int]:
    """Largest ``k`` for which a closed graph must contain ``K_{n,n-k+1}``
    (``delta >= k``, ``n >= 2k``, ``e > n(n-k) + k(k+1)``), or ``None``."""
    n = g.a
    delta = min_degree(g)
    best = None
    for k in range(1, min(delta, n // 2) + 1):
        if g.edge_count > n * (n - k) + k * (k + 1):
            best = k
    return best


def resolve_condition(condition: Union[ConditionId, str]) -> tuple[ConditionId, ...]:
    """Checker ids behind a sweep condition name (empty for ``sandwich``)."""
    name = condition.value if isinstance(condition, ConditionId) else str(condition)
    if name == SANDWICH:
        return ()
    if name in GROUPS:
        return GROUPS[name]
    try:
        return (ConditionId(name),)
    except ValueError:
        raise ValueError(f"unknown condition {name!r}; expected one of {', '.join(SWEEP_CONDITIONS)}") from None


def _sweep_chunk(args) -> SweepReport:
    graphs, oracle_bits, condition, n, tol, band = args
    ids = resolve_condition(condition)
    report = SweepReport(condition, n, "", None, None, None)
    report.certificates = {cid.value: 0 for cid in ids}

    def oracle(idx: int, g: BipartiteGraph) -> bool:
        report.oracle_calls += 1
        if oracle_bits is not None:
            return bool(oracle_bits[idx])
        return is_weakly_hc(g, witnesses=False).weakly_hc

    for idx, g in enumerate(graphs):
        report.examined += 1
        if condition == SANDWICH:
            if sigma(g) == n + 1 and not oracle(idx, g):
                report.sandwich_checked += 1
                if matches_sandwich(g) is None:
                    report.sandwich_discrepancies.append(_graph_record(g, sigma=n + 1))
        else:
            certified = [v.condition_id.value for v in run_checkers(g, ids, tol, band) if v.certified]
            for cid in certified:
                report.certificates[cid] += 1
            if certified and not oracle(idx, g):
                report.violations.append(_graph_record(g, certified_by=certified))
        k = containment_requirement(g)
        if k is not None and is_closed(g):
            report.containment_checked += 1
            if max(full_side_count(g)) < n - k + 1:
                report.containment_discrepancies.append(_graph_record(g, k=k, full_sides=list(full_side_count(g))))
    return report


def verify_implication(
    condition: Union[ConditionId, str],
    n: int,
    mode: str = "exhaustive",
    samples: int = 0,
    seed: int = 0,
    filter: Optional[GraphFilter] = None,
    workers: int = 1,
    allow_large: bool = False,
    tol: float = DEFAULT_TOL,
    band: float = DEFAULT_BAND,
) -> SweepReport:
    """Check every certificate issued by ``condition`` against the oracle.

    ``condition`` is a :class:`ConditionId` value, a group name (``"all"``,
    ``"spectral"``), or
    ``"sandwich"`` (every non-weakly-Hamilton-connected graph with
    ``sigma = n + 1`` must be isomorphic to some ``S_n^t`` or ``R_n^t``).
    Every sweep also confirms that closed graphs meeting the edge bound with
    ``delta >= k`` contain ``K_{n,n-k+1}``. Work is split into contiguous
    chunks, one per worker, and merged in order, so the report does not
    depend on ``workers``.
    """
    condition = condition.value if isinstance(condition, ConditionId) else str(condition)
    resolve_condition(condition)
    started = time.perf_counter()
    graphs = list(enumerate_graphs(n, filter, mode, samples, seed, allow_large))
    oracle_bits = None
    if mode == "exhaustive":
        codes = np.array([g.code for g in graphs], dtype=np.int64)
        oracle_bits = whc_table(n, codes)
    chunks = max(1, min(workers, len(graphs)))
    bounds = np.linspace(0, len(graphs), chunks + 1).astype(int)
    tasks = [
        (graphs[lo:hi], None if oracle_bits is None else oracle_bits[lo:hi], condition, n, tol, band)
        for lo, hi in zip(bounds[:-1], bounds[1:])
    ]
    if chunks == 1:
        parts = [_sweep_chunk(tasks[0])]
    else:
        with ProcessPoolExecutor(max_workers=chunks) as pool:
            parts = list(pool.map(_sweep_chunk, tasks))
    report = SweepReport(
        condition, n, mode,
        samples if mode == "random" else None,
        seed if mode == "random" else None,
        getattr(filter, "__name__", None) if filter else None,
    )
    for part in parts:
        report.merge(part)
    report.elapsed_seconds = time.perf_counter() - started
    return report
