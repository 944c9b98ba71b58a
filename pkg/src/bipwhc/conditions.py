"""Sufficient conditions for weak Hamilton-connectedness, one checker each.

Every checker takes a balanced graph and returns :class:`Verdict` values.
Parameters such as ``k`` and ``t`` are never user input: each checker scans
every admissible value and reports the best outcome with its witness.

Spectral comparisons carry a decision band ``band * max(1, |threshold|)``.
A value inside the band is resolved exactly when possible (integer
thresholds reduce to a definiteness test on an integer matrix, and a graph
isomorphic to the reference ``Q_n^k`` ties it exactly); otherwise the verdict
is ``inconclusive`` and never certifies.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Callable, Iterable, Optional

from .closure import b_closure
from .families import make_Q, make_R, make_S, q_t_max
from .graph import (
    BipartiteGraph,
    _bits,
    degree_sequence,
    is_complete_bipartite,
    is_isomorphic,
    quasi_complement,
    require_balanced,
    sigma,
    vertex_label,
)
from .spectral import (
    DEFAULT_TOL,
    ConvergenceError,
    adjacency_spectral_radius,
    compare_top_eigenvalue,
    gram_matrix,
    signless_laplacian,
    signless_laplacian_spectral_radius,
)

DEFAULT_BAND = 1e-7


class ConditionId(str, Enum):
    PAIR_SUM = "pair_sum"
    GAMMA = "gamma"
    DEGREE_COUNT = "degree_count"
    CLOSURE_COMPLETE = "closure_complete"
    DEGREE_SEQUENCE = "degree_sequence"
    EDGE_COUNT_T = "edge_count_t"
    EDGE_COUNT_K = "edge_count_k"
    SPECTRAL_RHO = "spectral_rho"
    SPECTRAL_Q = "spectral_q"
    SPECTRAL_RHO_COMPLEMENT = "spectral_rho_complement"
    SPECTRAL_Q_COMPLEMENT = "spectral_q_complement"
    CLOSED_RHO = "closed_rho"
    CLOSED_Q = "closed_q"


class Confidence(str, Enum):
    EXACT = "exact"
    NUMERIC = "numeric-with-band"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Verdict:
    condition_id: ConditionId
    applicable: bool
    satisfied: bool
    certified: bool
    detail: str
    confidence: Confidence = Confidence.EXACT
    witness: dict = field(default_factory=dict, compare=False)

    @property
    def rank(self) -> int:
        if self.certified:
            return 3
        if self.applicable and self.satisfied:
            return 2
        return 1 if self.applicable else 0


def _verdict(cid, applicable, satisfied, detail, confidence=Confidence.EXACT, **witness) -> Verdict:
    certified = applicable and satisfied and confidence != Confidence.INCONCLUSIVE
    return Verdict(cid, applicable, satisfied, certified, detail, confidence, witness)


def _not_applicable(cid, detail) -> Verdict:
    return Verdict(cid, False, False, False, detail, Confidence.EXACT, {})


class SoundnessViolation(RuntimeError):
    """A checker certified a graph that the oracle proves is not weakly
    Hamilton-connected."""

    def __init__(self, report: "ConditionReport", graph: BipartiteGraph):
        ids = ", ".join(v.condition_id.value for v in report.verdicts if v.certified)
        super().__init__(f"soundness violation: certified by [{ids}] but not weakly Hamilton-connected: {graph}")
        self.report = report
        self.graph = graph


# --------------------------------------------------------------------------
# degree and closure conditions


def check_pair_sum(g: BipartiteGraph) -> Verdict:
    n = require_balanced(g)
    s = sigma(g)
    cid = ConditionId.PAIR_SUM
    if s is None:
        return _verdict(cid, True, True, "complete bipartite: no nonadjacent cross pair", sigma=None)
    ok = s >= n + 2
    return _verdict(cid, True, ok, f"sigma={s} {'>=' if ok else '<'} n+2={n + 2}", sigma=s)


def _k_range(n: int) -> range:
    return range(2, q_t_max(n) + 1)


def _gamma_failure(g: BipartiteGraph, n: int) -> Optional[tuple]:
    sides = (
        ("x", "y", g.x_degrees, g.y_degrees, g.cols),
        ("y", "x", g.y_degrees, g.x_degrees, g.rows),
    )
    for k in _k_range(n):
        for low_part, high_part, low_deg, high_deg, high_nbrs in sides:
            low = sum(1 << v for v, d in enumerate(low_deg) if d <= k)
            if low.bit_count() < k - 1:
                continue
            for w, d in enumerate(high_deg):
                if d > n - k + 1:
                    continue
                missing = low & ~high_nbrs[w]
                if missing.bit_count() >= k - 1:
                    gamma = [v for v in _bits(missing)][: k - 1]
                    return k, low_part, gamma, high_part, w
    return None


def check_gamma(g: BipartiteGraph) -> Verdict:
    """Low-degree sets must dominate low-degree vertices on the other side.

    For every ``k`` in ``[2, (n+1)/2]``, every ``(k-1)``-subset of the
    vertices of degree ``<= k`` in one part must reach every vertex of degree
    ``<= n-k+1`` in the other part, in both directions. A violating subset
    exists exactly when some such vertex misses at least ``k-1`` of the
    low-degree vertices, which is what is tested here.
    """
    n = require_balanced(g)
    cid = ConditionId.GAMMA
    if n < 3:
        return _not_applicable(cid, f"n={n}: no k in [2, (n+1)/2]")
    fail = _gamma_failure(g, n)
    if fail is None:
        return _verdict(cid, True, True, f"every low-degree subset dominates for k in [2, {q_t_max(n)}]")
    k, lp, gamma, hp, w = fail
    names = ",".join(vertex_label(lp, v) for v in gamma)
    return _verdict(
        cid, True, False,
        f"k={k}: {vertex_label(hp, w)} (degree <= {n - k + 1}) has no neighbour in {{{names}}}",
        k=k, gamma=[vertex_label(lp, v) for v in gamma], vertex=vertex_label(hp, w),
    )


def check_degree_count(g: BipartiteGraph) -> Verdict:
    """Fewer than ``k-1`` vertices of degree ``<= k`` in each part, for all
    ``k`` in ``[2, (n+1)/2]`` (``k = 1`` would ask for a negative count)."""
    n = require_balanced(g)
    cid = ConditionId.DEGREE_COUNT
    if n < 3:
        return _not_applicable(cid, f"n={n}: no k in [2, (n+1)/2]")
    for k in _k_range(n):
        for part, degs in (("x", g.x_degrees), ("y", g.y_degrees)):
            count = sum(d <= k for d in degs)
            if count >= k - 1:
                return _verdict(
                    cid, True, False,
                    f"k={k}: {count} {part}-vertices of degree <= {k}, need < {k - 1} (k=1 excluded)",
                    k=k, part=part, count=count,
                )
    return _verdict(cid, True, True, f"low-degree counts below k-1 for every k in [2, {q_t_max(n)}] (k=1 excluded)")


def check_closure_complete(g: BipartiteGraph) -> Verdict:
    require_balanced(g)
    trace = b_closure(g)
    ok = is_complete_bipartite(trace.result)
    missing = g.a * g.b - trace.result.edge_count
    detail = f"closure added {len(trace.added_edges)} edges; " + ("complete" if ok else f"{missing} pairs still missing")
    return _verdict(ConditionId.CLOSURE_COMPLETE, True, ok, detail, added=len(trace.added_edges))


def check_degree_sequence(g: BipartiteGraph) -> Verdict:
    """No ``k`` in ``[2, (n+1)/2]`` with ``d_{k-1} <= k`` and
    ``d_{n-1} <= n-k+1`` (ascending, 1-based)."""
    n = require_balanced(g)
    cid = ConditionId.DEGREE_SEQUENCE
    if n < 3:
        return _not_applicable(cid, f"n={n} < 3: index d_(n-1) is not meaningful")
    ds = degree_sequence(g)
    for k in _k_range(n):
        if ds.d(k - 1) <= k and ds.d(n - 1) <= n - k + 1:
            return _verdict(
                cid, True, False,
                f"k={k}: d_{k - 1}={ds.d(k - 1)} <= {k} and d_{n - 1}={ds.d(n - 1)} <= {n - k + 1}",
                k=k,
            )
    return _verdict(cid, True, True, f"no k in [2, {q_t_max(n)}] meets both degree bounds")


def edge_threshold_t(n: int, k: int) -> tuple[int, int]:
    """``(max over t in [k, (n+1)/2] of n(n-t+1) + t(t+1), maximizing t)``."""
    def bound(t: int) -> int:
        return n * (n - t + 1) + t * (t + 1)

    t_star = max(range(k, q_t_max(n) + 1), key=lambda t: (bound(t), -t))
    return bound(t_star), t_star


def check_edge_count_t(g: BipartiteGraph) -> Verdict:
    n = require_balanced(g)
    cid = ConditionId.EDGE_COUNT_T
    delta = degree_sequence(g).min_degree
    k = min(delta, q_t_max(n))
    if k < 2:
        return _not_applicable(cid, f"k=min(delta={delta}, {q_t_max(n)}) < 2")
    threshold, t_star = edge_threshold_t(n, k)
    e = g.edge_count
    ok = e > threshold
    return _verdict(
        cid, True, ok,
        f"k={k}: e={e} {'>' if ok else '<='} {threshold} (max at t={t_star})",
        k=k, threshold=threshold, t=t_star,
    )


def edge_threshold_k(n: int, k: int) -> int:
    return n * (n - k) + k * (k + 1)


def check_edge_count_k(g: BipartiteGraph) -> Verdict:
    n = require_balanced(g)
    cid = ConditionId.EDGE_COUNT_K
    delta = degree_sequence(g).min_degree
    k_max = min(delta, n // 2)
    if k_max < 1:
        return _not_applicable(cid, f"no k with 1 <= k <= delta={delta} and n >= 2k")
    e = g.edge_count
    for k in range(1, k_max + 1):
        if e > edge_threshold_k(n, k):
            return _verdict(cid, True, True, f"k={k}: e={e} > {edge_threshold_k(n, k)}", k=k)
    best = min(edge_threshold_k(n, k) for k in range(1, k_max + 1))
    return _verdict(cid, True, False, f"e={e} <= {best} for every k in [1, {k_max}]")


# --------------------------------------------------------------------------
# spectral conditions


def _band(threshold: float, band: float) -> float:
    return band * max(1.0, abs(threshold))


def _decide(value, threshold, band, direction, exact: Optional[Callable[[], Optional[int]]]):
    """Compare ``value`` against ``threshold`` (``direction`` is ``">="`` or
    ``"<="``). Returns ``(satisfied, confidence)``."""
    width = _band(threshold, band)
    diff = value - threshold
    if direction == "<=":
        diff = -diff
    if diff >= width:
        return True, Confidence.NUMERIC
    if diff <= -width:
        return False, Confidence.NUMERIC
    sign = exact() if exact is not None else None
    if sign is None:
        return True, Confidence.INCONCLUSIVE
    if direction == "<=":
        sign = -sign
    return sign >= 0, Confidence.EXACT


@lru_cache(maxsize=None)
def q_family_radii(n: int, k: int, tol: float = DEFAULT_TOL) -> tuple[float, float]:
    g = make_Q(n, k)
    return adjacency_spectral_radius(g, tol).value, signless_laplacian_spectral_radius(g, tol).value


@lru_cache(maxsize=None)
def _sandwich_members(n: int) -> tuple:
    return tuple((t, make_S(n, t), make_R(n, t)) for t in range(2, n))


def matches_sandwich(g: BipartiteGraph) -> Optional[int]:
    """Smallest ``t`` with ``g`` isomorphic to ``S_n^t`` or ``R_n^t``."""
    n = require_balanced(g)
    e = g.edge_count
    for t, s, r in _sandwich_members(n):
        for member in (s, r):
            if member.edge_count == e and is_isomorphic(g, member, allow_part_swap=True) is not None:
                return t
    return None


class _Spectra:
    """Lazily computed radii of a graph and its quasi-complement."""

    def __init__(self, g: BipartiteGraph, tol: float):
        self.g, self.tol = g, tol
        self._cache: dict = {}

    def _get(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    @property
    def complement(self) -> BipartiteGraph:
        return self._get("hat", lambda: quasi_complement(self.g))

    def rho(self) -> float:
        return self._get("rho", lambda: adjacency_spectral_radius(self.g, self.tol).value)

    def q(self) -> float:
        return self._get("q", lambda: signless_laplacian_spectral_radius(self.g, self.tol).value)

    def rho_hat(self) -> float:
        return self._get("rho_hat", lambda: adjacency_spectral_radius(self.complement, self.tol).value)

    def q_hat(self) -> float:
        return self._get("q_hat", lambda: signless_laplacian_spectral_radius(self.complement, self.tol).value)

    def sandwich(self) -> Optional[int]:
        return self._get("sandwich", lambda: matches_sandwich(self.g))

    def is_q_family(self, k: int) -> bool:
        return self._get(("isQ", k), lambda: is_isomorphic(self.g, make_Q(self.g.a, k), True) is not None)


def _best(verdicts: Iterable[Verdict], cid: ConditionId, fallback: str) -> Verdict:
    best = None
    for v in verdicts:
        if best is None or v.rank > best.rank:
            best = v
    return best if best is not None else _not_applicable(cid, fallback)


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def check_spectral(g: BipartiteGraph, tol: float = DEFAULT_TOL, band: float = DEFAULT_BAND,
                   _spectra: Optional[_Spectra] = None) -> list[Verdict]:
    """Four spectral conditions, each scanned over ``k in [2, delta]``:

    1. ``n >= k(k+1)`` and ``rho(G) >= rho(Q_n^k)``;
    2. ``n >= k(k+1)`` and ``q(G) >= q(Q_n^k)``;
    3. ``n >= 2k-1`` and ``rho(G^) <= sqrt((k-1)(n-k))``, unless ``G`` is in
       the ``S/R`` sandwich;
    4. ``n >= 2k-1`` and ``q(G^) <= n-1``, with the same exception.
    """
    n = require_balanced(g)
    ids = (ConditionId.SPECTRAL_RHO, ConditionId.SPECTRAL_Q,
           ConditionId.SPECTRAL_RHO_COMPLEMENT, ConditionId.SPECTRAL_Q_COMPLEMENT)
    delta = degree_sequence(g).min_degree
    if delta < 2:
        return [_not_applicable(cid, f"minimum degree {delta} < 2") for cid in ids]
    sp = _spectra or _Spectra(g, tol)
    per_id: dict[ConditionId, list[Verdict]] = {cid: [] for cid in ids}
    try:
        for k in range(2, delta + 1):
            if n >= k * (k + 1):
                rq, qq = q_family_radii(n, k, tol)
                for cid, value, ref, name in ((ids[0], sp.rho, rq, "rho"), (ids[1], sp.q, qq, "q")):
                    v = value()
                    ok, conf = _decide(v, ref, band, ">=", lambda k=k: 0 if sp.is_q_family(k) else None)
                    per_id[cid].append(_verdict(
                        cid, True, ok,
                        f"k={k}: {name}(G)={_fmt(v)} {'>=' if ok else '<'} {name}(Q_{n}^{k})={_fmt(ref)}",
                        conf, k=k, value=v, threshold=ref,
                    ))
            if n >= 2 * k - 1:
                m_rho = (k - 1) * (n - k)
                checks = (
                    (ids[2], sp.rho_hat, math.sqrt(m_rho), "rho",
                     lambda m=m_rho: compare_top_eigenvalue(gram_matrix(sp.complement), m)),
                    (ids[3], sp.q_hat, float(n - 1), "q",
                     lambda: compare_top_eigenvalue(signless_laplacian(sp.complement), n - 1)),
                )
                for cid, value, ref, name, exact in checks:
                    v = value()
                    ok, conf = _decide(v, ref, band, "<=", exact)
                    detail = f"k={k}: {name}(G^)={_fmt(v)} {'<=' if ok else '>'} {_fmt(ref)}"
                    t = sp.sandwich() if ok else None
                    if t is not None:
                        ok = False
                        detail += f"; excluded: G is isomorphic to S_{n}^{t} or R_{n}^{t}"
                    per_id[cid].append(_verdict(cid, True, ok, detail, conf, k=k, value=v, threshold=ref, sandwich=t))
    except ConvergenceError as exc:
        return [Verdict(cid, True, False, False, f"eigen-solver failure: {exc}", Confidence.INCONCLUSIVE)
                for cid in ids]
    return [_best(per_id[cid], cid, f"no k in [2, {delta}] meets the size requirement for n={n}") for cid in ids]


def check_spectral_closed(g: BipartiteGraph, tol: float = DEFAULT_TOL, band: float = DEFAULT_BAND,
                          _spectra: Optional[_Spectra] = None) -> list[Verdict]:
    """For ``k in [2, delta]`` with ``n > k(k+1)``: ``rho(G) >= sqrt(n(n-k+1))``
    and ``q(G) >= 2n-k+1``."""
    n = require_balanced(g)
    ids = (ConditionId.CLOSED_RHO, ConditionId.CLOSED_Q)
    delta = degree_sequence(g).min_degree
    if delta < 2:
        return [_not_applicable(cid, f"minimum degree {delta} < 2") for cid in ids]
    sp = _spectra or _Spectra(g, tol)
    per_id: dict[ConditionId, list[Verdict]] = {cid: [] for cid in ids}
    try:
        for k in range(2, delta + 1):
            if n <= k * (k + 1):
                continue
            m_rho = n * (n - k + 1)
            m_q = 2 * n - k + 1
            checks = (
                (ids[0], sp.rho, math.sqrt(m_rho), "rho", lambda m=m_rho: compare_top_eigenvalue(gram_matrix(g), m)),
                (ids[1], sp.q, float(m_q), "q", lambda m=m_q: compare_top_eigenvalue(signless_laplacian(g), m)),
            )
            for cid, value, ref, name, exact in checks:
                v = value()
                ok, conf = _decide(v, ref, band, ">=", exact)
                per_id[cid].append(_verdict(
                    cid, True, ok, f"k={k}: {name}(G)={_fmt(v)} {'>=' if ok else '<'} {_fmt(ref)}",
                    conf, k=k, value=v, threshold=ref,
                ))
    except ConvergenceError as exc:
        return [Verdict(cid, True, False, False, f"eigen-solver failure: {exc}", Confidence.INCONCLUSIVE)
                for cid in ids]
    return [_best(per_id[cid], cid, f"no k in [2, {delta}] with n={n} > k(k+1)") for cid in ids]


# --------------------------------------------------------------------------
# aggregate


ALL_CONDITIONS: tuple[ConditionId, ...] = tuple(ConditionId)
_SPECTRAL = ALL_CONDITIONS[7:11]
_CLOSED = ALL_CONDITIONS[11:13]
_SIMPLE: dict[ConditionId, Callable[[BipartiteGraph], Verdict]] = {
    ConditionId.PAIR_SUM: check_pair_sum,
    ConditionId.GAMMA: check_gamma,
    ConditionId.DEGREE_COUNT: check_degree_count,
    ConditionId.CLOSURE_COMPLETE: check_closure_complete,
    ConditionId.DEGREE_SEQUENCE: check_degree_sequence,
    ConditionId.EDGE_COUNT_T: check_edge_count_t,
    ConditionId.EDGE_COUNT_K: check_edge_count_k,
}


def parse_condition_ids(names: Optional[Iterable[str]]) -> tuple[ConditionId, ...]:
    if names is None:
        return ALL_CONDITIONS
    names = list(names)
    if not names or "all" in names:
        return ALL_CONDITIONS
    wanted = {ConditionId(name) for name in names}
    return tuple(cid for cid in ALL_CONDITIONS if cid in wanted)


def run_checkers(g: BipartiteGraph, ids: Iterable[ConditionId] = ALL_CONDITIONS,
                 tol: float = DEFAULT_TOL, band: float = DEFAULT_BAND) -> list[Verdict]:
    """Verdicts for the requested conditions, in canonical order."""
    require_balanced(g)
    wanted = set(ids)
    out: list[Verdict] = []
    sp = _Spectra(g, tol)
    for cid in ALL_CONDITIONS:
        if cid in wanted and cid in _SIMPLE:
            out.append(_SIMPLE[cid](g))
    if wanted & set(_SPECTRAL):
        out.extend(v for v in check_spectral(g, tol, band, sp) if v.condition_id in wanted)
    if wanted & set(_CLOSED):
        out.extend(v for v in check_spectral_closed(g, tol, band, sp) if v.condition_id in wanted)
    return out


@dataclass(frozen=True)
class ConditionReport:
    n: int
    e: int
    delta: int
    sigma: Optional[int]
    degree_sequence: tuple[int, ...]
    verdicts: tuple[Verdict, ...]
    oracle_verdict: Optional[bool] = None
    failing_pair: Optional[tuple[int, int]] = None

    @property
    def certified_by(self) -> list[ConditionId]:
        return [v.condition_id for v in self.verdicts if v.certified]

    @property
    def violation(self) -> bool:
        return self.oracle_verdict is False and bool(self.certified_by)


def full_report(g: BipartiteGraph, run_oracle: bool = False, ids: Iterable[ConditionId] = ALL_CONDITIONS,
                tol: float = DEFAULT_TOL, band: float = DEFAULT_BAND, raise_on_violation: bool = True) -> ConditionReport:
    """Run the requested checkers and, optionally, the oracle.

    A certificate on a graph the oracle rejects raises
    :class:`SoundnessViolation` unless ``raise_on_violation`` is false.
    """
    from .oracle import is_weakly_hc

    n = require_balanced(g)
    ds = degree_sequence(g)
    verdicts = tuple(run_checkers(g, ids, tol, band))
    oracle_verdict = failing = None
    if run_oracle:
        res = is_weakly_hc(g, witnesses=False)
        oracle_verdict, failing = res.weakly_hc, res.failing_pair
    report = ConditionReport(n, g.edge_count, ds.min_degree, sigma(g), ds.values, verdicts, oracle_verdict, failing)
    if raise_on_violation and report.violation:
        raise SoundnessViolation(report, g)
    return report
