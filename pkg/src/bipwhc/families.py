"""Constructors for the extremal families K, Q, R and S.

Index placement is fixed so that every constructor is reproducible:

* ``make_Q(n, t)`` deletes ``{x_0..x_{t-2}} x {y_0..y_{n-t-1}}`` from ``K_{n,n}``.
* ``make_R(n, t)`` is ``K_{t,t}`` on ``{x_0..x_{t-1}} x {y_0..y_{t-1}}`` glued to
  ``K_{n-t+1,n-t+1}`` on ``{x_{t-1}..x_{n-1}} x {y_{t-1}..y_{n-1}}``; the two
  blocks share the cut pair ``x_{t-1}, y_{t-1}``.
* ``make_S(n, t)`` is ``make_R(n, t)`` without the cut edge ``x_{t-1} y_{t-1}``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .graph import BipartiteGraph, GraphError, quasi_complement

FAMILIES = ("K", "Q", "R", "S")


class FamilyParameterError(GraphError):
    pass


def q_t_max(n: int) -> int:
    """Largest admissible ``t`` for ``Q_n^t``: ``t <= (n+1)/2`` as an integer."""
    return (n + 1) // 2


@dataclass(frozen=True)
class FamilySpec:
    """One member of a family, optionally its quasi-complement.

    For ``K`` the parts are ``(n, m)``; the other families use ``(n, t)``.
    """

    family: str
    n: int
    t: Optional[int] = None
    m: Optional[int] = None
    complement: bool = False

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise FamilyParameterError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if self.family == "K":
            if self.m is None:
                object.__setattr__(self, "m", self.n)
            if self.n < 1 or self.m < 1:
                raise FamilyParameterError(f"K_{{m,n}} needs positive part sizes, got ({self.n}, {self.m})")
        else:
            if self.t is None:
                raise FamilyParameterError(f"family {self.family} needs a block parameter t")
            _check_t(self.family, self.n, self.t)

    @classmethod
    def k_form(cls, n: int, t: int) -> "FamilySpec":
        """``K_{n, n-t+1}``, the complete graph the Q-family is compared with."""
        return cls("K", n, t=t, m=n - t + 1)

    def build(self) -> BipartiteGraph:
        if self.family == "K":
            g = make_complete(self.n, self.m)
        else:
            g = {"Q": make_Q, "R": make_R, "S": make_S}[self.family](self.n, self.t)
        return quasi_complement(g) if self.complement else g

    def label(self) -> str:
        base = f"K_{{{self.n},{self.m}}}" if self.family == "K" else f"{self.family}_{self.n}^{self.t}"
        return f"complement({base})" if self.complement else base


def _check_t(family: str, n: int, t: int) -> None:
    if family == "Q":
        if not 2 <= t <= q_t_max(n):
            raise FamilyParameterError(
                f"Q_n^t requires 2 <= t <= (n+1)/2, i.e. t in [2, {q_t_max(n)}] for n={n}; got t={t}"
            )
    elif not 2 <= t <= n - 1:
        raise FamilyParameterError(f"{family}_n^t requires 2 <= t <= n-1 = {n - 1}; got t={t}")


def make_complete(m: int, n: int) -> BipartiteGraph:
    if m < 1 or n < 1:
        raise FamilyParameterError(f"K_{{m,n}} needs positive part sizes, got ({m}, {n})")
    return BipartiteGraph(m, n, ((1 << n) - 1,) * m)


def make_Q(n: int, t: int) -> BipartiteGraph:
    _check_t("Q", n, t)
    full = (1 << n) - 1
    deleted = (1 << (n - t)) - 1
    rows = tuple(full & ~deleted if i < t - 1 else full for i in range(n))
    return BipartiteGraph(n, n, rows)


def make_R(n: int, t: int) -> BipartiteGraph:
    _check_t("R", n, t)
    low = (1 << t) - 1
    high = ((1 << n) - 1) & ~((1 << (t - 1)) - 1)
    rows = []
    for i in range(n):
        r = 0
        if i <= t - 1:
            r |= low
        if i >= t - 1:
            r |= high
        rows.append(r)
    return BipartiteGraph(n, n, tuple(rows))


def make_S(n: int, t: int) -> BipartiteGraph:
    _check_t("S", n, t)
    return make_R(n, t).remove_edge(t - 1, t - 1)


def q_edge_count(n: int, t: int) -> int:
    """Closed-form ``e(Q_n^t) = n(n-t+1) + t(t-1)``."""
    return n * (n - t + 1) + t * (t - 1)


def valid_q_params(n: int) -> list[int]:
    return list(range(2, q_t_max(n) + 1))


def valid_rs_params(n: int) -> list[int]:
    return list(range(2, n))
