"""Spectral radius of the adjacency and signless Laplacian matrices.

Both radii come from power iteration on a nonnegative PSD matrix:

* ``rho(G)`` is the largest singular value of the biadjacency block ``B``
  (the adjacency spectrum of a bipartite graph is ``+-`` those values), so we
  iterate on the smaller Gram matrix ``B B^T`` or ``B^T B`` and take a root.
* ``q(G)`` iterates on ``D + A`` over all ``a + b`` vertices.

The start vector is all-ones plus a fixed pseudo-random offset, which keeps
it strictly positive. When the Rayleigh residual plateaus or the iteration
cap is hit, each connected component is solved on its own and the largest
value wins; a component that still stalls is finished with shifted inverse
iteration above its Collatz-Wielandt upper bound.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from . import _kernels
from .families import FamilySpec
from .graph import BipartiteGraph, _bits

DEFAULT_TOL = 1e-10
MAX_ITER = 100_000
PLATEAU = 5_000
_START_SEED = 20_160_505


class ConvergenceError(RuntimeError):
    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (last residual {residual:.3e})")
        self.residual = residual


@dataclass(frozen=True)
class EigenEstimate:
    """An eigenvalue with its convergence certificate.

    ``residual`` is ``||M v - lambda v||`` for the unit iterate ``v`` of the
    matrix actually iterated (the Gram matrix for ``rho``).
    """

    value: float
    residual: float
    iterations: int
    tolerance: float
    method: str = "power"

    def __iter__(self):
        # lets callers unpack ``value, certificate = ...``
        yield self.value
        yield self


@dataclass(frozen=True)
class SpectralSummary:
    rho: float
    q: float
    iterations: int
    residual: float
    tolerance: float


def _start_vector(size: int) -> np.ndarray:
    rng = np.random.default_rng(_START_SEED)
    return 1.0 + 0.5 * rng.random(size)


def _collatz_upper(m: np.ndarray, x: np.ndarray) -> float:
    return float(np.max((m @ x) / x))


def _inverse_refine(m: np.ndarray, tol: float, max_iter: int = 200) -> tuple[float, float, int]:
    x = _start_vector(m.shape[0])
    # a few power steps to get a positive vector close to the Perron vector
    for _ in range(50):
        x = m @ x + 1e-300
        x /= np.linalg.norm(x)
    shift = _collatz_upper(m, x) + max(tol, 1e-12)
    eye = np.eye(m.shape[0])
    lam, res = 0.0, math.inf
    for it in range(1, max_iter + 1):
        y = np.linalg.solve(shift * eye - m, x)
        x = y / np.linalg.norm(y)
        mx = m @ x
        lam = float(x @ mx)
        res = float(np.linalg.norm(mx - lam * x))
        if res <= tol:
            return lam, res, it
    return lam, res, max_iter


def _dominant(m: np.ndarray, tol: float) -> tuple[float, float, int, int]:
    lam, res, it, status = _kernels.power_iterate(m, _start_vector(m.shape[0]), tol, MAX_ITER, PLATEAU)
    return float(lam), float(res), int(it), int(status)


def _dominant_by_blocks(blocks: list[np.ndarray], tol: float, what: str) -> EigenEstimate:
    best, best_res, total = 0.0, 0.0, 0
    method = "power+components"
    for m in blocks:
        if m.size == 0 or not m.any():
            continue
        lam, res, it, status = _dominant(m, tol)
        total += it
        if status != 0:
            lam, res, extra = _inverse_refine(m, tol)
            total += extra
            method = "power+components+inverse"
            if res > tol:
                raise ConvergenceError(f"{what}: component iteration did not converge", res)
        if lam > best:
            best, best_res = lam, res
    return EigenEstimate(best, best_res, total, tol, method)


def _solve(m: np.ndarray, blocks_fn, tol: float, what: str) -> EigenEstimate:
    if tol <= 0:
        raise ValueError("tol must be positive")
    if m.size == 0 or not m.any():
        return EigenEstimate(0.0, 0.0, 0, tol)
    lam, res, it, status = _dominant(m, tol)
    if status == 0:
        return EigenEstimate(lam, res, it, tol)
    est = _dominant_by_blocks(blocks_fn(), tol, what)
    return EigenEstimate(est.value, est.residual, it + est.iterations, tol, est.method)


def gram_matrix(g: BipartiteGraph) -> np.ndarray:
    """``B B^T`` or ``B^T B``, whichever is smaller."""
    b = g.matrix.astype(float)
    return b @ b.T if g.a <= g.b else b.T @ b


def adjacency_matrix(g: BipartiteGraph) -> np.ndarray:
    a, b = g.a, g.b
    m = np.zeros((a + b, a + b))
    m[:a, a:] = g.matrix
    m[a:, :a] = g.matrix.T
    return m


def signless_laplacian(g: BipartiteGraph) -> np.ndarray:
    m = adjacency_matrix(g)
    m[np.diag_indices_from(m)] = m.sum(axis=1)
    return m


def _component_gram_blocks(g: BipartiteGraph) -> list[np.ndarray]:
    b = g.matrix.astype(float)
    out = []
    for xs, ys in g.components():
        xi, yi = list(_bits(xs)), list(_bits(ys))
        if not xi or not yi:
            continue
        sub = b[np.ix_(xi, yi)]
        out.append(sub @ sub.T if len(xi) <= len(yi) else sub.T @ sub)
    return out


def _component_q_blocks(g: BipartiteGraph) -> list[np.ndarray]:
    full = signless_laplacian(g)
    out = []
    for xs, ys in g.components():
        idx = list(_bits(xs)) + [g.a + j for j in _bits(ys)]
        out.append(full[np.ix_(idx, idx)])
    return out


def adjacency_spectral_radius(g: BipartiteGraph, tol: float = DEFAULT_TOL) -> EigenEstimate:
    """``rho(G)``; 0 for an edgeless graph.

    The tolerance applies to the Gram eigenvalue ``rho^2``; since that
    eigenvalue is at least 1 whenever an edge exists, ``rho`` itself is
    accurate to ``tol / 2``.
    """
    est = _solve(gram_matrix(g), lambda: _component_gram_blocks(g), tol, "rho")
    return EigenEstimate(math.sqrt(max(est.value, 0.0)), est.residual, est.iterations, tol, est.method)


def signless_laplacian_spectral_radius(g: BipartiteGraph, tol: float = DEFAULT_TOL) -> EigenEstimate:
    """``q(G)``, the largest eigenvalue of ``D + A``; 0 for an edgeless graph."""
    return _solve(signless_laplacian(g), lambda: _component_q_blocks(g), tol, "q")


def spectral_summary(g: BipartiteGraph, tol: float = DEFAULT_TOL) -> SpectralSummary:
    rho = adjacency_spectral_radius(g, tol)
    q = signless_laplacian_spectral_radius(g, tol)
    return SpectralSummary(rho.value, q.value, rho.iterations + q.iterations, max(rho.residual, q.residual), tol)


# --------------------------------------------------------------------------
# dense oracle


def jacobi_eigenvalues(m: np.ndarray, eps: float = 1e-14, max_sweeps: int = 100) -> np.ndarray:
    """All eigenvalues of a small symmetric matrix by cyclic Jacobi rotations.

    Kept independent of LAPACK so it can cross-check the power iteration.
    """
    a = np.array(m, dtype=float)
    size = a.shape[0]
    if size == 0:
        return np.zeros(0)
    # relative to the Frobenius norm, which rotations preserve
    scale = max(math.sqrt(float(np.sum(a * a))), 1.0)
    for _ in range(max_sweeps):
        off = math.sqrt(float(np.sum(np.tril(a, -1) ** 2)))
        if off <= eps * scale:
            break
        for p in range(size - 1):
            for r in range(p + 1, size):
                apr = a[p, r]
                if abs(apr) <= 1e-3 * eps * scale:
                    a[p, r] = a[r, p] = 0.0
                    continue
                theta = (a[r, r] - a[p, p]) / (2.0 * apr)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                ap = a[:, p].copy()
                ar = a[:, r].copy()
                a[:, p] = c * ap - s * ar
                a[:, r] = s * ap + c * ar
                rp = a[p, :].copy()
                rr = a[r, :].copy()
                a[p, :] = c * rp - s * rr
                a[r, :] = s * rp + c * rr
    else:
        raise ConvergenceError("Jacobi sweeps did not converge", off)
    return np.sort(np.diag(a))


def dense_spectral_radii(g: BipartiteGraph) -> tuple[float, float]:
    """``(rho, q)`` from the Jacobi oracle on the full matrices."""
    rho = float(jacobi_eigenvalues(adjacency_matrix(g))[-1]) if g.a + g.b else 0.0
    q = float(jacobi_eigenvalues(signless_laplacian(g))[-1]) if g.a + g.b else 0.0
    return max(rho, 0.0), max(q, 0.0)


# --------------------------------------------------------------------------
# closed forms and bounds


@dataclass(frozen=True)
class ClosedForm:
    """Reference values for a family member.

    ``kind`` is ``"exact"`` or ``"strict_lower_bound"`` (the true values
    are strictly larger).
    """

    rho: float
    q: float
    kind: str


def closed_form_reference(spec: FamilySpec) -> Optional[ClosedForm]:
    """Known spectral values for ``spec``, or ``None`` when there are none.

    * ``K_{n,m}``: exactly ``(sqrt(nm), n + m)``.
    * complement of ``Q``, ``R`` or ``S`` with block parameter ``t``:
      exactly ``(sqrt((t-1)(n-t)), n - 1)``.
    * ``Q_n^t`` itself: strict lower bounds ``(sqrt(n(n-t+1)), 2n - t + 1)``.
    """
    n, t = spec.n, spec.t
    if spec.family == "K" and not spec.complement:
        return ClosedForm(math.sqrt(n * spec.m), float(n + spec.m), "exact")
    if spec.family in ("Q", "R", "S") and spec.complement:
        return ClosedForm(math.sqrt((t - 1) * (n - t)), float(n - 1), "exact")
    if spec.family == "Q":
        return ClosedForm(math.sqrt(n * (n - t + 1)), float(2 * n - t + 1), "strict_lower_bound")
    return None


@dataclass(frozen=True)
class BoundReport:
    rho: float
    q: float
    rho_upper: float  # sqrt(e)
    q_upper: Optional[float]  # e/n + n, balanced graphs only
    rho_lower: Optional[float]  # min over edges of sqrt(d(u) d(v))
    q_lower: Optional[float]  # min over edges of d(u) + d(v)
    rho_upper_ok: bool
    q_upper_ok: Optional[bool]
    rho_lower_ok: Optional[bool]
    q_lower_ok: Optional[bool]
    tolerance: float

    @property
    def all_hold(self) -> bool:
        return all(v is not False for v in (self.rho_upper_ok, self.q_upper_ok, self.rho_lower_ok, self.q_lower_ok))


def spectral_bounds_report(g: BipartiteGraph, tol: float = DEFAULT_TOL) -> BoundReport:
    rho = adjacency_spectral_radius(g, tol).value
    q = signless_laplacian_spectral_radius(g, tol).value
    e = g.edge_count
    slack = 10 * tol
    rho_upper = math.sqrt(e)
    q_upper = e / g.a + g.a if g.balanced and g.a else None
    if e:
        dx, dy = g.x_degrees, g.y_degrees
        rho_lower = min(math.sqrt(dx[i] * dy[j]) for i, j in g.edges())
        q_lower = float(min(dx[i] + dy[j] for i, j in g.edges()))
    else:
        rho_lower = q_lower = None
    return BoundReport(
        rho=rho,
        q=q,
        rho_upper=rho_upper,
        q_upper=q_upper,
        rho_lower=rho_lower,
        q_lower=q_lower,
        rho_upper_ok=rho <= rho_upper + slack,
        q_upper_ok=None if q_upper is None else q <= q_upper + slack,
        rho_lower_ok=None if rho_lower is None else rho >= rho_lower - slack,
        q_lower_ok=None if q_lower is None else q >= q_lower - slack,
        tolerance=tol,
    )


# --------------------------------------------------------------------------
# exact comparisons for integer matrices


def _definiteness(m: list[list[Fraction]], strict: bool) -> bool:
    """Symmetric elimination in exact arithmetic: PD when ``strict``, else PSD."""
    a = [row[:] for row in m]
    size = len(a)
    for k in range(size):
        pivot = a[k][k]
        if pivot < 0 or (strict and pivot == 0):
            return False
        if pivot == 0:
            # a PSD matrix with a zero diagonal entry has that whole row zero
            if any(a[k][j] != 0 for j in range(k + 1, size)):
                return False
            continue
        for i in range(k + 1, size):
            f = a[i][k] / pivot
            if f == 0:
                continue
            for j in range(k + 1, size):
                a[i][j] -= f * a[k][j]
    return True


def compare_top_eigenvalue(m: np.ndarray, c: int) -> int:
    """Exact sign of ``lambda_max(m) - c`` for a symmetric integer matrix."""
    size = m.shape[0]
    shifted = [[Fraction(int(c) * (i == j) - int(round(m[i, j]))) for j in range(size)] for i in range(size)]
    if _definiteness(shifted, strict=True):
        return -1
    if _definiteness(shifted, strict=False):
        return 0
    return 1
