"""Hot loops: Hamilton-path search, closure fixpoint, power iteration.

Every kernel here is written in the subset of Python that numba's nopython
mode accepts, so the same source runs compiled or interpreted (see
``_accel``). Graphs reach the kernels as ``int64`` bit rows: ``rows[i]`` has
bit ``j`` set when ``x_i y_j`` is an edge. The Hamilton kernels work on the
combined vertex numbering ``0..n-1 -> X``, ``n..2n-1 -> Y`` with one neighbour
mask per vertex, so ``2n`` must stay below 63.
"""
from __future__ import annotations

import math

import numpy as np

from ._accel import jit


@jit
def popcount(x):
    c = 0
    while x != 0:
        x &= x - 1
        c += 1
    return c


@jit
def vertex_masks(rows, n):
    """Neighbour mask of every vertex in the combined 2n numbering."""
    nbr = np.zeros(2 * n, dtype=np.int64)
    for i in range(n):
        r = rows[i]
        nbr[i] = r << n
        for j in range(n):
            if (r >> j) & 1:
                nbr[n + j] |= np.int64(1) << i
    return nbr


@jit
def rows_from_code(code, n, rows):
    rmask = (np.int64(1) << n) - 1
    for i in range(n):
        rows[i] = (code >> (i * n)) & rmask


@jit
def code_from_rows(rows, n):
    code = np.int64(0)
    for i in range(n):
        code |= rows[i] << (i * n)
    return code


@jit
def min_degree_rows(rows, n):
    best = n
    for i in range(n):
        d = popcount(rows[i])
        if d < best:
            best = d
    for j in range(n):
        d = 0
        for i in range(n):
            d += (rows[i] >> j) & 1
        if d < best:
            best = d
    return best


# --------------------------------------------------------------------------
# Hamilton paths: bitmask DP


@jit
def hamilton_reach(nbr, nv, start, reach):
    """Fill ``reach[mask]`` with the set of possible last vertices of a path
    that starts at ``start`` and visits exactly ``mask``.

    ``reach`` must hold ``1 << nv`` entries. Returns ``reach[full]``, the set
    of Hamilton-path endpoints reachable from ``start``.
    """
    size = np.int64(1) << nv
    for m in range(size):
        reach[m] = 0
    reach[np.int64(1) << start] = np.int64(1) << start
    for mask in range(size):
        ends = reach[mask]
        if ends == 0:
            continue
        for v in range(nv):
            if (ends >> v) & 1:
                nxt = nbr[v] & ~mask
                while nxt != 0:
                    low = nxt & -nxt
                    reach[mask | low] |= low
                    nxt ^= low
    return reach[size - 1]


@jit
def first_failing_pair(rows, n, reach):
    """Return ``x*n + y`` for the lexicographically first cross pair with no
    Hamilton path, or -1 when every pair has one."""
    if n == 1:
        return -1 if rows[0] & 1 else 0
    nbr = vertex_masks(rows, n)
    ymask = ((np.int64(1) << n) - 1) << n
    for x in range(n):
        ends = hamilton_reach(nbr, 2 * n, x, reach)
        missing = ymask & ~ends
        if missing != 0:
            for j in range(n):
                if (missing >> (n + j)) & 1:
                    return x * n + j
    return -1


@jit
def whc_codes(n, codes, out):
    """Weak Hamilton-connectedness of every graph in a batch of bit codes."""
    reach = np.zeros(np.int64(1) << (2 * n), dtype=np.int64)
    rows = np.zeros(n, dtype=np.int64)
    for c in range(codes.shape[0]):
        rows_from_code(codes[c], n, rows)
        # a vertex of degree <= 1 can never be both an endpoint partner and
        # an interior vertex once n >= 2
        if n >= 2 and min_degree_rows(rows, n) < 2:
            out[c] = False
        else:
            out[c] = first_failing_pair(rows, n, reach) < 0


# --------------------------------------------------------------------------
# Hamilton paths: depth-first search


@jit
def _can_finish(nbr, nv, visited, head, t):
    unvisited = ((np.int64(1) << nv) - 1) & ~visited
    if unvisited == 0:
        return True
    if nbr[head] & unvisited == 0:
        return False
    open_set = unvisited | (np.int64(1) << head)
    for u in range(nv):
        if (unvisited >> u) & 1:
            need = 1 if u == t else 2
            if popcount(nbr[u] & open_set) < need:
                return False
    # the rest of the path runs from head through every unvisited vertex and
    # only then reaches t, so all of them must be reachable while avoiding t
    inner = unvisited & ~(np.int64(1) << t)
    seen = np.int64(1) << head
    frontier = seen
    while frontier != 0:
        grow = np.int64(0)
        f = frontier
        while f != 0:
            low = f & -f
            v = popcount(low - 1)
            grow |= nbr[v]
            f ^= low
        grow &= inner & ~seen
        seen |= grow
        frontier = grow
    return (seen & inner) == inner


@jit
def hamilton_path_dfs(nbr, nv, s, t, order, path):
    """Search for a Hamilton path from ``s`` to ``t``.

    Candidates are tried in ``order`` (ascending degree, so tight vertices
    fail first). On success ``path`` holds the vertex sequence.
    """
    if nv == 1:
        path[0] = s
        return s == t
    cursor = np.zeros(nv, dtype=np.int64)
    path[0] = s
    visited = np.int64(1) << s
    depth = 0
    while depth >= 0:
        if depth == nv - 1:
            return True
        v = path[depth]
        advanced = False
        while cursor[depth] < nv:
            w = order[cursor[depth]]
            cursor[depth] += 1
            if not ((nbr[v] >> w) & 1) or ((visited >> w) & 1):
                continue
            if w == t and depth + 1 != nv - 1:
                continue
            nvis = visited | (np.int64(1) << w)
            if not _can_finish(nbr, nv, nvis, w, t):
                continue
            depth += 1
            path[depth] = w
            visited = nvis
            cursor[depth] = 0
            advanced = True
            break
        if not advanced:
            visited ^= np.int64(1) << v
            depth -= 1
    return False


# --------------------------------------------------------------------------
# B_{n+2} closure


@jit
def closure_fixpoint(rows, n, pair_order, added):
    """Close ``rows`` in place under the degree-sum-``n+2`` rule.

    Pairs are scanned in ``pair_order`` (codes ``i*n + j``), repeatedly, until
    a full pass adds nothing. Added pair codes are written to ``added`` in
    order. Returns ``(number added, passes that added something)``.
    """
    degx = np.zeros(n, dtype=np.int64)
    degy = np.zeros(n, dtype=np.int64)
    for i in range(n):
        for j in range(n):
            if (rows[i] >> j) & 1:
                degx[i] += 1
                degy[j] += 1
    threshold = n + 2
    count = 0
    rounds = 0
    changed = True
    while changed:
        changed = False
        for k in range(pair_order.shape[0]):
            p = pair_order[k]
            i = p // n
            j = p % n
            if ((rows[i] >> j) & 1) == 0 and degx[i] + degy[j] >= threshold:
                rows[i] |= np.int64(1) << j
                degx[i] += 1
                degy[j] += 1
                added[count] = p
                count += 1
                changed = True
        if changed:
            rounds += 1
    return count, rounds


@jit
def closure_codes(n, codes, out):
    rows = np.zeros(n, dtype=np.int64)
    order = np.arange(n * n)
    added = np.zeros(n * n, dtype=np.int64)
    for c in range(codes.shape[0]):
        rows_from_code(codes[c], n, rows)
        closure_fixpoint(rows, n, order, added)
        out[c] = code_from_rows(rows, n)


# --------------------------------------------------------------------------
# power iteration


@jit
def power_iterate(m, x, tol, max_iter, plateau):
    """Dominant eigenvalue of a symmetric nonnegative PSD matrix.

    ``x`` is the (positive) start vector; it is overwritten. Returns
    ``(eigenvalue, residual, iterations, status)`` where the residual is
    ``||Mx - lambda x||`` for the unit iterate and status is 0 = converged,
    1 = iteration cap, 2 = residual plateau.
    """
    size = x.shape[0]
    nrm = 0.0
    for i in range(size):
        nrm += x[i] * x[i]
    nrm = math.sqrt(nrm)
    for i in range(size):
        x[i] /= nrm
    y = np.zeros(size)
    lam = 0.0
    res = math.inf
    best = math.inf
    stalled = 0
    for it in range(1, max_iter + 1):
        for i in range(size):
            acc = 0.0
            for j in range(size):
                acc += m[i, j] * x[j]
            y[i] = acc
        lam = 0.0
        for i in range(size):
            lam += x[i] * y[i]
        res = 0.0
        ny = 0.0
        for i in range(size):
            d = y[i] - lam * x[i]
            res += d * d
            ny += y[i] * y[i]
        res = math.sqrt(res)
        ny = math.sqrt(ny)
        if res <= tol:
            return lam, res, it, 0
        if ny == 0.0:
            return 0.0, 0.0, it, 0
        for i in range(size):
            x[i] = y[i] / ny
        if res < 0.999 * best:
            best = res
            stalled = 0
        else:
            stalled += 1
            if stalled >= plateau:
                return lam, res, it, 2
    return lam, res, max_iter, 1
