#!/usr/bin/env python3
"""Time the hot kernels under the numba and pure-Python backends.

Each backend runs in its own interpreter (``BIPWHC_BACKEND`` is read at
import time), and the kernel outputs are hashed so the two runs can be
checked for agreement.

    python3 benchmarks/bench_backends.py [--repeat R] [--quick]
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import subprocess
import sys
import time

WORKER = "--worker"


def _cases(quick: bool):
    import numpy as np

    from bipwhc import _kernels
    from bipwhc.families import make_Q
    from bipwhc.spectral import signless_laplacian

    rng = np.random.default_rng(7)
    n_codes = 200 if quick else 2000
    codes4 = rng.integers(0, 1 << 16, size=n_codes, dtype=np.int64)
    q = make_Q(6, 2)
    rows6 = q.row_array()
    nbr6 = _kernels.vertex_masks(rows6, 6)
    reach = np.zeros(1 << 12, dtype=np.int64)
    m = signless_laplacian(make_Q(8, 3))

    def oracle_batch():
        out = np.zeros(len(codes4), dtype=np.bool_)
        _kernels.whc_codes(4, codes4, out)
        return out

    def reach_table():
        for start in range(6):
            _kernels.hamilton_reach(nbr6, 12, start, reach)
        return reach.copy()

    def closure_batch():
        out = np.zeros(len(codes4), dtype=np.int64)
        _kernels.closure_codes(4, codes4, out)
        return out

    def power():
        x = np.ones(m.shape[0]) + 0.5 * np.linspace(0, 1, m.shape[0])
        lam, res, it, status = _kernels.power_iterate(m, x, 1e-10, 100_000, 5_000)
        return np.array([round(lam, 8), status])

    return {"whc_codes n=4": oracle_batch, "hamilton_reach Q_6^2": reach_table,
            "closure_codes n=4": closure_batch, "power_iterate Q_8^3": power}


def _worker(repeat: int, quick: bool) -> None:
    from bipwhc._accel import BACKEND

    results = {}
    for name, fn in _cases(quick).items():
        t0 = time.perf_counter()
        out = fn()  # first call includes numba compilation / cache load
        first = time.perf_counter() - t0
        best = float("inf")
        for _ in range(repeat):
            t0 = time.perf_counter()
            fn()
            best = min(best, time.perf_counter() - t0)
        results[name] = {"first": first, "best": best, "digest": hashlib.sha256(out.tobytes()).hexdigest()[:16]}
    print(json.dumps({"backend": BACKEND, "results": results}))


def _run(backend: str, repeat: int, quick: bool) -> dict:
    env = dict(os.environ, BIPWHC_BACKEND=backend)
    cmd = [sys.executable, __file__, WORKER, "--repeat", str(repeat)] + (["--quick"] if quick else [])
    out = subprocess.run(cmd, env=env, check=True, capture_output=True, text=True).stdout
    return json.loads(out.strip().splitlines()[-1])


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="smaller inputs")
    ap.add_argument(WORKER, action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args()
    if args.worker:
        _worker(args.repeat, args.quick)
        return 0

    fast = _run("numba", args.repeat, args.quick)
    slow = _run("python", args.repeat, args.quick)
    print(f"{'kernel':<22}{'numba (s)':>12}{'python (s)':>12}{'speedup':>10}  outputs")
    agree = True
    for name, f in fast["results"].items():
        s = slow["results"][name]
        same = f["digest"] == s["digest"]
        agree &= same
        print(f"{name:<22}{f['best']:>12.5f}{s['best']:>12.5f}{s['best'] / max(f['best'], 1e-9):>9.1f}x  "
              f"{'match' if same else 'DIFFER'}")
    return 0 if agree else 1


if __name__ == "__main__":
    sys.exit(main())
