"""Time the numba kernels against their numpy counterparts.

    python3 benchmarks/bench_kernels.py --grid 256 --repeat 5

Prints one CSV row per (kernel, backend) with the best wall time and the
largest deviation from the numpy result.
"""
import argparse
import sys
import time

import numpy as np

from kfib import _kernels
from kfib.shelllike import caratheodory_grid


def _best_time(fn, repeat):
    best = np.inf
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--grid", type=int, default=256, help="Caratheodory samples per side")
    ap.add_argument("--mus", type=int, default=33)
    ap.add_argument("--circle", type=int, default=1 << 20, help="angles for the real-part probe")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)

    _, c2, _ = caratheodory_grid(args.grid)
    mus = np.linspace(-3.0, 5.0, args.mus)
    fek = np.ones_like(mus)
    dom_args = (c2, c2.copy(), 0.05 + 0.01j, 0.15 - 0.02j, 1.0, 1.0, mus, fek)
    probe_args = (-0.6180339887498949, 0.3819660112501051, 0.95, args.circle)

    cases = {
        "domination": (lambda: _kernels.domination_numpy(*dom_args), None),
        "min_real_part": (lambda: _kernels.min_real_part_numpy(*probe_args), None),
    }
    if _kernels.HAS_NUMBA:
        _kernels.domination(*dom_args)  # compile outside the timed region
        _kernels.min_real_part(*probe_args)
        cases["domination"] = (cases["domination"][0], lambda: _kernels.domination(*dom_args))
        cases["min_real_part"] = (cases["min_real_part"][0], lambda: _kernels.min_real_part(*probe_args))

    print("kernel,backend,seconds,max_abs_diff")
    for name, (np_fn, jit_fn) in cases.items():
        t_np, ref = _best_time(np_fn, args.repeat)
        print(f"{name},numpy,{t_np:.6f},0")
        if jit_fn is None:
            print(f"{name},numba,,unavailable", file=sys.stderr)
            continue
        t_jit, got = _best_time(jit_fn, args.repeat)
        diff = float(np.max(np.abs(np.asarray(got[0]) - np.asarray(ref[0]))))
        print(f"{name},numba,{t_jit:.6f},{diff:.3g}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
