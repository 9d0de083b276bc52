"""Time the numba and numpy backends of the hot kernels against each other.

    python benchmarks/bench_scan.py [--repeat N] [--quick]

Each case is run once untimed (so numba compilation is excluded), then timed
``--repeat`` times; the best wall time is reported. Results from both backends
are compared and the script exits 1 if they ever differ.
"""
from __future__ import annotations

import argparse
import sys
import time

from k3corr import _kernels
from k3corr.pell import a_range
from k3corr.quadorder import fundamental_unit


def best_of(fn, repeat):
    fn()
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def scan_case(d, sign):
    unit = fundamental_unit(d)
    c = (8 * sign) % d
    res = _kernels.sqrt_residues(d, c)
    a_min, a_max = a_range(sign, unit)
    return f"block_scan d={d} sign={sign:+d} a<={a_max}", (
        lambda b: _kernels.block_scan(d, 8 * sign, res, a_min, a_max, backend=b))


def residue_case(d):
    return f"sqrt_residues d={d}", (lambda b: _kernels.sqrt_residues(d, 8 % d, backend=b))


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="small cases only")
    args = ap.parse_args(argv)
    if not _kernels.HAVE_NUMBA:
        print("numba is not importable; nothing to compare", file=sys.stderr)
        return 1

    cases = [scan_case(601, 1), scan_case(673, -1), residue_case(10_000_019)]
    if not args.quick:
        cases += [scan_case(721, 1), scan_case(769, 1), residue_case(400_000_009)]

    print(f"{'case':48s} {'numba s':>10s} {'numpy s':>10s} {'speedup':>8s}")
    ok = True
    for name, fn in cases:
        t_nb, out_nb = best_of(lambda: fn("numba"), args.repeat)
        t_np, out_np = best_of(lambda: fn("numpy"), args.repeat)
        ok &= out_nb == out_np
        print(f"{name:48s} {t_nb:10.4f} {t_np:10.4f} {t_np / t_nb:8.1f}x"
              + ("" if out_nb == out_np else "  MISMATCH"))
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
