"""Compiled vs pure-Python kernels, plus one end-to-end run on each backend.

    python benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import os
import subprocess
import sys
import timeit

from iwatchdog import _pykernels
from iwatchdog.rng import rng

try:
    from iwatchdog import _ckernels
except ImportError:
    _ckernels = None

END_TO_END = (
    "import time; from iwatchdog import simengine, kernels; "
    "from iwatchdog.scenarios import radius_config; t = time.perf_counter(); "
    "simengine.run(radius_config(-78.0, 1)); print(kernels.BACKEND, time.perf_counter() - t)"
)


def cases(mod):
    r = rng(1, 1)
    xs = [r.uniform(0, 100) for _ in range(200)]
    ys = [r.uniform(0, 100) for _ in range(200)]
    offs = [0.0] * 200
    a = bytes(range(256)) * 4
    b = a[:-1] + b"\x00"
    key = mod.stream_key(1, 2)
    return {
        "uniform_block(10k)": lambda: mod.uniform_block(key, 0, 10_000),
        "uniform x 10k": lambda: [mod.uniform(key, i) for i in range(10_000)],
        "first_mismatch(1 KiB)": lambda: mod.first_mismatch(a, b),
        "audibility(200 nodes)": lambda: mod.audibility(xs, ys, 40.0, 2.0, -78.0, offs),
    }


def best(fn, repeat):
    number = 1
    while timeit.timeit(fn, number=number) < 0.05:
        number *= 2
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _ckernels is None:
        print("compiled extension not built; only the pure backend is available")
    py_cases = cases(_pykernels)
    c_cases = cases(_ckernels) if _ckernels else {}
    print(f"{'kernel':<24}{'python':>12}{'cython':>12}{'speedup':>10}")
    for name, fn in py_cases.items():
        tp = best(fn, args.repeat)
        if name in c_cases:
            tc = best(c_cases[name], args.repeat)
            print(f"{name:<24}{tp * 1e3:>10.3f}ms{tc * 1e3:>10.3f}ms{tp / tc:>9.1f}x")
        else:
            print(f"{name:<24}{tp * 1e3:>10.3f}ms")
    print("\nend-to-end: 100 nodes, 30 s, -78 dB")
    for pure in ("0", "1"):
        env = {**os.environ, "IWATCHDOG_PURE": pure}
        out = subprocess.run([sys.executable, "-c", END_TO_END], env=env,
                             capture_output=True, text=True, check=True).stdout.split()
        print(f"  {out[0]:<8}{float(out[1]):.3f} s")


if __name__ == "__main__":
    main()
