#!/usr/bin/env python3
"""Benchmark the compiled series kernel against the pure-Python fallback.

Runs each workload twice in fresh subprocesses, once per backend (selection
happens at import time via LBLDG_PURE), and prints a timing table. Workloads
stress the two kernel entry points through realistic call sites: long series
products, matrix products with entry cancellation, and a seeded suite run.
"""

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json
import time
from fractions import Fraction

from lbldg.valfield import _backend, series as fs
from lbldg.harness.axioms import check_axiom
from lbldg.harness.config import TrialConfig
from lbldg.harness.generators import gen_group_elem, trial_rng

scale = {scale}

def timed(fn):
    start = time.perf_counter()
    fn()
    return time.perf_counter() - start

def series_products():
    # fixed-size operands: growth-free so the loop measures kernel throughput
    a = fs.parse(" + ".join(f"{{k + 1}}*t^({{k}}/2)" for k in range(40)))
    b = fs.parse(" + ".join(f"{{k + 2}}*t^(-{{k}}/3)" for k in range(40)))
    for _ in range(150 * scale):
        c = fs.mul(a, b)
        fs.add(c, a)
        fs.with_floor(c, Fraction(-5))

def matrix_chain():
    g = gen_group_elem(trial_rng(1, "bench", 0), 4)
    h = gen_group_elem(trial_rng(1, "bench", 1), 4)
    for _ in range(60 * scale):
        (g @ h).inverse()

def suite_run():
    check_axiom(TrialConfig(n=3, trials=25 * scale, seed=5), "A2")

results = {{
    "backend": _backend._impl.__name__.rsplit(".", 1)[-1],
    "series products": timed(series_products),
    "matrix chain": timed(matrix_chain),
    "overlap suite": timed(suite_run),
}}
print(json.dumps(results))
"""


def run_backend(pure, scale):
    env = dict(os.environ)
    if pure:
        env["LBLDG_PURE"] = "1"
    else:
        env.pop("LBLDG_PURE", None)
    proc = subprocess.run(
        [sys.executable, "-c", WORKER.format(scale=scale)],
        capture_output=True,
        text=True,
        env=env,
    )
    if proc.returncode != 0:
        sys.stderr.write(proc.stderr)
        sys.exit(1)
    return json.loads(proc.stdout)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--scale", type=int, default=1, help="workload multiplier")
    args = ap.parse_args()

    fast = run_backend(pure=False, scale=args.scale)
    pure = run_backend(pure=True, scale=args.scale)
    if fast["backend"] == pure["backend"]:
        print("note: compiled kernel unavailable; both runs used the fallback")

    names = [k for k in fast if k != "backend"]
    width = max(len(n) for n in names)
    print(f"{'workload':<{width}}  {fast['backend']:>12}  {pure['backend']:>12}  speedup")
    for name in names:
        ratio = pure[name] / fast[name] if fast[name] else float("inf")
        print(
            f"{name:<{width}}  {fast[name]:>11.3f}s  {pure[name]:>11.3f}s  {ratio:>6.2f}x"
        )


if __name__ == "__main__":
    main()
