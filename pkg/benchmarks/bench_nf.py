"""Benchmark the Garside normal-form kernels: compiled extension vs fallback.

The factorization loop is the hot path of every braid-platform session, so
the package ships it twice — ``ldkex.braid._nf_cy`` (Cython) and
``ldkex.braid._nf_py`` (pure Python) — selected at import time. This script
times both implementations on identical workloads and prints the speedup.

Run:  python3 benchmarks/bench_nf.py [--repeat 3]
"""
from __future__ import annotations

import argparse
import random
import time

from ldkex.braid import _nf_cy, _nf_py, words


def workloads(seed: int = 2024):
    rng = random.Random(seed)

    def rand_word(n: int, length: int) -> words.Word:
        return words.Word(
            rng.choice((1, -1)) * rng.randrange(1, n) for _ in range(length)
        )

    return [
        ("short words, few strands (n=8, L=60, x200)", 8,
         [rand_word(8, 60) for _ in range(200)]),
        ("session-scale words (n=30, L=400, x20)", 30,
         [rand_word(30, 400) for _ in range(20)]),
        ("long words, many strands (n=48, L=800, x3)", 48,
         [rand_word(48, 800) for _ in range(3)]),
    ]


def time_kernel(kernel, n: int, batch) -> tuple[float, list]:
    t0 = time.perf_counter()
    out = [kernel.word_to_nf(w, n) for w in batch]
    return time.perf_counter() - t0, out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=1, help="best-of repetitions")
    args = ap.parse_args()

    print(f"{'workload':<44} {'cython':>10} {'pure-py':>10} {'speedup':>8}")
    for label, n, batch in workloads():
        best = {}
        for name, kernel in (("cy", _nf_cy), ("py", _nf_py)):
            times = []
            for _ in range(args.repeat):
                dt, out = time_kernel(kernel, n, batch)
                times.append(dt)
            best[name] = (min(times), out)
        t_cy, out_cy = best["cy"]
        t_py, out_py = best["py"]
        if out_cy != out_py:
            raise AssertionError(f"kernel outputs disagree on workload {label!r}")
        print(f"{label:<44} {t_cy * 1e3:>8.1f}ms {t_py * 1e3:>8.1f}ms {t_py / t_cy:>7.1f}x")
    print("outputs verified identical across kernels")


if __name__ == "__main__":
    main()
