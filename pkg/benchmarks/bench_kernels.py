"""Benchmark the compiled kernel backend against the pure-Python fallback.

Usage:
    python3 benchmarks/bench_kernels.py [--repeat 3]

Both backends are imported directly (ignoring HCO_PURE_PYTHON), so this
reports the real speedup the compiled extension provides on this machine.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
import timeit

from hco._kernels import _pure

try:
    from hco._kernels import _native
except ImportError:
    _native = None


def _workloads():
    seeds = [hashlib.sha256(b"bench-%d" % i).digest() for i in range(64)]
    path = [(i * 1_000.0, (i % 5) / 4, ((i * 3) % 5) / 4) for i in range(6)]
    samples = [
        (t * 5_000.0 / 99, 0.4 + 0.001 * (t % 7), 0.5 - 0.001 * (t % 5))
        for t in range(100)
    ]

    def rng_u64(mod):
        rng = mod.Rng(seeds[0])
        for _ in range(10_000):
            rng.next_u64()

    def rng_bits(mod):
        rng = mod.Rng(seeds[1])
        for _ in range(200):
            rng.bits(4096)

    def sample_distinct(mod):
        rng = mod.Rng(seeds[2])
        for _ in range(2_000):
            rng.sample_distinct(256, 24)

    def hamming(mod):
        a = mod.Rng(seeds[3]).bits(256)
        b = mod.Rng(seeds[4]).bits(256)
        for _ in range(20_000):
            mod.hamming(a, b)

    def perceptual(mod):
        for seed in seeds:
            mod.perceptual_grids(seed, 256, 6, 24, 40, 96)

    def attention(mod):
        for _ in range(500):
            mod.attention_hits(path, samples, 0.08)

    return [
        ("Rng.next_u64 x10k", rng_u64),
        ("Rng.bits(4096) x200", rng_bits),
        ("sample_distinct(256,24) x2k", sample_distinct),
        ("hamming(256c) x20k", hamming),
        ("perceptual_grids x64", perceptual),
        ("attention_hits(100) x500", attention),
    ]


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3, help="best-of-N timing")
    args = parser.parse_args(argv)

    backends = [("pure", _pure)]
    if _native is not None:
        backends.append(("native", _native))
    else:
        print("note: compiled extension not importable; timing pure only\n")

    print(f"{'workload':<30}" + "".join(f"{name:>12}" for name, _ in backends)
          + ("{:>10}".format("speedup") if _native else ""))
    for label, fn in _workloads():
        row = f"{label:<30}"
        times = []
        for _, mod in backends:
            best = min(timeit.repeat(lambda: fn(mod), number=1, repeat=args.repeat))
            times.append(best)
            row += f"{best * 1e3:>10.2f}ms"
        if len(times) == 2:
            row += f"{times[0] / times[1]:>9.1f}x"
        print(row)
    return 0


if __name__ == "__main__":
    sys.exit(main())
