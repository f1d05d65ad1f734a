#!/usr/bin/env python3
"""Compare the compiled search kernels against the pure-Python fallback.

Usage:
    python benchmarks/bench_core.py [--seed N] [--repeat N]

Times the reachable-product closure and the conformance search on random
component pairs of growing size, and prints per-kernel timings with the
speedup of the compiled implementation.
"""

from __future__ import annotations

import argparse
import math
import time

from fsmcheck._core import encode_pair, pure
from fsmcheck.randgen import mutate, random_composable_pair, random_component

try:
    from fsmcheck._core import _speed
except ImportError:
    _speed = None


def _timeit(fn, args, repeat: int) -> float:
    best = math.inf
    for _ in range(repeat):
        started = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - started)
    return best


def bench_product(rng_seed: int, n_states: int, repeat: int):
    import random

    rng = random.Random(rng_seed)
    cases = []
    for _ in range(30):
        c1, c2 = random_composable_pair(
            rng, n_states=(n_states, n_states), density=(0.6, 0.9)
        )
        enc1, enc2, _, ids = encode_pair(c1, c2)
        composed = frozenset(
            ids[x] for x in (c1.inputs | c2.inputs) - (c1.outputs | c2.outputs)
        )
        cases.append((enc1, enc2, composed))

    def run(impl):
        for case in cases:
            impl.product_closure(*case)

    rows = {"pure": _timeit(run, (pure,), repeat)}
    if _speed is not None:
        rows["compiled"] = _timeit(run, (_speed,), repeat)
    return rows


def bench_cioco(rng_seed: int, n_states: int, repeat: int):
    import random

    rng = random.Random(rng_seed)
    cases = []
    for _ in range(30):
        spec = random_component(
            rng, "s", ["a", "b", "c"], ["x", "y"],
            n_states=(n_states, n_states), density=(0.6, 0.9),
        )
        iut = mutate(rng, spec, name="i", adds=2)
        enc_i, enc_s, _, ids = encode_pair(iut, spec)
        input_ids = frozenset(ids[x] for x in spec.inputs)
        cases.append((enc_i, enc_s, input_ids))

    def run(impl):
        for (enc_i, enc_s, input_ids) in cases:
            impl.cioco_bfs(enc_i, enc_s, input_ids, False)

    rows = {"pure": _timeit(run, (pure,), repeat)}
    if _speed is not None:
        rows["compiled"] = _timeit(run, (_speed,), repeat)
    return rows


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=12345)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    if _speed is None:
        print("compiled core not available; timing the pure implementation only")

    print(f"{'kernel':<16} {'states':>6} {'pure':>10} {'compiled':>10} {'speedup':>8}")
    for name, bench in (("product", bench_product), ("conformance", bench_cioco)):
        for n_states in (4, 8, 16, 32):
            rows = bench(args.seed, n_states, args.repeat)
            pure_t = rows["pure"]
            if "compiled" in rows:
                comp_t = rows["compiled"]
                print(
                    f"{name:<16} {n_states:>6} {pure_t * 1e3:>9.2f}ms "
                    f"{comp_t * 1e3:>9.2f}ms {pure_t / comp_t:>7.2f}x"
                )
            else:
                print(f"{name:<16} {n_states:>6} {pure_t * 1e3:>9.2f}ms {'-':>10} {'-':>8}")


if __name__ == "__main__":
    main()
