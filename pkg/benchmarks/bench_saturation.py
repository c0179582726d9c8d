"""Benchmark the saturation kernels: compiled extension vs pure Python.

Each workload enumerates the term universe for an alphabet and length bound,
asserts a relation set, and runs the closure to fixpoint on both kernels.
Partitions are cross-checked before timings are reported.

Run:  python benchmarks/bench_saturation.py
"""
import random
import time
from array import array

from magmakit.congruence import _Universe
from magmakit.terms import Alphabet
from magmakit import _satcore_py

try:
    from magmakit import _satcore
except ImportError:
    _satcore = None


def make_workloads():
    rng = random.Random(99)
    out = []
    for gens, bound, n_rels, label in [
        (2, 5, 3, "sparse"),
        (3, 5, 3, "sparse"),
        (4, 5, 4, "sparse"),
        (2, 6, 3, "sparse"),
        (4, 6, 4, "sparse"),
    ]:
        alphabet = Alphabet("abcd"[:gens])
        uni = _Universe.get(alphabet, bound, 10**7)
        pa = array("i", [rng.randrange(uni.n) for _ in range(n_rels)])
        pb = array("i", [rng.randrange(uni.n) for _ in range(n_rels)])
        out.append((f"{gens} gens, len<={bound}, {label}", uni, pa, pb))
    # A fully collapsing instance: the idempotent relation on one generator.
    alphabet = Alphabet("abcd")
    uni = _Universe.get(alphabet, 6, 10**7)
    out.append(("4 gens, len<=6, collapse",
                uni, array("i", [0]), array("i", [uni._sum_ids[(0 << 22) | 0]])))
    return out


def canonical(roots):
    labels = {}
    return tuple(labels.setdefault(r, len(labels)) for r in roots)


def bench(kernel, uni, pa, pb, repeat):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = kernel.saturate_core(uni.n, uni.left, uni.right, pa, pb, True)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    print(f"{'workload':<28} {'nodes':>8} {'pure':>10} {'compiled':>10} {'speedup':>8}")
    for label, uni, pa, pb, in make_workloads():
        repeat = 3 if uni.n < 50_000 else 1
        pure_t, pure_r = bench(_satcore_py, uni, pa, pb, repeat)
        if _satcore is None:
            print(f"{label:<28} {uni.n:>8} {pure_t * 1e3:>8.1f}ms {'n/a':>10} {'':>8}")
            continue
        comp_t, comp_r = bench(_satcore, uni, pa, pb, repeat)
        assert canonical(pure_r) == canonical(comp_r), "kernels disagree"
        print(f"{label:<28} {uni.n:>8} {pure_t * 1e3:>8.1f}ms "
              f"{comp_t * 1e3:>8.1f}ms {pure_t / comp_t:>7.1f}x")
    if _satcore is None:
        print("\ncompiled kernel not built; install with Cython to compare")


if __name__ == "__main__":
    main()
