"""Time highest-weight-vector evaluation on the numba and numpy backends.

    python benchmarks/bench_hwv.py [--repeat N] [--threads T]

Both backends must return the same integer; the script exits non-zero if not.
"""

import argparse
import statistics
import sys
import time

from gct import _backend
from gct.hwv import PermTriple, certify_in_S, evaluate, random_decomposition
from gct.kronecker import WeightTriple
from gct.obstructions import lemma61_weight
from gct.tensors import apply_group, matmul_tensor, strassen_decomposition, unit_tensor


def cases():
    l2 = lemma61_weight(2)
    cert = certify_in_S(l2, strassen_decomposition(), trials=200, random_g=True)
    moved = apply_group(cert.group_element, strassen_decomposition())
    yield "family weight, strassen at g w", l2, cert.perm_triple, moved
    yield "family weight, naive at g w", l2, cert.perm_triple, apply_group(cert.group_element, matmul_tensor((2, 2, 2)))
    yield "(2,2)^3 on unit(2)", WeightTriple.of((2, 2), (2, 2), (2, 2), fmt=2), PermTriple.identity(4), unit_tensor(2)
    t = WeightTriple.of((3, 2, 1), (2, 2, 2), (4, 1, 1), fmt=3)
    yield "degree 6, random rank 6", t, PermTriple((1, 2, 3, 4, 5, 6), (2, 3, 1, 5, 6, 4), (6, 5, 4, 3, 2, 1)), \
        random_decomposition((3, 3, 3), 6, 2, 0)


def timed(fn, repeat):
    samples = []
    for _ in range(repeat):
        start = time.perf_counter()
        value = fn()
        samples.append(time.perf_counter() - start)
    return value, statistics.median(samples)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--threads", type=int, default=None)
    args = parser.parse_args(argv)
    if args.threads:
        _backend.set_threads(args.threads)

    # compile once so the first numba timing is not dominated by JIT
    evaluate(WeightTriple.of((2, 1), (2, 1), (2, 1), fmt=2), PermTriple.identity(3), unit_tensor(2), backend="numba")

    print(f"{'case':36s} {'numba':>10s} {'numpy':>10s} {'speedup':>8s}")
    ok = True
    for name, t, perms, w in cases():
        a, ta = timed(lambda: evaluate(t, perms, w, backend="numba"), args.repeat)
        b, tb = timed(lambda: evaluate(t, perms, w, backend="numpy"), args.repeat)
        if a != b:
            ok = False
            print(f"{name}: backends disagree ({a} vs {b})", file=sys.stderr)
        print(f"{name:36s} {ta * 1e3:8.1f}ms {tb * 1e3:8.1f}ms {tb / ta:7.1f}x")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
