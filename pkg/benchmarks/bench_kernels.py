"""Time the compiled Berkowitz kernel against the pure-Python one.

Run with ``python benchmarks/bench_kernels.py``; pass ``--quick`` for a short run.
"""

from __future__ import annotations

import argparse
import random
import timeit

from kacgen import _kernels_py
from kacgen.charpoly import adjoint_operator_gl
from kacgen.core_types import Partition, TypeTag
from kacgen.lifts import generator, lift
from kacgen.linalg import BACKEND, charpoly_int

try:
    from kacgen import _ckernels
except ImportError:
    _ckernels = None


def random_matrix(n: int, rng: random.Random, bound: int = 1) -> list[list[int]]:
    return [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)]


def adjoint_matrix(ell: int) -> list[list[int]]:
    """A real monomial operator of the size the oracle campaigns use (l^2 x l^2)."""
    tag = TypeTag.parse("2A", ell)
    parts = (ell,) if ell % 2 else (ell - 1, 1)
    g = lift(tag, Partition(parts)).matrix @ generator(tag, "J")
    rows = adjoint_operator_gl(g)
    return [[x.re for x in row] for row in rows]


def bench(label: str, rows: list[list[int]], repeat: int) -> None:
    ref = charpoly_int(rows, backend="python")
    py = min(timeit.repeat(lambda: _kernels_py.berkowitz_int(rows), number=1, repeat=repeat))
    line = f"{label:<28} python {py * 1e3:9.2f} ms"
    if _ckernels is not None:
        assert charpoly_int(rows) == ref
        try:
            _ckernels.berkowitz_int64(rows)
        except OverflowError:
            print(line + "   cython overflows int64 (falls back to python)")
            return
        cy = min(timeit.repeat(lambda: _ckernels.berkowitz_int64(rows), number=1, repeat=repeat))
        line += f"   cython {cy * 1e3:9.3f} ms   speedup {py / cy:7.1f}x"
    print(line)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--quick", action="store_true")
    args = parser.parse_args()
    repeat = 2 if args.quick else 5
    sizes = (8, 16, 24) if args.quick else (8, 16, 24, 32, 48)
    print(f"active backend: {BACKEND}")
    rng = random.Random(20240611)
    for n in sizes:
        bench(f"dense random {n}x{n}", random_matrix(n, rng), repeat)
    for ell in (5, 7) if args.quick else (5, 7, 8):
        bench(f"2A{ell} adjoint {ell * ell}x{ell * ell}", adjoint_matrix(ell), repeat)


if __name__ == "__main__":
    main()
