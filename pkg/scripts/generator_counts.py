"""Minimal generator counts of H^-m(R_n) per cohomological degree.

    python scripts/generator_counts.py kxyz --n 2 --degrees 1 2 3
    python scripts/generator_counts.py kxyz --n 2 --degrees 4 --modulus 32003
"""
import argparse
import time

from drep.cli import load_algebra
from drep.cohomology import Complex
from drep.expand import expand


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("algebra", help="path to a .alg file or a bundled example name")
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--degrees", type=int, nargs="+", default=[1, 2])
    ap.add_argument("--modulus", type=int, default=0, help="prime for the fast modular pre-check")
    args = ap.parse_args()

    cx = Complex(expand(load_algebra(args.algebra), args.n), modulus=args.modulus)
    field = f"GF({args.modulus})" if args.modulus else "QQ"
    print(f"{args.algebra}, n = {args.n}, coefficients in {field}")
    for m in args.degrees:
        start = time.perf_counter()
        counts = cx.minimal_generator_counts(m)
        elapsed = time.perf_counter() - start
        by_weight = ", ".join(f"{w}: {c}" for w, c in sorted(counts.items()))
        print(f"H^-{m}: {sum(counts.values())} minimal generators ({by_weight})  [{elapsed:.1f} s]")


if __name__ == "__main__":
    main()
