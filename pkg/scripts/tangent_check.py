"""Compare derived tangent cohomology with the Koszul Hochschild oracle on random
commuting tuples for a polynomial algebra example.

    python scripts/tangent_check.py kxyz --vars 3 --n 2 --trials 10
"""
import argparse
import random
from fractions import Fraction

from drep import linalg
from drep.cli import load_algebra
from drep.tangent import Representation, check_p2


def commuting_tuple(rng, n, k):
    """k matrices that are polynomials in one random integer matrix."""
    a = [[Fraction(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)]
    out = []
    for _ in range(k):
        total, power = linalg.zeros(n, n), linalg.identity(n)
        for _ in range(rng.randint(1, 3)):
            c = rng.randint(-2, 2)
            total = [[x + c * y for x, y in zip(r, s)] for r, s in zip(total, power)]
            power = linalg.matmul(power, a)
        out.append(total)
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("algebra")
    ap.add_argument("--vars", type=int, required=True, help="number of polynomial variables")
    ap.add_argument("--n", type=int, default=2)
    ap.add_argument("--trials", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    res = load_algebra(args.algebra)
    names = [g.name for g in res.generators if g.degree == 0]
    rng = random.Random(args.seed)
    failures = 0
    for trial in range(args.trials):
        rep = Representation(args.n, dict(zip(names, commuting_tuple(rng, args.n, len(names)))))
        report = check_p2(res, rep, args.vars)
        failures += not report.ok
        print(f"trial {trial}: " + " | ".join(report.lines()))
    print("all agree" if not failures else f"{failures} disagreements")


if __name__ == "__main__":
    main()
