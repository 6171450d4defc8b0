"""Acceptance criteria 1-7.

Each test records a one-line PASS/FAIL verdict in ``RESULTS``; the lines are
printed as they happen (visible with ``-s``) and collected again in the
terminal summary by ``tests/conftest.py``.
"""
import functools
import itertools
import os
import random
from fractions import Fraction

import pytest

from drep import linalg
from drep.cohomology import CohomologyClass, Complex, match_relations
from drep.expand import expand, f_jk
from drep.gcalg import CPoly, normalize, validate_presentation
from drep.groebner import buchberger, vector_degree
from drep.ncalg import NCPoly, validate_resolution
from drep.tangent import Representation, check_p2
from tests.conftest import load_example, random_homogeneous_cpoly, random_resolution
from tests.test_gcalg import VARS, bubble_sign
from tests.test_groebner import R3, random_poly
from tests.test_tangent import commuting_family, random_invertible

RESULTS = {}


def criterion(number, title):
    """Record PASS/FAIL for one criterion; the wrapped test returns a detail string."""
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            try:
                detail = fn(*args, **kwargs)
            except Exception as exc:
                reason = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
                line = f"criterion {number} FAIL  {title}: {reason}"
                RESULTS[number] = line
                print("\n" + line)
                raise
            line = f"criterion {number} PASS  {title}" + (f": {detail}" if detail else "")
            RESULTS[number] = line
            print("\n" + line)
        return run
    return wrap


@pytest.fixture(scope="module")
def kxy2():
    return Complex(expand(load_example("kxy"), 2))


# ---------------------------------------------------------------- 1


@criterion(1, "H^0 of kxy at n=2 is the commuting-variety ideal")
def test_criterion_1_h0_ideal(kxy2):
    ring = kxy2.ring
    x = [[ring.gen(ring.names.index(f"x_{j}_{k}")) for k in (1, 2)] for j in (1, 2)]
    y = [[ring.gen(ring.names.index(f"y_{j}_{k}")) for k in (1, 2)] for j in (1, 2)]
    commutator = []
    for j in range(2):
        for k in range(2):
            entry = ring.poly(0)
            for m in range(2):
                entry = entry + x[j][m] * y[m][k] - y[j][m] * x[m][k]
            commutator.append(entry)
    expected = buchberger(commutator, ring)
    got = buchberger(kxy2.h0_ideal(), ring)
    assert [str(p) for p in got.polys] == [str(p) for p in expected.polys], "reduced bases differ"
    assert kxy2.image_gb(0).polys and all(expected.contains(p) for p in kxy2.image_gb(0).polys)
    return f"reduced GB with {len(got.polys)} elements equals the one of the 4 commutator entries"


# ---------------------------------------------------------------- 2


@criterion(2, "k[x,y]_2 presentation: 2 generators r, s with 3 relations, r s = s r = r^2 = s^2 = 0")
def test_criterion_2_kxy2_presentation(kxy2):
    cx = kxy2
    counts = cx.minimal_generator_counts(1)
    gens = cx.minimal_generators(1)
    ring = cx.ring
    v = {name: ring.gen(i) for i, name in enumerate(ring.names)}
    x = lambda j, k: v[f"x_{j}_{k}"]  # noqa: E731
    y = lambda j, k: v[f"y_{j}_{k}"]  # noqa: E731
    relations = [[x(2, 1), -y(2, 1)], [x(1, 2), -y(1, 2)], [x(1, 1) - x(2, 2), -(y(1, 1) - y(2, 2))]]
    shifts = cx.shifts(1)
    top = max(vector_degree(g.representative, shifts) for g in gens)
    candidates = [g.representative for g in gens if vector_degree(g.representative, shifts) == top]
    lower = [g.representative for g in gens if vector_degree(g.representative, shifts) < top]
    problems = []
    total = sum(counts.values())
    if total != 2:
        problems.append(f"H^-1 has {total} minimal generators {dict(sorted(counts.items()))}, expected 2")
    relations_ok = products_ok = False
    if len(candidates) == 2:
        match = match_relations(cx, 1, candidates, lower, relations)
        relations_ok = match.found
        if match.found:
            r = CohomologyClass(1, match.generators[0], "r")
            s = CohomologyClass(1, match.generators[1], "s")
            products_ok = all(cx.cup_product(a, b).is_zero for a, b in [(r, s), (s, r), (r, r), (s, s)])
    if not relations_ok:
        problems.append("the three linear relations could not be realized")
    if not products_ok:
        problems.append("r s, s r, r^2, s^2 are not all zero")
    assert not problems, "; ".join(problems) + (
        f" (relations hold: {relations_ok}, products vanish: {products_ok})")
    return "2 generators, relations hold, products vanish"


# ---------------------------------------------------------------- 3


@criterion(3, "k[x,y]_3: H^-1 has 6 minimal generators and H^-4 = 0")
def test_criterion_3_kxy3():
    cx = Complex(expand(load_example("kxy"), 3))
    counts = cx.minimal_generator_counts(1)
    assert sum(counts.values()) == 6, f"H^-1 has {sum(counts.values())} generators {counts}"
    assert cx.vanishing(4), "H^-4 does not vanish"
    return f"H^-1 generators by weight {dict(sorted(counts.items()))}; H^-4 = 0"


@pytest.mark.slow
@pytest.mark.skipif(not os.environ.get("DREP_SLOW"), reason="set DREP_SLOW=1 for the m <= 9 sweep")
def test_criterion_3_extended_vanishing_sweep():
    cx = Complex(expand(load_example("kxy"), 3))
    assert not cx.vanishing(3)
    for m in range(4, 10):
        assert cx.vanishing(m), m


# ---------------------------------------------------------------- 4


@criterion(4, "k[x,y,z]_2 minimal generators 16, 56, 128, 233 in degrees -1..-4 (rational)")
def test_criterion_4_kxyz2():
    ea = expand(load_example("kxyz"), 2)
    cx = Complex(ea)
    got = [sum(cx.minimal_generator_counts(m).values()) for m in (1, 2, 3, 4)]
    assert got[:2] == [16, 56], f"standard counts {got[:2]}"
    assert got[2:] == [128, 233], f"lower degree counts {got[2:]}"
    # the prime-field pre-check must agree with the rational answer
    modular = Complex(ea, modulus=32003)
    assert [sum(modular.minimal_generator_counts(m).values()) for m in (1, 2)] == got[:2]
    return "counts in degrees -1..-4: " + ", ".join(map(str, got))


# ---------------------------------------------------------------- 5


def _p2_representations(n, rng):
    """Zero, identity pair, commuting diagonals, nilpotent pair, random conjugate."""
    zero = linalg.zeros(n, n)
    one = linalg.identity(n)
    diag_x = [[Fraction(2 * i + 1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    diag_y = [[Fraction(-3 * i + 2, 3) if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    nil = [[Fraction(int(j == i + 1)) for j in range(n)] for i in range(n)]
    nil3 = [[3 * c for c in row] for row in nil]
    a, b = commuting_family(rng, n, 2)
    g = random_invertible(rng, n)
    base = Representation(n, {"x": a, "y": b})
    return {
        "zero": Representation(n, {"x": zero, "y": zero}),
        "identity pair": Representation(n, {"x": one, "y": one}),
        "commuting diagonals": Representation(n, {"x": diag_x, "y": diag_y}),
        "nilpotent pair": Representation(n, {"x": nil, "y": nil3}),
        "random conjugate": base.conjugate(g),
    }


@criterion(5, "tangent cohomology equals (Z^1, HH^2, ...) on kxy, n = 1, 2")
def test_criterion_5_p2_oracle():
    res = load_example("kxy")
    rng = random.Random(5)
    checked = 0
    mismatches = []
    for n in (1, 2):
        reps = _p2_representations(n, rng)
        assert len(reps) >= 5
        for name, rep in reps.items():
            report = check_p2(res, rep, 2)
            checked += 1
            if not report.ok:
                mismatches.append(f"n={n} {name}: " + "; ".join(report.lines()))
    assert not mismatches, " | ".join(mismatches)
    return f"{checked} representations agree"


# ---------------------------------------------------------------- 6


@criterion(6, "kxy and its stabilization give equal Hilbert functions of H^0, H^-1 at n=2 to degree 4")
def test_criterion_6_resolution_independence(kxy2):
    other = Complex(expand(load_example("kxy_stable"), 2))
    for m in (0, 1):
        a, b = kxy2.hilbert_function(m, 4), other.hilbert_function(m, 4)
        assert a == b, f"H^-{m}: {a} vs {b}"
    return f"H^0 {kxy2.hilbert_function(0, 4)}, H^-1 {kxy2.hilbert_function(1, 4)}"


# ---------------------------------------------------------------- 7


@criterion(7, "property suites: d^2, f_jk, Koszul signs, GB determinism, Euler check")
def test_criterion_7_property_suites(kxy2):
    # d^2 = 0 on 100 random resolutions and their expansions, n <= 2
    for seed in range(100):
        res = random_resolution(seed)
        assert validate_resolution(res).ok, f"seed {seed}"
        for n in (1, 2):
            assert validate_presentation(expand(res, n).presentation).ok, f"seed {seed} n {n}"
    # f_jk is matrix multiplicative on random words, n <= 3
    rng = random.Random(7)
    for trial in range(100):
        res = random_resolution(trial)
        n = rng.randint(1, 3)
        letters = list(range(len(res.generators)))
        w1 = tuple(rng.choice(letters) for _ in range(rng.randint(0, 3)))
        w2 = tuple(rng.choice(letters) for _ in range(rng.randint(0, 3)))
        j, k = rng.randint(1, n), rng.randint(1, n)
        lhs = f_jk(w1 + w2, j, k, n, res)
        rhs = NCPoly.zero(lhs.gens)
        for m in range(1, n + 1):
            rhs = rhs + f_jk(w1, j, m, n, res) * f_jk(w2, m, k, n, res)
        assert lhs == rhs, f"f_jk trial {trial}"
    # Koszul signs: normal form sign equals the adjacent-swap sign, graded commutativity
    for length in range(6):
        for factors in itertools.islice(itertools.product(range(len(VARS)), repeat=length), 400):
            sign, _ = normalize(factors, VARS)
            odd = [i for i in factors if VARS[i].degree % 2]
            if len(set(odd)) == len(odd):
                assert sign == bubble_sign(factors, VARS)[0], factors
            else:
                assert sign == 0
    for trial in range(50):
        da, db = rng.randint(0, 3), rng.randint(0, 3)
        a = random_homogeneous_cpoly(rng, VARS, -da)
        b = random_homogeneous_cpoly(rng, VARS, -db)
        assert a * b == (b * a).scale((-1) ** (da * db)), f"commutativity trial {trial}"
        c = random_homogeneous_cpoly(rng, VARS, -rng.randint(0, 2))
        assert (a * b) * c == a * (b * c)
    assert CPoly.var(VARS, "p") * CPoly.var(VARS, "p") == CPoly.zero(VARS)
    # GB determinism: same reduced basis for any generator order, repeated runs
    for trial in range(20):
        gens = [random_poly(rng, R3, max_deg=2) for _ in range(4)]
        base = [str(p) for p in buchberger(gens, R3).polys]
        perm = list(range(4))
        rng.shuffle(perm)
        assert [str(p) for p in buchberger([gens[i] for i in perm], R3).polys] == base
        assert [str(p) for p in buchberger(gens, R3).polys] == base
    # Euler characteristic
    report = kxy2.euler_check(4)
    assert report.ok, f"euler check {report}"
    return "100 resolutions, 100 f_jk trials, sign laws, 20 GB orders, Euler D=4"
