import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from drep.expand import (InvalidResolutionError, abelianize, detect_weights, expand, f_jk, f_jk_poly,
                         h0_ideal, var_name)
from drep.gcalg import CPoly, c_d, validate_presentation
from drep.ncalg import Generator, NCPoly, Resolution, nc_d
from drep.parser import parse_algebra
from tests.conftest import random_ncpoly, random_resolution, seeds


def cp(ea, text):
    """Parse a commutative polynomial in the variables of ``ea`` (products of names, +/-)."""
    total = CPoly.zero(ea.variables)
    for chunk in text.replace("-", "+-").split("+"):
        chunk = chunk.strip()
        if not chunk:
            continue
        sign = -1 if chunk.startswith("-") else 1
        names = [s.strip() for s in chunk.lstrip("-").split("*")]
        total = total + CPoly.from_factors(ea.variables, names, sign)
    return total


@given(seeds, st.integers(1, 3))
def test_f_jk_is_matrix_multiplicative(seed, n):
    rng = random.Random(seed)
    res = random_resolution(seed)
    letters = list(range(len(res.generators)))
    w1 = tuple(rng.choice(letters) for _ in range(rng.randint(0, 3)))
    w2 = tuple(rng.choice(letters) for _ in range(rng.randint(0, 3)))
    j, k = rng.randint(1, n), rng.randint(1, n)
    lhs = f_jk(w1 + w2, j, k, n, res)
    rhs = NCPoly.zero(lhs.gens)
    for m in range(1, n + 1):
        rhs = rhs + f_jk(w1, j, m, n, res) * f_jk(w2, m, k, n, res)
    assert lhs == rhs


def test_f_jk_counts_and_identity(kxy):
    assert f_jk((), 1, 1, 3, kxy) == NCPoly.one(f_jk((), 1, 1, 3, kxy).gens)
    assert f_jk((), 1, 2, 3, kxy).is_zero()
    assert len(f_jk((0, 1, 0), 1, 2, 3, kxy).terms) == 9
    with pytest.raises(IndexError):
        f_jk((0,), 0, 1, 2, kxy)
    with pytest.raises(IndexError):
        f_jk((0,), 1, 3, 2, kxy)


def test_n1_expansion_is_abelianization(kxy):
    ea = expand(kxy, 1)
    assert [v.name for v in ea.variables] == ["x_1_1", "y_1_1", "t_1_1"]
    assert ea.presentation.diff == {}


def test_kxy_n2_by_hand(kxy):
    ea = expand(kxy, 2)
    assert len(ea.variables) == 12
    d = ea.presentation.diff
    assert d["t_1_1"] == cp(ea, "x_1_2*y_2_1 - x_2_1*y_1_2")
    assert d["t_1_2"] == cp(ea, "x_1_1*y_1_2 + x_1_2*y_2_2 - y_1_1*x_1_2 - y_1_2*x_2_2")
    assert d["t_2_2"] == cp(ea, "x_2_1*y_1_2 - y_2_1*x_1_2")


def test_usl2_n2_matches_displayed_differential(usl2):
    ea = expand(usl2, 2)
    d = ea.presentation.diff
    for i in (1, 2):
        for j in (1, 2):
            expect = CPoly.var(ea.variables, var_name("x", i, j))
            for k in (1, 2):
                expect = expect + CPoly.from_factors(ea.variables, [var_name("y", i, k), var_name("z", k, j)])
                expect = expect - CPoly.from_factors(ea.variables, [var_name("z", i, k), var_name("y", k, j)])
            assert d[var_name("X", i, j)] == expect


def test_kxyz_t_differential(kxyz):
    ea = expand(kxyz, 2)
    dt = ea.presentation.diff["t_1_2"]
    expect = CPoly.zero(ea.variables)
    for lower, upper in (("x", "X"), ("y", "Y"), ("z", "Z")):
        for k in (1, 2):
            expect = expect + CPoly.from_factors(ea.variables, [f"{lower}_1_{k}", f"{upper}_{k}_2"])
            expect = expect - CPoly.from_factors(ea.variables, [f"{upper}_1_{k}", f"{lower}_{k}_2"])
    assert dt == expect


@given(seeds, st.integers(1, 2))
def test_expanded_differential_squares_to_zero(seed, n):
    res = random_resolution(seed)
    ea = expand(res, n)
    assert validate_presentation(ea.presentation).ok


@given(seeds, st.integers(1, 2))
def test_expansion_commutes_with_d(seed, n):
    """d(f_jk(w)) abelianized equals f_jk(d w) abelianized: expansion is a DG map."""
    rng = random.Random(seed)
    res = random_resolution(seed)
    ea = expand(res, n)
    p = random_ncpoly(rng, res.generators, list(range(len(res.generators))), max_len=3)
    j, k = rng.randint(1, n), rng.randint(1, n)
    lhs = c_d(abelianize(f_jk_poly(p, j, k, n, res), ea.variables), ea.presentation)
    rhs = abelianize(f_jk_poly(nc_d(p, res), j, k, n, res), ea.variables)
    assert lhs == rhs


def test_invalid_resolution_is_rejected():
    gens = (Generator("x", 0), Generator("t", -1), Generator("s", -2))
    res = Resolution(gens, {"t": NCPoly(gens, {(0, 0): 1}), "s": NCPoly(gens, {(1,): 1})})
    with pytest.raises(InvalidResolutionError):
        expand(res, 2)
    with pytest.raises(ValueError):
        expand(Resolution(gens[:1], {}), 0)


def test_weights(kxy, kxyz, usl2, kxy_stable):
    assert detect_weights(kxy) == {"x": 1, "y": 1, "t": 2}
    assert detect_weights(kxyz) == {"x": 1, "y": 1, "z": 1, "X": 2, "Y": 2, "Z": 2, "t": 3}
    assert detect_weights(usl2) is None
    assert detect_weights(kxy_stable)["v"] == 1


def _evaluate(p: CPoly, point):
    total = Fraction(0)
    for mono, c in p.terms.items():
        val = Fraction(c)
        for i, e in mono.evens:
            val *= Fraction(point[p.variables[i].name]) ** e
        if mono.odds:
            val = 0
        total += val
    return total


def _point(ea, mats):
    return {var_name(g, j + 1, k + 1): mats[g][j][k]
            for g in mats for j in range(ea.n) for k in range(ea.n)}


@given(seeds)
def test_points_of_h0_are_representations(seed):
    """A pair of matrices is a zero of the H^0 ideal iff the matrices commute."""
    rng = random.Random(seed)
    ea = expand(parse_algebra("generator x, y : 0; generator t : -1; d t = x*y - y*x;"), 2)
    a = [[rng.randint(-2, 2) for _ in range(2)] for _ in range(2)]
    c0, c1 = rng.randint(-2, 2), rng.randint(-2, 2)
    commuting = [[c0 * a[j][k] + (c1 if j == k else 0) for k in range(2)] for j in range(2)]
    other = [[rng.randint(-2, 2) for _ in range(2)] for _ in range(2)]
    ideal = h0_ideal(ea)
    assert all(_evaluate(p, _point(ea, {"x": a, "y": commuting})) == 0 for p in ideal)
    ab = [[sum(a[j][m] * other[m][k] - other[j][m] * a[m][k] for m in range(2)) for k in range(2)]
          for j in range(2)]
    vanish = all(_evaluate(p, _point(ea, {"x": a, "y": other})) == 0 for p in ideal)
    assert vanish == all(v == 0 for row in ab for v in row)
