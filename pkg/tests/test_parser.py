from fractions import Fraction

import pytest
from hypothesis import given

from drep.ncalg import validate_resolution
from drep.parser import ParseError, parse_algebra, parse_rep, print_algebra, print_rep
from tests.conftest import load_example, random_resolution, seeds


def test_kxy_file():
    res = parse_algebra("""
        # the polynomial algebra in two variables
        algebra kxy;
        generator x, y : 0;
        generator t : -1;
        d t = x*y - y*x;
    """)
    assert res.name == "kxy"
    assert res.names == ["x", "y", "t"]
    assert res.d_of(2).terms == {(0, 1): 1, (1, 0): -1}
    assert validate_resolution(res).ok


def test_expressions_with_powers_parentheses_and_rationals():
    res = parse_algebra("generator a, b : 0; generator t : -1; d t = -1/2*(a + b)^2 + 3*a*b;")
    d = res.d_of(2)
    half = Fraction(1, 2)
    assert d.terms == {(0, 0): -half, (0, 1): Fraction(5, 2), (1, 0): -half, (1, 1): -half}


def test_usl2_file_parses(usl2):
    assert usl2.d_of(usl2.index("X")).terms == {(1, 2): 1, (2, 1): -1, (0,): 1}


@pytest.mark.parametrize("name", ["kxy", "usl2", "kxyz", "kxy_stable", "free2"])
def test_bundled_round_trip(name):
    res = load_example(name)
    again = parse_algebra(print_algebra(res))
    assert again == res
    assert print_algebra(again) == print_algebra(res)


@given(seeds)
def test_random_round_trip(seed):
    res = random_resolution(seed)
    assert parse_algebra(print_algebra(res)) == res


@pytest.mark.parametrize("text, line, col, fragment", [
    ("generator x : 0;\nd t = x*u;", 2, 3, "undeclared"),
    ("generator x : 0;\ngenerator t : -1;\nd t = x*u;", 3, 9, "undeclared generator 'u'"),
    ("generator x : 0;\ngenerator x : -1;", 2, 11, "duplicate"),
    ("generator x : 0\n", 2, 1, "expected ';'"),
    ("generator x : 0; d x = x + ;", 1, 28, "unexpected"),
    ("generator x : 0; @", 1, 18, "unexpected character"),
    ("generator x : 0; generator t : -1; d t = x; d t = x;", 1, 47, "duplicate differential"),
    ("generator x : 0; generator t : -1; d t = 1/0;", 1, 44, "zero denominator"),
])
def test_positioned_errors(text, line, col, fragment):
    with pytest.raises(ParseError) as info:
        parse_algebra(text)
    assert (info.value.line, info.value.col) == (line, col)
    assert fragment in info.value.message


def test_rep_file_round_trip():
    text = "n = 2\nx = [[0, 1/2], [0, 0]]\ny = [[1, 0], [0, -3]]\n"
    n, values = parse_rep(text)
    assert n == 2
    assert values["x"][0][1] == Fraction(1, 2)
    assert print_rep(n, values) == text


def test_rep_file_size_mismatch():
    with pytest.raises(ParseError):
        parse_rep("n = 2\nx = [[1, 0, 0], [0, 1, 0]]")
    with pytest.raises(ParseError):
        parse_rep("m = 2")
