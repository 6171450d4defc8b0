import random
from fractions import Fraction
from importlib import resources

import pytest
from hypothesis import settings, strategies as st

from drep.gcalg import CommMonomial, CPoly
from drep.ncalg import Generator, NCPoly, Resolution, nc_d
from drep.parser import parse_algebra

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")


def load_example(name: str) -> Resolution:
    text = (resources.files("drep") / "data" / f"{name}.alg").read_text()
    return parse_algebra(text, name)


@pytest.fixture(scope="session")
def kxy():
    return load_example("kxy")


@pytest.fixture(scope="session")
def kxyz():
    return load_example("kxyz")


@pytest.fixture(scope="session")
def usl2():
    return load_example("usl2")


@pytest.fixture(scope="session")
def kxy_stable():
    return load_example("kxy_stable")


# ---------------------------------------------------------------- random objects


def random_ncpoly(rng: random.Random, gens, letters, max_terms=3, max_len=3) -> NCPoly:
    """Random combination of words in the generator indices ``letters``."""
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        w = tuple(rng.choice(letters) for _ in range(rng.randint(0, max_len)))
        terms[w] = terms.get(w, 0) + Fraction(rng.randint(-3, 3), rng.randint(1, 2))
    return NCPoly(gens, terms)


def random_resolution(seed: int) -> Resolution:
    """A random almost-free resolution with d^2 = 0 by construction.

    Degree -1 generators get arbitrary degree-0 differentials; a degree -2
    generator is sent to S-combinations of the cycles d(t_a) t_b - t_a d(t_b).
    """
    rng = random.Random(seed)
    n0 = rng.randint(1, 2)
    n1 = rng.randint(1, 2)
    n2 = rng.randint(0, 1)
    gens = ([Generator(f"x{i}", 0) for i in range(n0)] + [Generator(f"t{i}", -1) for i in range(n1)]
            + [Generator(f"s{i}", -2) for i in range(n2)])
    gens_t = tuple(gens)
    zeros = list(range(n0))
    diff = {}
    for i in range(n1):
        p = random_ncpoly(rng, gens_t, zeros, max_len=2)
        if not p.is_zero():
            diff[f"t{i}"] = p
    base = Resolution(gens_t, dict(diff))
    for i in range(n2):
        total = NCPoly.zero(gens_t)
        for _ in range(rng.randint(1, 2)):
            a, b = rng.randrange(n1), rng.randrange(n1)
            ta, tb = base.var(f"t{a}"), base.var(f"t{b}")
            cyc = nc_d(ta, base) * tb - ta * nc_d(tb, base)
            left = random_ncpoly(rng, gens_t, zeros, max_terms=2, max_len=1)
            right = random_ncpoly(rng, gens_t, zeros, max_terms=2, max_len=1)
            total = total + left * cyc * right
        if not total.is_zero():
            diff[f"s{i}"] = total
    return Resolution(gens_t, diff, f"random{seed}")


def random_homogeneous_cpoly(rng: random.Random, variables, degree: int, max_terms=3) -> CPoly:
    """Random element of a fixed cohomological degree (possibly zero)."""
    evens = [i for i, v in enumerate(variables) if v.degree % 2 == 0]
    odds = [i for i, v in enumerate(variables) if v.degree % 2]
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        # choose odd variables and even negative variables to hit the degree
        target = degree
        ev = {}
        od = set()
        tries = 0
        while target != 0 and tries < 20:
            tries += 1
            choices = [i for i in evens + odds if variables[i].degree < 0 and variables[i].degree >= target
                       and i not in od]
            if not choices:
                break
            i = rng.choice(choices)
            if variables[i].degree % 2:
                od.add(i)
            else:
                ev[i] = ev.get(i, 0) + 1
            target -= variables[i].degree
        if target != 0:
            continue
        for i in evens:
            if variables[i].degree == 0 and rng.random() < 0.4:
                ev[i] = ev.get(i, 0) + rng.randint(1, 2)
        m = CommMonomial(tuple(sorted(ev.items())), tuple(sorted(od)))
        terms[m] = terms.get(m, 0) + rng.randint(-3, 3)
    return CPoly(variables, terms)


seeds = st.integers(min_value=0, max_value=10 ** 6)


def pytest_terminal_summary(terminalreporter):
    """Print the acceptance verdicts collected by tests/test_acceptance.py."""
    import sys
    module = sys.modules.get("tests.test_acceptance")
    results = getattr(module, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for number in sorted(results):
            terminalreporter.write_line(results[number])
