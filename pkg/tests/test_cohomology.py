import random

import pytest
from hypothesis import given, settings

from drep.cohomology import CohomologyClass, Complex
from drep.expand import expand
from drep.groebner import InhomogeneousError, buchberger
from drep.parser import parse_algebra
from tests.conftest import load_example, random_resolution, seeds


@pytest.fixture(scope="module")
def kxy2(kxy):
    return Complex(expand(kxy, 2))


@pytest.fixture(scope="module")
def kxy1(kxy):
    return Complex(expand(kxy, 1))


def test_n1_differential_is_zero(kxy1):
    d = kxy1.differential_matrix(1)
    assert d.source == 1 and d.target == 1
    assert d.is_zero()


def test_n2_differential_column(kxy2):
    d = kxy2.differential_matrix(1)
    assert (d.source, d.target) == (4, 1)
    ring = kxy2.ring
    assert d.entry(0, 0) == ring.parse("x_1_2*y_2_1 - y_1_2*x_2_1")
    assert d.is_homogeneous()


@pytest.mark.parametrize("name, n, top", [("kxy", 2, 4), ("kxyz", 2, 3), ("kxy_stable", 2, 3)])
def test_consecutive_differentials_compose_to_zero(name, n, top):
    cx = Complex(expand(load_example(name), n))
    for m in range(2, top + 1):
        assert cx.differential_matrix(m - 1).compose(cx.differential_matrix(m)).is_zero()


@given(seeds)
@settings(max_examples=15)
def test_matrix_d_squared_on_random_resolutions(seed):
    cx = Complex(expand(random_resolution(seed), 2))
    for m in range(2, 4):
        assert cx.differential_matrix(m - 1).compose(cx.differential_matrix(m)).is_zero()


def test_h0_is_commutator_quotient(kxy2):
    pres = kxy2.h_presentation(0)
    gb = pres.groebner()
    ideal = buchberger(kxy2.h0_ideal(), kxy2.ring)
    assert [str(p) for p in gb.polys] == [str(p) for p in ideal.polys]


def test_n1_h1_is_free_of_rank_one(kxy1):
    pres = kxy1.h_presentation(1)
    assert pres.ngens == 1
    assert pres.relations == []
    assert kxy1.from_vector(pres.generator_labels[0], 1).sorted_terms()[0][1] == 1


def test_vanishing_examples(kxy1, kxy2):
    assert kxy1.vanishing(2)
    assert not kxy2.vanishing(1)
    assert not kxy2.vanishing(2)
    assert kxy2.vanishing(3) and kxy2.vanishing(4)
    for m in (1, 2, 3):
        assert kxy2.vanishing(m, "hilbert") == kxy2.vanishing(m, "containment")
    with pytest.raises(ValueError):
        kxy2.vanishing(0)


def test_hilbert_function_routes_agree(kxy2):
    pres = kxy2.h_presentation(1, upto=5)
    assert pres.hilbert_function(5) == kxy2.hilbert_function(1, 5)
    assert kxy2.hilbert_function(1, 5) == [0, 0, 1, 10, 46, 146]


def test_minimal_generators_of_h1_kxy2(kxy2):
    assert kxy2.minimal_generator_counts(1) == {2: 1, 3: 2}
    assert kxy2.minimal_generator_counts(2) == {5: 2}


@pytest.mark.parametrize("n", [1, 2])
def test_euler_characteristic(kxy, n):
    report = Complex(expand(kxy, n)).euler_check(4)
    assert report.ok, report


def test_euler_free_algebra():
    cx = Complex(expand(load_example("free2"), 2))
    report = cx.euler_check(3)
    assert report.ok
    assert report.chain_side == cx.free_hilbert_function(0, 3)


def test_euler_needs_grading(usl2):
    with pytest.raises(InhomogeneousError):
        Complex(expand(usl2, 1)).euler_check(2)


def test_usl2_n1(usl2):
    cx = Complex(expand(usl2, 1))
    assert not cx.homogeneous
    # one-dimensional representations of sl2 are zero: H^0 = S / (x, y, z)
    assert sorted(str(p) for p in cx.image_gb(0).polys) == ["x_1_1", "y_1_1", "z_1_1"]
    assert cx.vanishing(1)
    assert cx.h_presentation(1).ngens == 0


def test_resolution_independence_up_to_degree_two(kxy, kxy_stable):
    a = Complex(expand(kxy, 2))
    b = Complex(expand(kxy_stable, 2))
    for m in range(3):
        assert a.hilbert_function(m, 4) == b.hilbert_function(m, 4)


def test_modular_counts_match_rational(kxyz):
    ea = expand(kxyz, 2)
    assert Complex(ea).minimal_generator_counts(1) == Complex(ea, modulus=32003).minimal_generator_counts(1)


# ---------------------------------------------------------------- products


def test_unit_and_odd_squares(kxy2):
    gens = kxy2.minimal_generators(1)
    unit = kxy2.unit_class()
    for g in gens:
        p = kxy2.cup_product(unit, g)
        assert p.product.representative == g.representative
        assert kxy2.cup_product(g, g).is_zero


def test_non_cocycle_is_rejected(kxy2):
    ring = kxy2.ring
    bad = CohomologyClass(1, [ring.poly(1)] + [ring.poly(0)] * 3)
    with pytest.raises(ValueError):
        kxy2.cup_product(bad, kxy2.unit_class())


def _random_class(cx, gens, rng):
    ring = cx.ring
    vec = [ring.poly(0)] * cx.rank(1)
    for g in gens:
        coeff = ring.poly(rng.randint(-2, 2))
        if rng.random() < 0.5:
            coeff = coeff + ring.gen(rng.randrange(ring.nvars)) * rng.randint(-2, 2)
        vec = [a + coeff * b for a, b in zip(vec, g.representative)]
    return CohomologyClass(1, vec)


@given(seeds)
@settings(max_examples=10)
def test_products_are_graded_commutative_and_associative(seed):
    cx = _KXY2
    rng = random.Random(seed)
    gens = cx.minimal_generators(1)
    a, b, c = (_random_class(cx, gens, rng) for _ in range(3))
    ab = cx.cup_product(a, b)
    ba = cx.cup_product(b, a)
    assert ab.product.representative == [-p for p in ba.product.representative]
    assert ab.is_zero == ba.is_zero
    # (ab)c = a(bc) on representatives; degree -3 vanishes for k[x,y]_2
    left = cx.cup_product(ab.product, c)
    right = cx.cup_product(a, cx.cup_product(b, c).product)
    assert left.product.representative == right.product.representative
    assert left.is_zero and right.is_zero


_KXY2 = Complex(expand(parse_algebra("generator x, y : 0; generator t : -1; d t = x*y - y*x;"), 2))
